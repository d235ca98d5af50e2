//! Shared random-instance generators for the integration suites.

#![allow(dead_code)]

use fsmat::{SetFamily, SimpleMatrix, Subset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly chosen distinct subsets of [m], between `min_sets` and
/// `max_sets` of them (clamped to 2^m).
pub fn random_family(
    rng: &mut ChaCha8Rng,
    m: usize,
    min_sets: usize,
    max_sets: usize,
) -> SetFamily {
    let universe = 1usize << m;
    let hi = max_sets.min(universe);
    let lo = min_sets.min(hi);
    let size = rng.random_range(lo..=hi);
    let mut values: Vec<u64> = (0..universe as u64).collect();
    values.shuffle(rng);
    let members: Vec<Subset> = values[..size]
        .iter()
        .map(|&v| Subset::from_bits(m, v).unwrap())
        .collect();
    SetFamily::new(m, members).unwrap()
}

/// A simple matrix with exactly n distinct columns in random order.
pub fn random_simple_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize) -> SimpleMatrix {
    let universe = 1usize << m;
    assert!(n <= universe);
    let mut values: Vec<u64> = (0..universe as u64).collect();
    values.shuffle(rng);
    let columns: Vec<Subset> = values[..n]
        .iter()
        .map(|&v| Subset::from_bits(m, v).unwrap())
        .collect();
    SimpleMatrix::new(m, columns).unwrap()
}

/// Two simple matrices over the same rows with disjoint column sets, so
/// their concatenation is simple by construction.
pub fn random_disjoint_pair(
    rng: &mut ChaCha8Rng,
    m: usize,
    n1: usize,
    n2: usize,
) -> (SimpleMatrix, SimpleMatrix) {
    let universe = 1usize << m;
    assert!(n1 + n2 <= universe);
    let mut values: Vec<u64> = (0..universe as u64).collect();
    values.shuffle(rng);
    let first: Vec<Subset> = values[..n1]
        .iter()
        .map(|&v| Subset::from_bits(m, v).unwrap())
        .collect();
    let second: Vec<Subset> = values[n1..n1 + n2]
        .iter()
        .map(|&v| Subset::from_bits(m, v).unwrap())
        .collect();
    (
        SimpleMatrix::new(m, first).unwrap(),
        SimpleMatrix::new(m, second).unwrap(),
    )
}
