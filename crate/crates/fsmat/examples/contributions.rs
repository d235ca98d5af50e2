//! Contribution counting: how many disjoint windows of 2^k columns realize
//! every pattern on some k rows. Enough contributions force containment of
//! every k x l pattern.

use fsmat::{
    count_contributions, count_contributions_oracle, pigeonhole_containment_bound, Pattern,
    SimpleMatrix, Subset,
};

fn main() {
    // the 8 columns of [3] ordered so both halves realize all four patterns
    // on every row pair
    let cols = [0u64, 3, 5, 6, 1, 2, 4, 7]
        .iter()
        .map(|&v| Subset::from_bits(3, v).unwrap())
        .collect();
    let m = SimpleMatrix::new(3, cols).unwrap();

    let (count, witness) = count_contributions(&m, 2);
    println!("matrix:\n{m}");
    println!("k=2 contributions: {count}");
    for w in witness.items() {
        println!("  rows {{{}}} columns {:?}", w.rows, w.columns);
    }
    assert!(witness.verify(&m));
    assert_eq!(count, count_contributions_oracle(&m, 2).unwrap());

    // 6 = 2 * C(3,2) contributions force every 2x2 pattern
    let bound = pigeonhole_containment_bound(3, 2, 2);
    println!("\npigeonhole bound l*C(m,k) = {bound}");
    assert_eq!(count, bound);
    let mut contained = 0;
    for bits in 0..16u64 {
        let cols = (0..2)
            .map(|j| Subset::from_bits(2, (bits >> (2 * j)) & 3).unwrap())
            .collect();
        let f = Pattern::new(2, cols).unwrap();
        if m.contains(&f) {
            contained += 1;
        }
    }
    println!("patterns of shape 2x2 contained: {contained}/16");
    assert_eq!(contained, 16);
}
