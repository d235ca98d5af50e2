//! Families of distinct subsets of `[m]`: traces, shattering, compressions,
//! down-closure, support, support-cover peeling, and nested-pair counting.
//!
//! The compression `𝒞_i` rewrites each member `A` to `A \ {i}` when `i ∈ A`
//! and the shifted set is not already present; iterating compressions over
//! all `i` reaches a down family of the same size without increasing any
//! trace. Those two facts (size preservation and trace monotonicity) are the
//! load-bearing invariants here and are asserted in debug builds.

use std::fmt;

use thiserror::Error;

use crate::subset::{Subset, SubsetError};

/// Power-set enumeration cap: 2^20 subsets is the largest family the helper
/// constructors will materialize.
pub const MAX_POWER_SET_GROUND: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error("set {{{set}}} has ground size {set_ground}, family has {ground_size}")]
    MixedGroundSize {
        set: String,
        set_ground: usize,
        ground_size: usize,
    },
    #[error("duplicate set {{{set}}}")]
    DuplicateSet { set: String },
    #[error("power set of [{m}] exceeds the enumeration cap m <= {MAX_POWER_SET_GROUND}")]
    PowerSetTooLarge { m: usize },
}

/// A finite collection of distinct subsets of a common ground set, kept
/// sorted in lexicographic element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    members: Vec<Subset>,
}

impl SetFamily {
    pub fn new(
        ground_size: usize,
        sets: impl IntoIterator<Item = Subset>,
    ) -> Result<Self, FamilyError> {
        Subset::empty(ground_size)?;
        let mut members: Vec<Subset> = Vec::new();
        for s in sets {
            if s.ground_size() != ground_size {
                return Err(FamilyError::MixedGroundSize {
                    set: s.to_string(),
                    set_ground: s.ground_size(),
                    ground_size,
                });
            }
            members.push(s);
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateSet {
                set: w[0].to_string(),
            });
        }
        Ok(SetFamily {
            ground_size,
            members,
        })
    }

    pub fn empty(ground_size: usize) -> Result<Self, FamilyError> {
        SetFamily::new(ground_size, [])
    }

    /// The full power set `𝒫[m]`, for small `m`.
    pub fn power_set(ground_size: usize) -> Result<Self, FamilyError> {
        if ground_size > MAX_POWER_SET_GROUND {
            return Err(FamilyError::PowerSetTooLarge { m: ground_size });
        }
        SetFamily::new(ground_size, Subset::power_set(ground_size)?)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    pub fn contains(&self, set: &Subset) -> bool {
        self.members.binary_search(set).is_ok()
    }

    /// Sum of member cardinalities; the strictly decreasing measure that
    /// makes iterated compression terminate.
    pub fn measure(&self) -> u64 {
        self.members.iter().map(|s| s.len() as u64).sum()
    }

    pub fn members_of_size(&self, size: usize) -> impl Iterator<Item = &Subset> {
        self.members.iter().filter(move |s| s.len() == size)
    }

    /// Members of `self` that are not members of `other`.
    pub fn difference(&self, other: &SetFamily) -> SetFamily {
        SetFamily {
            ground_size: self.ground_size,
            members: self
                .members
                .iter()
                .filter(|s| !other.contains(s))
                .copied()
                .collect(),
        }
    }

    /// The compression `𝒞_i`: each member `A` with `i ∈ A` moves to
    /// `A \ {i}` unless that set is already in the family, in which case `A`
    /// stays. The map is injective, so the size is preserved.
    pub fn compress(&self, i: usize) -> Result<SetFamily, FamilyError> {
        if i == 0 || i > self.ground_size {
            return Err(SubsetError::ElementOutOfRange {
                element: i,
                ground_size: self.ground_size,
            }
            .into());
        }
        let mut members: Vec<Subset> = self
            .members
            .iter()
            .map(|&a| {
                if a.contains(i) {
                    let shifted = a.remove(i).expect("i is in range");
                    if self.contains(&shifted) {
                        a
                    } else {
                        shifted
                    }
                } else {
                    a
                }
            })
            .collect();
        members.sort_unstable();
        debug_assert!(
            members.windows(2).all(|w| w[0] != w[1]),
            "compression must stay injective"
        );
        Ok(SetFamily {
            ground_size: self.ground_size,
            members,
        })
    }

    /// Iterates compressions, sweeping `i = 1..=m` until a full sweep is a
    /// fixed point. The result is a down family of the same size whose every
    /// trace is no larger than the corresponding trace of `self`.
    pub fn down_close(&self) -> SetFamily {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            for i in 1..=self.ground_size {
                let next = cur.compress(i).expect("sweep index is in range");
                if next != cur {
                    debug_assert!(next.measure() < cur.measure());
                    cur = next;
                    changed = true;
                }
            }
            if !changed {
                debug_assert!(cur.is_down_family());
                debug_assert_eq!(cur.len(), self.len());
                return cur;
            }
        }
    }

    /// True when every one-element deletion of every member is a member,
    /// which is equivalent to closure under taking subsets.
    pub fn is_down_family(&self) -> bool {
        self.members.iter().all(|a| {
            a.elements()
                .all(|e| self.contains(&a.remove(e).expect("element of a is in range")))
        })
    }

    /// The trace `S ∩ 𝒜 = {S ∩ A : A ∈ 𝒜}` as a family of distinct sets.
    pub fn trace(&self, s: &Subset) -> SetFamily {
        debug_assert_eq!(s.ground_size(), self.ground_size);
        let mut members: Vec<Subset> = self.members.iter().map(|a| a.intersection(s)).collect();
        members.sort_unstable();
        members.dedup();
        SetFamily {
            ground_size: self.ground_size,
            members,
        }
    }

    /// True when the trace on `s` realizes all `2^{|s|}` intersections.
    pub fn shatters(&self, s: &Subset) -> bool {
        self.trace(s).len() == 1usize << s.len()
    }

    /// Every size-`k` subset of the ground set shattered by the family, in
    /// lexicographic order.
    pub fn shattered_sets(&self, k: usize) -> Vec<Subset> {
        assert!(k <= self.ground_size, "k must be at most the ground size");
        Subset::all_of_size(self.ground_size, k)
            .expect("ground size already validated")
            .filter(|s| self.shatters(s))
            .collect()
    }

    /// Union of all members; empty for the empty family.
    pub fn support(&self) -> Subset {
        let mut out = Subset::empty(self.ground_size).expect("ground size already validated");
        for s in &self.members {
            out = out.union(s);
        }
        out
    }

    /// Number of pairs `(Z_1, Z_2)` with `Z_1` a size-`a` member, `Z_2` a
    /// size-`k` member, and `Z_1 ⊆ Z_2`.
    pub fn nested_pair_count(&self, a: usize, k: usize) -> u64 {
        assert!(
            1 <= a && a <= k && k <= self.ground_size,
            "need 1 <= a <= k <= ground size"
        );
        let small: Vec<&Subset> = self.members_of_size(a).collect();
        let mut count = 0u64;
        for big in self.members_of_size(k) {
            count += small.iter().filter(|z| z.is_subset_of(big)).count() as u64;
        }
        count
    }

    /// Runs the support-cover peeling loop: while `|ℱ_j| ≥ stop_threshold`,
    /// set `X_{j+1} = support(ℱ_j)`, extract a greedy cover layer `R_{j+1}`
    /// of `X_{j+1}` from `ℱ_j`, and continue on `ℱ_{j+1} = ℱ_j ∖ R_{j+1}`.
    ///
    /// Also stops when the support becomes empty (a family over an empty
    /// support is at most `{∅}` and would never shrink further). Each layer
    /// has at most `|X_{j+1}|` sets because every greedy pick covers at least
    /// one new element.
    pub fn support_cover_peeling(&self, stop_threshold: usize) -> PeelingTranscript {
        debug_assert!(stop_threshold >= 1);
        let mut f = self.clone();
        let mut x_sequence =
            vec![Subset::full(self.ground_size).expect("ground size already validated")];
        let mut cover_layers: Vec<SetFamily> = Vec::new();
        let mut residuals = vec![f.len()];
        loop {
            if f.len() < stop_threshold {
                break;
            }
            let x = f.support();
            if x.is_empty() {
                break;
            }
            let layer = greedy_cover(&f, &x);
            debug_assert!(layer.len() <= x.len());
            f = f.difference(&layer);
            x_sequence.push(x);
            cover_layers.push(layer);
            residuals.push(f.len());
        }
        PeelingTranscript {
            rounds: cover_layers.len(),
            x_sequence,
            cover_layers,
            residuals,
        }
    }
}

impl fmt::Display for SetFamily {
    /// Family text format: `m=<int>` header, one set per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={}", self.ground_size)?;
        for s in &self.members {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Greedy cover of `x` by members of `f`: repeatedly take the set covering
/// the most still-uncovered elements, ties to the lexicographically smallest
/// set. Requires `x ⊆ support(f)`.
fn greedy_cover(f: &SetFamily, x: &Subset) -> SetFamily {
    let mut uncovered = *x;
    let mut picks: Vec<Subset> = Vec::new();
    while !uncovered.is_empty() {
        let mut best: Option<(usize, Subset)> = None;
        for &a in f.members() {
            let gain = a.intersection(&uncovered).len();
            // members() is lex-sorted, so strict improvement keeps the
            // lex-smallest set among ties
            if gain > best.map_or(0, |(g, _)| g) {
                best = Some((gain, a));
            }
        }
        let (_, pick) = best.expect("every uncovered element lies in some member");
        uncovered = uncovered.difference(&pick);
        picks.push(pick);
    }
    SetFamily::new(x.ground_size(), picks).expect("greedy picks are distinct members")
}

/// Record of a support-cover peeling run: the support chain `X_0 … X_r`, the
/// extracted layers `R_1 … R_r`, and the family sizes `|ℱ_0| … |ℱ_r|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingTranscript {
    rounds: usize,
    x_sequence: Vec<Subset>,
    cover_layers: Vec<SetFamily>,
    residuals: Vec<usize>,
}

impl PeelingTranscript {
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// `X_0 = [m]` followed by one support per executed round.
    pub fn x_sequence(&self) -> &[Subset] {
        &self.x_sequence
    }

    pub fn cover_layers(&self) -> &[SetFamily] {
        &self.cover_layers
    }

    pub fn residuals(&self) -> &[usize] {
        &self.residuals
    }

    /// The last support computed, `X_r`.
    pub fn final_support(&self) -> &Subset {
        self.x_sequence.last().expect("X_0 is always present")
    }

    /// True when the loop stopped before extracting any layer.
    pub fn is_degenerate(&self) -> bool {
        self.rounds == 0
    }
}

/// Binomial coefficient `C(n, k)` as an exact u64.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

/// Smallest family size that forces a shattered k-set on ground `[m]`:
/// `C(m,0) + C(m,1) + … + C(m,k-1) + 1`.
pub fn sauer_shelah_threshold(m: usize, k: usize) -> u64 {
    (0..k).map(|i| binomial(m, i)).sum::<u64>() + 1
}
