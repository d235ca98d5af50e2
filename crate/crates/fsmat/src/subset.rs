//! Subsets of a ground set `[m] = {1, ..., m}`, packed into a `u64` bitmask.
//!
//! Element `i` occupies bit `i - 1`. The ground size is carried alongside the
//! mask so that complements, full sets, and cross-ground mixups stay checked.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest supported ground set. Bit 63 is left unused so `1 << m` never
/// overflows when enumerating the power set.
pub const MAX_GROUND_SIZE: usize = 63;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("ground set size {requested} exceeds the supported maximum {MAX_GROUND_SIZE}")]
    GroundSetTooLarge { requested: usize },
    #[error("element {element} outside the ground set [{ground_size}]")]
    ElementOutOfRange { element: usize, ground_size: usize },
}

/// A subset of `[m]`, stored as a bitmask. Copy, 16 bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    ground_size: usize,
    bits: u64,
}

impl Subset {
    pub fn empty(ground_size: usize) -> Result<Self, SubsetError> {
        if ground_size > MAX_GROUND_SIZE {
            return Err(SubsetError::GroundSetTooLarge {
                requested: ground_size,
            });
        }
        Ok(Subset {
            ground_size,
            bits: 0,
        })
    }

    /// The whole ground set `[m]`.
    pub fn full(ground_size: usize) -> Result<Self, SubsetError> {
        let mut s = Subset::empty(ground_size)?;
        if ground_size > 0 {
            s.bits = (1u64 << ground_size) - 1;
        }
        Ok(s)
    }

    pub fn from_elements(
        ground_size: usize,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self, SubsetError> {
        let mut s = Subset::empty(ground_size)?;
        for e in elements {
            s.check_element(e)?;
            s.bits |= 1u64 << (e - 1);
        }
        Ok(s)
    }

    /// Rebuilds a subset from a raw mask. Bits at or above `ground_size` are
    /// rejected.
    pub fn from_bits(ground_size: usize, bits: u64) -> Result<Self, SubsetError> {
        let full = Subset::full(ground_size)?;
        if bits & !full.bits != 0 {
            let stray = (bits & !full.bits).trailing_zeros() as usize + 1;
            return Err(SubsetError::ElementOutOfRange {
                element: stray,
                ground_size,
            });
        }
        Ok(Subset { ground_size, bits })
    }

    fn check_element(&self, element: usize) -> Result<(), SubsetError> {
        if element == 0 || element > self.ground_size {
            return Err(SubsetError::ElementOutOfRange {
                element,
                ground_size: self.ground_size,
            });
        }
        Ok(())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ground_size && self.bits & (1u64 << (element - 1)) != 0
    }

    pub fn insert(self, element: usize) -> Result<Self, SubsetError> {
        self.check_element(element)?;
        Ok(Subset {
            bits: self.bits | (1u64 << (element - 1)),
            ..self
        })
    }

    pub fn remove(self, element: usize) -> Result<Self, SubsetError> {
        self.check_element(element)?;
        Ok(Subset {
            bits: self.bits & !(1u64 << (element - 1)),
            ..self
        })
    }

    /// The compression `C_i(A)`: drops `i` when present, otherwise identity.
    pub fn compress(self, i: usize) -> Result<Self, SubsetError> {
        self.remove(i)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.ground_size, other.ground_size);
        Subset {
            ground_size: self.ground_size,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.ground_size, other.ground_size);
        Subset {
            ground_size: self.ground_size,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.ground_size, other.ground_size);
        Subset {
            ground_size: self.ground_size,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.ground_size, other.ground_size);
        self.bits & !other.bits == 0
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as usize + 1;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    /// All `2^m` subsets of `[m]` in ascending mask order.
    pub fn power_set(ground_size: usize) -> Result<impl Iterator<Item = Subset>, SubsetError> {
        Subset::empty(ground_size)?;
        Ok((0..(1u64 << ground_size)).map(move |bits| Subset { ground_size, bits }))
    }

    /// All size-`k` subsets of `[m]` in lexicographic order of their element
    /// sequences.
    pub fn all_of_size(
        ground_size: usize,
        k: usize,
    ) -> Result<impl Iterator<Item = Subset>, SubsetError> {
        use itertools::Itertools;
        Subset::empty(ground_size)?;
        Ok((1..=ground_size).combinations(k).map(move |elems| {
            let mut bits = 0u64;
            for e in elems {
                bits |= 1u64 << (e - 1);
            }
            Subset { ground_size, bits }
        }))
    }
}

/// Lexicographic order on the ascending element sequences, so `{1,4} < {2,3}`
/// even though the raw masks compare the other way.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders in the family file format: `-` for the empty set, otherwise
/// comma-separated ascending elements.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}
