use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum ambient dimension representable by a [`Support`].
pub const MAX_AMBIENT: usize = 64;

/// A subset of coordinate indices `{0, .., m-1}`, stored as a bitmask.
///
/// Indices are 0-based in the API. `Display` prints them 1-based, the way
/// they are written in the mathematical literature. Ordering is shortlex:
/// smaller sets first, then lexicographic on the sorted index lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Support(u64);

impl Support {
    pub const EMPTY: Support = Support(0);

    pub fn from_bits(bits: u64) -> Self {
        Support(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_AMBIENT, "ambient dimension above {MAX_AMBIENT}");
        if m == 64 { Support(u64::MAX) } else { Support((1u64 << m) - 1) }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i >= MAX_AMBIENT {
                return Err(Error::IndexOutOfRange { index: i, ambient: MAX_AMBIENT });
            }
            bits |= 1 << i;
        }
        Ok(Support(bits))
    }

    /// Builds a support from 1-based indices. Panics on index 0 or above 64.
    pub fn from_one_based(indices: &[usize]) -> Self {
        Self::from_indices(indices.iter().map(|&i| {
            assert!(i >= 1, "1-based index must be positive");
            i - 1
        }))
        .expect("index in range")
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_AMBIENT);
        Support(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_AMBIENT && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Support(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Support(self.0 & !(1 << i))
    }

    pub fn union(self, other: Support) -> Self {
        Support(self.0 | other.0)
    }

    pub fn intersection(self, other: Support) -> Self {
        Support(self.0 & other.0)
    }

    pub fn difference(self, other: Support) -> Self {
        Support(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Largest index plus one, or 0 for the empty set.
    pub fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl Ord for Support {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                return Ordering::Equal;
            }
            // the set holding the lowest differing index is lexicographically smaller
            if self.0 & (diff & diff.wrapping_neg()) != 0 { Ordering::Less } else { Ordering::Greater }
        })
    }
}

impl PartialOrd for Support {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Support{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let ten = Support::from_one_based(&[10]);
        let nine = Support::from_one_based(&[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert!(ten < nine);
        let a = Support::from_one_based(&[1, 5]);
        let b = Support::from_one_based(&[2, 3]);
        assert!(a < b);
        let c = Support::from_one_based(&[1, 3]);
        assert!(c < a);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }

    #[test]
    fn set_ops() {
        let a = Support::from_indices([0, 2, 5]).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_vec(), vec![0, 2, 5]);
        assert!(a.contains(2) && !a.contains(1));
        assert!(Support::singleton(2).is_subset(a));
        assert_eq!(a.difference(Support::singleton(0)).to_vec(), vec![2, 5]);
        assert_eq!(a.bound(), 6);
        assert_eq!(Support::full(64).len(), 64);
        assert_eq!(format!("{a}"), "{1,3,6}");
        assert!(Support::from_indices([64]).is_err());
    }
}
