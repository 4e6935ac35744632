use std::fmt;

/// A subset of the variables `1..=n`, stored as a bitmask.
///
/// Variable `i` corresponds to bit `i - 1`. The empty set is the constant
/// character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    /// Largest variable count usable with sparse representations.
    pub const MAX_VARS: usize = 63;

    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        VarSet(mask)
    }

    /// Builds a set from 1-based variable indices. Returns `None` on index 0,
    /// an index above [`VarSet::MAX_VARS`], or a repeated index.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Option<Self> {
        let mut mask = 0u64;
        for i in indices {
            if i == 0 || i > Self::MAX_VARS {
                return None;
            }
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
        }
        Some(VarSet(mask))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Whether the 1-based variable `i` is in the set.
    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= 64 && self.0 & (1u64 << (i - 1)) != 0
    }

    /// Whether every member is at most `n`.
    pub const fn fits(self, n: usize) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// Symmetric difference; the product of two characters.
    pub const fn xor(self, other: VarSet) -> VarSet {
        VarSet(self.0 ^ other.0)
    }

    /// 1-based member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i + 1)
        })
    }

    /// Value of the character at the cube point with index `point`
    /// (bit set means the variable is -1): `true` when the product is -1.
    pub const fn flips_sign_at(self, point: u64) -> bool {
        (self.0 & point).count_ones() % 2 == 1
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_round_trip() {
        let s = VarSet::from_indices([4, 1, 2]).unwrap();
        assert_eq!(s.mask(), 0b1011);
        assert_eq!(s.indices().collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(s.to_string(), "{1,2,4}");
        assert_eq!(VarSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(VarSet::from_indices([0]).is_none());
        assert!(VarSet::from_indices([1, 1]).is_none());
        assert!(VarSet::from_indices([64]).is_none());
        assert!(VarSet::from_indices([63]).is_some());
    }

    #[test]
    fn fits_and_contains() {
        let s = VarSet::from_indices([3]).unwrap();
        assert!(!s.fits(2));
        assert!(s.fits(3));
        assert!(s.contains(3) && !s.contains(1));
        assert!(VarSet::EMPTY.fits(0));
    }

    #[test]
    fn character_sign() {
        let s = VarSet::from_mask(0b11);
        assert!(!s.flips_sign_at(0));
        assert!(s.flips_sign_at(0b01));
        assert!(!s.flips_sign_at(0b11));
    }
}
