use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result, VarSet};

/// Exact rational number: always reduced, positive denominator.
pub type Rational = BigRational;

/// Converts an integer to an exact rational.
pub fn rational<T: Into<BigInt>>(value: T) -> Rational {
    Rational::from_integer(value.into())
}

/// Sparse multilinear expansion `f(x) = sum_I c_I * prod_{i in I} x_i` of a
/// pseudo-Boolean function on `{-1,1}^n`.
///
/// Every stored coefficient is nonzero and every set fits in `n` variables.
/// Terms are kept ordered by mask.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FourierExpansion {
    n: usize,
    terms: BTreeMap<VarSet, Rational>,
}

impl FourierExpansion {
    /// Validates and builds an expansion. Duplicates are rejected, not merged.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VarSet, Rational)>,
    {
        if n > VarSet::MAX_VARS {
            return Err(Error::TooManyVariables {
                n,
                cap: VarSet::MAX_VARS,
            });
        }
        let mut map = BTreeMap::new();
        for (mask, coef) in terms {
            if !mask.fits(n) {
                return Err(Error::MaskOutOfRange { mask, n });
            }
            if coef.is_zero() {
                return Err(Error::ZeroCoefficient(mask));
            }
            if map.insert(mask, coef).is_some() {
                return Err(Error::DuplicateTerm(mask));
            }
        }
        Ok(FourierExpansion { n, terms: map })
    }

    /// The zero function on `n` variables.
    pub fn zero(n: usize) -> Self {
        FourierExpansion {
            n: n.min(VarSet::MAX_VARS),
            terms: BTreeMap::new(),
        }
    }

    /// Builds from a coefficient map, dropping exact zeros. Caller guarantees
    /// the masks fit.
    pub(crate) fn from_map_unchecked(n: usize, mut terms: BTreeMap<VarSet, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        debug_assert!(terms.keys().all(|m| m.fits(n)));
        FourierExpansion { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of nonzero terms.
    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (VarSet, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: VarSet) -> Option<&Rational> {
        self.terms.get(&mask)
    }

    /// Whether every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Evaluates at a point of `{-1,1}^n` given as a slice of `+1`/`-1`.
    pub fn evaluate(&self, x: &[i64]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::WrongArity {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut point = 0u64;
        for (i, &v) in x.iter().enumerate() {
            match v {
                1 => {}
                -1 => point |= 1 << i,
                _ => return Err(Error::BadDomainValue { index: i, value: v }),
            }
        }
        Ok(self.evaluate_index(point))
    }

    /// Evaluates at the cube point with index `point` (bit `i-1` set means
    /// `x_i = -1`).
    pub fn evaluate_index(&self, point: u64) -> Rational {
        let mut sum = Rational::zero();
        for (mask, c) in &self.terms {
            if mask.flips_sign_at(point) {
                sum -= c;
            } else {
                sum += c;
            }
        }
        sum
    }

    /// Same expansion with one coefficient replaced (removed when zero).
    pub fn with_coefficient(&self, mask: VarSet, coef: Rational) -> Result<Self> {
        if !mask.fits(self.n) {
            return Err(Error::MaskOutOfRange { mask, n: self.n });
        }
        let mut terms = self.terms.clone();
        if coef.is_zero() {
            terms.remove(&mask);
        } else {
            terms.insert(mask, coef);
        }
        Ok(FourierExpansion { n: self.n, terms })
    }
}

/// Validated construction; see [`FourierExpansion::new`].
pub fn make_expansion<I>(n: usize, terms: I) -> Result<FourierExpansion>
where
    I: IntoIterator<Item = (VarSet, Rational)>,
{
    FourierExpansion::new(n, terms)
}

/// Maps a 0-based cube point index to its `+1`/`-1` coordinates.
pub fn point_from_index(n: usize, point: u64) -> Vec<i64> {
    (0..n)
        .map(|i| if point >> i & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// `base^exp` for a nonnegative integer exponent.
pub(crate) fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> VarSet {
        VarSet::from_indices(ix.iter().copied()).unwrap()
    }

    fn running_example() -> FourierExpansion {
        make_expansion(
            4,
            [
                (set(&[1, 2]), rational(2)),
                (set(&[2, 3]), rational(-3)),
                (set(&[4]), rational(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn builds_running_example() {
        let f = running_example();
        assert_eq!(f.m(), 3);
        assert_eq!(f.n(), 4);
        assert_eq!(f.evaluate(&[1, 1, 1, 1]).unwrap(), rational(0));
    }

    #[test]
    fn rejects_duplicates_zeros_and_range() {
        let dup = make_expansion(2, [(set(&[1, 2]), rational(1)), (set(&[1, 2]), rational(5))]);
        assert_eq!(dup.unwrap_err(), Error::DuplicateTerm(set(&[1, 2])));
        let zero = make_expansion(2, [(set(&[1]), rational(0))]);
        assert_eq!(zero.unwrap_err(), Error::ZeroCoefficient(set(&[1])));
        let range = make_expansion(2, [(set(&[3]), rational(1))]);
        assert!(matches!(range, Err(Error::MaskOutOfRange { n: 2, .. })));
    }

    #[test]
    fn constant_function() {
        let f = make_expansion(0, [(VarSet::EMPTY, rational(7))]).unwrap();
        assert_eq!(f.m(), 1);
        assert_eq!(f.evaluate(&[]).unwrap(), rational(7));
    }

    #[test]
    fn one_plus_x1() {
        let f = make_expansion(1, [(VarSet::EMPTY, rational(1)), (set(&[1]), rational(1))]).unwrap();
        assert_eq!(f.evaluate(&[-1]).unwrap(), rational(0));
        assert_eq!(f.evaluate(&[1]).unwrap(), rational(2));
    }

    #[test]
    fn full_sum_over_two_variables() {
        // sum over all I of chi_I equals prod (1 + x_i)
        let f = make_expansion(2, (0..4).map(|m| (VarSet::from_mask(m), rational(1)))).unwrap();
        for point in 0..4u64 {
            let x = point_from_index(2, point);
            let expected: i64 = x.iter().map(|v| 1 + v).product();
            assert_eq!(f.evaluate(&x).unwrap(), rational(expected));
        }
        assert_eq!(f.evaluate(&[1, 1]).unwrap(), rational(4));
    }

    #[test]
    fn domain_errors() {
        let f = running_example();
        assert_eq!(
            f.evaluate(&[1, 0, 1, 1]).unwrap_err(),
            Error::BadDomainValue { index: 1, value: 0 }
        );
        assert!(matches!(f.evaluate(&[1]), Err(Error::WrongArity { .. })));
    }

    #[test]
    fn zero_function_vanishes() {
        let f = FourierExpansion::zero(3);
        for p in 0..8 {
            assert!(f.evaluate_index(p).is_zero());
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let b = Rational::new(3.into(), 2.into());
        let mut acc = rational(1);
        for e in 0..7 {
            assert_eq!(rational_pow(&b, e), acc);
            acc *= &b;
        }
    }
}
