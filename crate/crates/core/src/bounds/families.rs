use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec::Limits;
use crate::{rational, Error, FourierExpansion, Result, VarSet};

/// `1 + x_1 + ... + x_n`.
pub fn example_affine(n: usize) -> Result<FourierExpansion> {
    require_positive(n)?;
    let terms = std::iter::once(VarSet::EMPTY)
        .chain((1..=n).map(single))
        .map(|m| (m, rational(1)));
    FourierExpansion::new(n, terms)
}

/// Sum of all `2^n` characters, i.e. `prod (1 + x_i)`.
pub fn example_full(n: usize) -> Result<FourierExpansion> {
    require_positive(n)?;
    Limits::check(n, Limits::default().dense_exact)?;
    FourierExpansion::new(n, (0..1u64 << n).map(|m| (VarSet::from_mask(m), rational(1))))
}

/// `x_1 + ... + x_n`.
pub fn example_linear(n: usize) -> Result<FourierExpansion> {
    require_positive(n)?;
    FourierExpansion::new(n, (1..=n).map(|i| (single(i), rational(1))))
}

fn single(i: usize) -> VarSet {
    VarSet::from_mask(1 << (i - 1))
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::BadArgs("family needs n >= 1".into()))
    } else {
        Ok(())
    }
}

/// Named function families used by the examples and the conjecture scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Affine,
    Full,
    Linear,
    /// The constant 1 on `n` variables (width 0).
    Constant,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Affine, Family::Full, Family::Linear, Family::Constant];

    pub fn build(self, n: usize) -> Result<FourierExpansion> {
        match self {
            Family::Affine => example_affine(n),
            Family::Full => example_full(n),
            Family::Linear => example_linear(n),
            Family::Constant => {
                require_positive(n)?;
                FourierExpansion::new(n, [(VarSet::EMPTY, rational(1))])
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Full => "full",
            Family::Linear => "linear",
            Family::Constant => "constant",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadArgs(format!("unknown family {s:?}")))
    }
}

/// Inclusive integer range for random coefficients; zero is never drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientRange {
    pub low: i64,
    pub high: i64,
}

impl CoefficientRange {
    pub const fn symmetric(bound: i64) -> Self {
        CoefficientRange {
            low: -bound,
            high: bound,
        }
    }

    fn validate(self) -> Result<()> {
        if self.low > self.high || (self.low == 0 && self.high == 0) {
            return Err(Error::BadArgs(format!(
                "coefficient range [{}, {}] has no nonzero integer",
                self.low, self.high
            )));
        }
        Ok(())
    }

    fn sample<R: Rng>(self, rng: &mut R) -> i64 {
        loop {
            let c = rng.gen_range(self.low..=self.high);
            if c != 0 {
                return c;
            }
        }
    }
}

/// Deterministic random function: `m` distinct uniform masks over `n`
/// variables with nonzero integer coefficients.
pub fn random_function(
    n: usize,
    m: usize,
    range: CoefficientRange,
    seed: u64,
) -> Result<FourierExpansion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_function(&mut rng, n, m, range)
}

/// Same as [`random_function`] but drawing from a caller-owned stream.
pub fn sample_function<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    range: CoefficientRange,
) -> Result<FourierExpansion> {
    range.validate()?;
    let masks = sample_masks(rng, n, m, false)?;
    let terms: Vec<_> = masks
        .into_iter()
        .map(|mask| (mask, rational(range.sample(rng))))
        .collect();
    FourierExpansion::new(n, terms)
}

/// `m` distinct uniformly random masks over `n` variables, optionally
/// excluding the empty set. Returned in sampling order.
pub(crate) fn sample_masks<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    nonempty: bool,
) -> Result<Vec<VarSet>> {
    if n > VarSet::MAX_VARS {
        return Err(Error::TooManyVariables {
            n,
            cap: VarSet::MAX_VARS,
        });
    }
    let lowest = u64::from(nonempty);
    let space = (1u64 << n) - lowest;
    if m as u64 > space {
        return Err(Error::BadArgs(format!(
            "cannot draw {m} distinct sets from {space} candidates"
        )));
    }
    if (m as u64) * 2 >= space {
        let mut all: Vec<u64> = (lowest..1u64 << n).collect();
        all.shuffle(rng);
        all.truncate(m);
        return Ok(all.into_iter().map(VarSet::from_mask).collect());
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let mask = rng.gen_range(lowest..1u64 << n);
        if seen.insert(mask) {
            out.push(VarSet::from_mask(mask));
        }
    }
    Ok(out)
}
