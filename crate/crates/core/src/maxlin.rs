//! Weighted MaxLin-AA: decide whether some `±1` assignment satisfies
//! equations of total weight at least `W/2 + k`.
//!
//! Satisfied weight at `x` is `(W + Q(x))/2` for the excess polynomial
//! `Q = sum_j w_j b_j prod_{i in I_j} x_i`, so the question is whether
//! `max Q >= 2k`. Since `E[Q] = 0` and `E[Q^4] <= (2 rho + 1) E[Q^2]^2`,
//! some assignment reaches `Q >= sqrt(E[Q^2] / (2 rho + 1)) / 2`, which
//! gives the lower-bound test and the kernel.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::families::sample_masks;
use crate::exec::{Execution, Limits};
use crate::transform::{width_of_masks, WidthProfile};
use crate::{rational, Error, FourierExpansion, Result, VarSet};

/// `prod_{i in lhs} x_i = rhs` with positive integer weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: VarSet,
    pub rhs: i64,
    pub weight: i64,
}

impl Equation {
    pub fn new(lhs: VarSet, rhs: i64, weight: i64) -> Self {
        Equation { lhs, rhs, weight }
    }

    /// `w_j b_j`, the coefficient of this equation in the excess polynomial.
    pub fn excess_coefficient(&self) -> i64 {
        self.weight * self.rhs
    }

    /// Whether the assignment with cube index `point` satisfies it.
    pub fn satisfied_at(&self, point: u64) -> bool {
        let product = if self.lhs.flips_sign_at(point) { -1 } else { 1 };
        product == self.rhs
    }
}

/// A validated MaxLin-AA instance: distinct nonempty left-hand sides,
/// positive weights, `b_j = ±1`, `k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSystem {
    n: usize,
    equations: Vec<Equation>,
    k: i64,
    total_weight: i64,
}

impl EquationSystem {
    pub fn new(n: usize, equations: Vec<Equation>, k: i64) -> Result<Self> {
        if n > VarSet::MAX_VARS {
            return Err(Error::TooManyVariables {
                n,
                cap: VarSet::MAX_VARS,
            });
        }
        if k < 0 {
            return Err(Error::NegativeK(k));
        }
        let mut seen = BTreeSet::new();
        let mut total_weight = 0i64;
        for (index, eq) in equations.iter().enumerate() {
            if eq.lhs.is_empty() {
                return Err(Error::EmptyLhs(index));
            }
            if !eq.lhs.fits(n) {
                return Err(Error::MaskOutOfRange { mask: eq.lhs, n });
            }
            if eq.weight < 1 {
                return Err(Error::NonpositiveWeight {
                    index,
                    weight: eq.weight,
                });
            }
            if eq.rhs != 1 && eq.rhs != -1 {
                return Err(Error::BadRhs { index, rhs: eq.rhs });
            }
            if !seen.insert(eq.lhs) {
                return Err(Error::DuplicateLhs(eq.lhs));
            }
            total_weight = total_weight
                .checked_add(eq.weight)
                .ok_or_else(|| Error::BadArgs("total weight overflows i64".into()))?;
        }
        Ok(EquationSystem {
            n,
            equations,
            k,
            total_weight,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.equations.len()
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// Total weight `W`.
    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Weight of equations satisfied by the assignment with index `point`.
    pub fn satisfied_weight(&self, point: u64) -> i64 {
        self.equations
            .iter()
            .filter(|e| e.satisfied_at(point))
            .map(|e| e.weight)
            .sum()
    }

    /// `Q(x)` at the assignment with index `point`.
    pub fn excess_at(&self, point: u64) -> i64 {
        self.equations
            .iter()
            .map(|e| {
                let c = e.excess_coefficient();
                if e.lhs.flips_sign_at(point) { -c } else { c }
            })
            .sum()
    }

    /// `E[Q^2] = sum_j c_j^2`.
    pub fn excess_second_moment(&self) -> BigInt {
        self.equations
            .iter()
            .map(|e| BigInt::from(e.weight) * e.weight)
            .sum()
    }
}

/// Validated construction; see [`EquationSystem::new`].
pub fn make_system(n: usize, equations: Vec<Equation>, k: i64) -> Result<EquationSystem> {
    EquationSystem::new(n, equations, k)
}

/// The excess polynomial `Q` with coefficient `w_j b_j` on `I_j`.
pub fn excess_polynomial(system: &EquationSystem) -> FourierExpansion {
    let terms = system
        .equations
        .iter()
        .map(|e| (e.lhs, rational(e.excess_coefficient())));
    FourierExpansion::new(system.n, terms).expect("system invariants give a valid expansion")
}

pub fn system_width(system: &EquationSystem) -> WidthProfile {
    width_of_masks(system.n, system.equations.iter().map(|e| e.lhs))
}

/// Result of the moment-based lower-bound test.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundTest {
    /// `sum c_j^2 >= 16 k^2 (2 rho + 1)`.
    pub passes: bool,
    /// `sqrt(sum c_j^2 / (2 rho + 1)) / 2`, for display.
    pub threshold: f64,
    pub sum_squares: BigInt,
    /// `16 k^2 (2 rho + 1)`.
    pub size_bound: BigInt,
    pub width: u64,
}

/// Decides `sqrt(sum c^2 / (2 rho + 1)) / 2 >= 2k` in exact integers.
pub fn lower_bound_test(system: &EquationSystem) -> Result<LowerBoundTest> {
    if system.m() == 0 {
        return Err(Error::EmptySystem);
    }
    Ok(bound_test(system))
}

fn bound_test(system: &EquationSystem) -> LowerBoundTest {
    let rho = system_width(system).width;
    let sum_squares = system.excess_second_moment();
    let denominator = 2 * rho + 1;
    let k = BigInt::from(system.k);
    let size_bound = BigInt::from(16) * &k * &k * denominator;
    let threshold = 0.5
        * (sum_squares.to_f64().unwrap_or(f64::INFINITY) / denominator as f64).sqrt();
    LowerBoundTest {
        passes: sum_squares >= size_bound,
        threshold,
        sum_squares,
        size_bound,
        width: rho,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The lower-bound test certifies a Yes-instance.
    YesByBound,
    /// The instance is returned unchanged; it already has `m < 16 k^2 (2 rho + 1)`.
    PassThrough,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::YesByBound => "YES_BY_BOUND",
            Verdict::PassThrough => "PASS_THROUGH",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelResult {
    pub verdict: Verdict,
    pub kernel: EquationSystem,
    pub k_prime: i64,
    pub threshold: f64,
    pub exact_test: bool,
    pub sum_squares: BigInt,
    /// `16 k^2 (2 rho + 1)`; a pass-through kernel has fewer equations.
    pub size_bound: BigInt,
    pub width: u64,
}

/// Kernelizes: a Yes certificate collapses to the consistent system
/// `x_1 = 1, ..., x_{2k} = 1` with unit weights; otherwise the instance is
/// kept as is. The parameter is unchanged.
pub fn kernelize(system: &EquationSystem) -> KernelResult {
    let test = bound_test(system);
    let (verdict, kernel) = if test.passes {
        let size = 2 * system.k as usize;
        let equations = (1..=size)
            .map(|i| Equation::new(VarSet::from_mask(1 << (i - 1)), 1, 1))
            .collect();
        let kernel = EquationSystem::new(size, equations, system.k)
            .expect("canonical kernel is valid");
        (Verdict::YesByBound, kernel)
    } else {
        (Verdict::PassThrough, system.clone())
    };
    KernelResult {
        verdict,
        kernel,
        k_prime: system.k,
        threshold: test.threshold,
        exact_test: test.passes,
        sum_squares: test.sum_squares,
        size_bound: test.size_bound,
        width: test.width,
    }
}

/// Exhaustive optimum over all `2^n` assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub max_weight: i64,
    /// `±1` values of `x_1..x_n`.
    pub witness: Vec<i64>,
    /// Cube index of the witness; ties go to the smallest index.
    pub witness_index: u64,
    pub max_excess: i64,
}

pub fn solve_bruteforce(system: &EquationSystem) -> Result<SolveResult> {
    solve_bruteforce_with(system, &Limits::default(), Execution::default())
}

pub fn solve_bruteforce_with(
    system: &EquationSystem,
    limits: &Limits,
    exec: Execution,
) -> Result<SolveResult> {
    Limits::check(system.n, limits.brute_force)?;
    let space = 1u64 << system.n;
    let coefficients: Vec<(u64, i64)> = system
        .equations
        .iter()
        .map(|e| (e.lhs.mask(), e.excess_coefficient()))
        .collect();
    let best_in = |range: std::ops::Range<u64>| {
        let mut best = (i64::MIN, u64::MAX);
        for point in range {
            let q: i64 = coefficients
                .iter()
                .map(|&(mask, c)| if (mask & point).count_ones() & 1 == 1 { -c } else { c })
                .sum();
            if q > best.0 {
                best = (q, point);
            }
        }
        best
    };
    // Blocks come back in index order, so keeping the first strict maximum
    // keeps the smallest index.
    let (max_excess, witness_index) = exec
        .map_blocks(space, 1 << 12, best_in)
        .into_iter()
        .fold((i64::MIN, u64::MAX), |acc, b| if b.0 > acc.0 { b } else { acc });
    Ok(SolveResult {
        max_weight: (system.total_weight + max_excess) / 2,
        witness: crate::expansion::point_from_index(system.n, witness_index),
        witness_index,
        max_excess,
    })
}

/// Whether `max Q >= 2k`, by exhaustive search.
pub fn decide(system: &EquationSystem) -> Result<bool> {
    decide_with(system, &Limits::default(), Execution::default())
}

pub fn decide_with(system: &EquationSystem, limits: &Limits, exec: Execution) -> Result<bool> {
    let solved = solve_bruteforce_with(system, limits, exec)?;
    Ok(solved.max_excess >= 2 * system.k)
}

/// Check that the optimum meets the moment guarantee
/// `max Q >= sqrt(E[Q^2] / (2 rho + 1)) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlonCheck {
    pub holds: bool,
    pub max_excess: i64,
    pub guaranteed: f64,
}

pub fn alon_witness_check(system: &EquationSystem) -> Result<AlonCheck> {
    alon_witness_check_with(system, &Limits::default(), Execution::default())
}

pub fn alon_witness_check_with(
    system: &EquationSystem,
    limits: &Limits,
    exec: Execution,
) -> Result<AlonCheck> {
    let solved = solve_bruteforce_with(system, limits, exec)?;
    let test = bound_test(system);
    let denominator = 2 * test.width + 1;
    let max_q = solved.max_excess;
    // (2 max_Q)^2 (2 rho + 1) >= E[Q^2], valid since max_Q >= E[Q] = 0.
    let lhs = BigInt::from(2 * max_q).pow(2) * denominator;
    Ok(AlonCheck {
        holds: max_q >= 0 && lhs >= test.sum_squares,
        max_excess: max_q,
        guaranteed: test.threshold,
    })
}

/// Parameters for seeded random MaxLin-AA instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SystemShape {
    pub n_max: usize,
    pub m_max: usize,
    pub w_max: i64,
    pub k_max: i64,
}

/// Draws a random system from the stream: `n` uniform in `1..=n_max`, `m`
/// uniform in `1..=min(m_max, 2^n - 1)`, distinct nonempty masks, uniform
/// signs, weights in `1..=w_max` and `k` in `0..=k_max`.
pub fn sample_system<R: Rng>(rng: &mut R, shape: SystemShape) -> Result<EquationSystem> {
    if shape.n_max == 0 || shape.m_max == 0 || shape.w_max < 1 || shape.k_max < 0 {
        return Err(Error::BadArgs(format!("bad system shape {shape:?}")));
    }
    let n = rng.gen_range(1..=shape.n_max.min(VarSet::MAX_VARS));
    let space = if n >= 63 { u64::MAX } else { (1u64 << n) - 1 };
    let m = rng.gen_range(1..=(shape.m_max as u64).min(space)) as usize;
    let masks = sample_masks(rng, n, m, true)?;
    let equations = masks
        .into_iter()
        .map(|lhs| {
            let rhs = if rng.gen::<bool>() { 1 } else { -1 };
            Equation::new(lhs, rhs, rng.gen_range(1..=shape.w_max))
        })
        .collect();
    let k = rng.gen_range(0..=shape.k_max);
    EquationSystem::new(n, equations, k)
}

pub fn random_system(shape: SystemShape, seed: u64) -> Result<EquationSystem> {
    sample_system(&mut ChaCha8Rng::seed_from_u64(seed), shape)
}
