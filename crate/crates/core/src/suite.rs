//! Seeded randomized verification suites.
//!
//! Instances are drawn sequentially from one ChaCha stream so a seed fixes
//! the whole suite; the checks then run under the requested [`Execution`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{
    check_corollary_with, CoefficientRange, BoundReport,
};
use crate::bounds::families::sample_function;
use crate::exec::{Execution, Limits};
use crate::maxlin::{
    alon_witness_check_with, kernelize, sample_system, solve_bruteforce_with, EquationSystem,
    SystemShape, Verdict,
};
use crate::moments::{even_moment_with, even_moment_oracle_with, p_norm_with};
use crate::{bounds, FourierExpansion, Result};

/// Shape of random functions: `n` uniform in `1..=n_max`, `m` uniform in
/// `1..=min(m_max, 2^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionShape {
    pub n_max: usize,
    pub m_max: usize,
    pub coefficients: CoefficientRange,
}

impl FunctionShape {
    pub const fn new(n_max: usize, m_max: usize, bound: i64) -> Self {
        FunctionShape {
            n_max,
            m_max,
            coefficients: CoefficientRange::symmetric(bound),
        }
    }
}

pub fn sample_suite_function<R: Rng>(rng: &mut R, shape: FunctionShape) -> Result<FourierExpansion> {
    if shape.n_max == 0 || shape.m_max == 0 {
        return Err(crate::Error::BadArgs(format!("bad function shape {shape:?}")));
    }
    let n = rng.gen_range(1..=shape.n_max.min(crate::VarSet::MAX_VARS));
    let space = if n >= 63 { u64::MAX } else { 1u64 << n };
    let m = rng.gen_range(1..=(shape.m_max as u64).min(space)) as usize;
    sample_function(rng, n, m, shape.coefficients)
}

/// Draws `trials` functions from the seeded stream.
pub fn generate_functions(trials: usize, shape: FunctionShape, seed: u64) -> Result<Vec<FourierExpansion>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| sample_suite_function(&mut rng, shape)).collect()
}

pub fn generate_systems(trials: usize, shape: SystemShape, seed: u64) -> Result<Vec<EquationSystem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| sample_system(&mut rng, shape)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteFailure {
    pub trial: usize,
    pub detail: String,
}

/// Totals of a suite run; `failures` is empty when everything held.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(per_trial: Vec<(usize, Vec<String>)>, trials: usize) -> Self {
        let mut report = SuiteReport {
            trials,
            ..SuiteReport::default()
        };
        for (trial, (checks, failures)) in per_trial.into_iter().enumerate() {
            report.checks += checks;
            report
                .failures
                .extend(failures.into_iter().map(|detail| SuiteFailure { trial, detail }));
        }
        report
    }
}

fn describe(report: &BoundReport) -> String {
    format!(
        "{} r={:?}: lhs {} > rhs {}",
        report.kind, report.r, report.lhs, report.rhs
    )
}

fn run_checks<T, F>(items: &[T], exec: Execution, check: F) -> SuiteReport
where
    T: Sync,
    F: Fn(&T) -> (usize, Vec<String>) + Sync + Send,
{
    SuiteReport::collect(exec.map(items, check), items.len())
}

/// Exact width-based `(4,2)` check on each function.
pub fn theorem1_suite(functions: &[FourierExpansion], exec: Execution) -> SuiteReport {
    let limits = Limits::default();
    run_checks(functions, exec, |f| {
        let report = bounds::check_theorem_42_with(f, &limits, Execution::Sequential);
        (1, failed(&report))
    })
}

/// Exact `(2r,2)` check for each `r`, optionally also with the refined
/// coefficient.
pub fn theorem2_suite(
    functions: &[FourierExpansion],
    orders: &[u32],
    refined: bool,
    exec: Execution,
) -> SuiteReport {
    let limits = Limits::default();
    run_checks(functions, exec, |f| {
        let mut failures = Vec::new();
        let mut checks = 0;
        for &r in orders {
            let plain = bounds::check_theorem_2r_with(f, r, &limits, Execution::Sequential);
            failures.extend(failed(&plain));
            checks += 1;
            if refined {
                let sharp = bounds::check_theorem_2r_refined_with(f, r, &limits, Execution::Sequential);
                failures.extend(failed(&sharp));
                checks += 1;
            }
        }
        (checks, failures)
    })
}

/// Float corollary check for each `(q, p)` plus norm monotonicity
/// `||f||_q >= ||f||_p - 1e-12`.
pub fn corollary_suite(
    functions: &[FourierExpansion],
    pairs: &[(f64, f64)],
    limits: &Limits,
    exec: Execution,
) -> Result<SuiteReport> {
    for &(q, p) in pairs {
        if !(p >= 2.0 && q > p) {
            return Err(crate::Error::BadExponents {
                q,
                p,
                reason: "need q > p >= 2",
            });
        }
    }
    let inner = Execution::Sequential;
    let per_trial: Vec<Result<(usize, Vec<String>)>> = exec.map(functions, |f| {
        let mut failures = Vec::new();
        for &(q, p) in pairs {
            let report = check_corollary_with(f, q, p, limits, inner)?;
            failures.extend(failed(&report));
            let high = p_norm_with(f, q, limits, inner)?.value;
            let low = p_norm_with(f, p, limits, inner)?.value;
            if high < low - 1e-12 {
                failures.push(format!("monotonicity: ||f||_{q} = {high} < ||f||_{p} = {low}"));
            }
        }
        Ok((2 * pairs.len(), failures))
    });
    let per_trial = per_trial.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect(per_trial, functions.len()))
}

/// Sparse-convolution moments against the dense oracle, exactly.
pub fn moment_suite(
    functions: &[FourierExpansion],
    orders: &[u32],
    limits: &Limits,
    exec: Execution,
) -> Result<SuiteReport> {
    let per_trial: Vec<Result<(usize, Vec<String>)>> = exec.map(functions, |f| {
        let mut failures = Vec::new();
        for &r in orders {
            let sparse = even_moment_with(f, r, limits, Execution::Sequential);
            let dense = even_moment_oracle_with(f, r, limits, Execution::Sequential)?;
            if sparse != dense {
                failures.push(format!("r={r}: sparse {} != dense {}", sparse.value, dense.value));
            }
        }
        Ok((orders.len(), failures))
    });
    let per_trial = per_trial.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::collect(per_trial, functions.len()))
}

/// Counters from the kernel soundness suite.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MaxlinSuiteReport {
    pub suite: SuiteReport,
    pub yes_by_bound: usize,
    pub pass_through: usize,
    /// Instances that really are Yes-instances (by exhaustive search).
    pub yes_instances: usize,
}

/// For each system: a bound verdict must be confirmed by exhaustive search,
/// a pass-through must satisfy `m < 16 k^2 (2 rho + 1)`, and the optimum must
/// meet the moment guarantee.
pub fn maxlin_suite(systems: &[EquationSystem], limits: &Limits, exec: Execution) -> Result<MaxlinSuiteReport> {
    let inner = Execution::Sequential;
    let per_trial: Vec<Result<(Verdict, bool, Vec<String>)>> = exec.map(systems, |s| {
        let mut failures = Vec::new();
        let kernel = kernelize(s);
        let solved = solve_bruteforce_with(s, limits, inner)?;
        let yes = solved.max_excess >= 2 * s.k();
        match kernel.verdict {
            Verdict::YesByBound if !yes => failures.push(format!(
                "bound said yes but max Q = {} < 2k = {}",
                solved.max_excess,
                2 * s.k()
            )),
            Verdict::PassThrough if num_bigint::BigInt::from(s.m()) >= kernel.size_bound => {
                failures.push(format!("pass-through with m = {} >= {}", s.m(), kernel.size_bound))
            }
            _ => {}
        }
        let alon = alon_witness_check_with(s, limits, inner)?;
        if !alon.holds {
            failures.push(format!(
                "max Q = {} below guaranteed {}",
                alon.max_excess, alon.guaranteed
            ));
        }
        Ok((kernel.verdict, yes, failures))
    });
    let mut report = MaxlinSuiteReport::default();
    report.suite.trials = systems.len();
    for (trial, outcome) in per_trial.into_iter().enumerate() {
        let (verdict, yes, failures) = outcome?;
        report.suite.checks += 3;
        match verdict {
            Verdict::YesByBound => report.yes_by_bound += 1,
            Verdict::PassThrough => report.pass_through += 1,
        }
        report.yes_instances += usize::from(yes);
        report
            .suite
            .failures
            .extend(failures.into_iter().map(|detail| SuiteFailure { trial, detail }));
    }
    Ok(report)
}

fn failed(report: &BoundReport) -> Vec<String> {
    if report.holds {
        Vec::new()
    } else {
        vec![describe(report)]
    }
}
