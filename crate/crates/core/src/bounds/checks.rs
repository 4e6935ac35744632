use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::coefficients::{coeff_width_2r, coeff_width_2r_refined, coeff_width_42, coeff_width_qp};
use crate::exec::{Execution, Limits};
use crate::expansion::rational_pow;
use crate::moments::{even_moment_with, p_norm_with, second_moment};
use crate::transform::{degree, width};
use crate::{rational, Error, FourierExpansion, Rational, Result};

/// Relative tolerance of the floating-point (corollary) check.
pub const FLOAT_TIGHT_TOLERANCE: f64 = 1e-9;

/// Which inequality a report checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Degree-based `E[f^4] <= 9^d E[f^2]^2`.
    Classical,
    /// Width-based `E[f^4] <= (2 rho + 1 - 2 rho / m) E[f^2]^2`.
    Width42,
    /// Width-based `E[f^{2r}] <= (2r)! rho^{r-1} E[f^2]^r`.
    Width2r,
    /// `||f||_q <= ((2r)! rho^{r-1})^{1/2r} ||f||_p`, `r = ceil(q/2)`.
    Corollary,
    /// `E[f^{2r}] <= B_r (2r)!/r! rho^{r-1} E[f^2]^r`.
    Refined2r,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Classical => "classical",
            BoundKind::Width42 => "width42",
            BoundKind::Width2r => "width2r",
            BoundKind::Corollary => "corollary",
            BoundKind::Refined2r => "refined2r",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(Rational),
    Float(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(v) => v.to_f64().unwrap_or(f64::NAN),
            BoundValue::Float(v) => *v,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => write!(f, "{v}"),
            BoundValue::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Outcome of one inequality check `lhs <= rhs`.
///
/// Exact reports compare `2r`-th powers of norms as rationals and call the
/// bound tight only on literal equality. Float reports compare norms with
/// relative tolerance [`FLOAT_TIGHT_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// Moment order for the `2r` checks and the corollary.
    pub r: Option<u32>,
    pub lhs: BoundValue,
    pub rhs: BoundValue,
    pub slack: BoundValue,
    pub exact: bool,
    pub holds: bool,
    pub tight: bool,
}

impl BoundReport {
    fn exact(kind: BoundKind, r: Option<u32>, lhs: Rational, rhs: Rational) -> Self {
        let holds = lhs <= rhs;
        let tight = lhs == rhs;
        BoundReport {
            kind,
            r,
            slack: BoundValue::Exact(&rhs - &lhs),
            lhs: BoundValue::Exact(lhs),
            rhs: BoundValue::Exact(rhs),
            exact: true,
            holds,
            tight,
        }
    }

    fn float(kind: BoundKind, r: Option<u32>, lhs: f64, rhs: f64) -> Self {
        let tol = FLOAT_TIGHT_TOLERANCE * rhs.abs();
        BoundReport {
            kind,
            r,
            lhs: BoundValue::Float(lhs),
            rhs: BoundValue::Float(rhs),
            slack: BoundValue::Float(rhs - lhs),
            exact: false,
            holds: lhs <= rhs + tol,
            tight: (rhs - lhs).abs() <= tol,
        }
    }
}

/// Exact check of the width-based `(4,2)` bound.
pub fn check_theorem_42(f: &FourierExpansion) -> BoundReport {
    check_theorem_42_with(f, &Limits::default(), Execution::default())
}

pub fn check_theorem_42_with(f: &FourierExpansion, limits: &Limits, exec: Execution) -> BoundReport {
    let lhs = even_moment_with(f, 2, limits, exec).value;
    let second = second_moment(f);
    let coefficient = coeff_width_42(width(f).width, f.m() as u64)
        .expect("width is zero whenever there are no terms");
    let rhs = coefficient.fourth_power * &second * &second;
    BoundReport::exact(BoundKind::Width42, Some(2), lhs, rhs)
}

/// Exact check of the degree-based `(4,2)` bound `E[f^4] <= 9^d E[f^2]^2`.
pub fn check_classical_42(f: &FourierExpansion) -> BoundReport {
    let lhs = even_moment_with(f, 2, &Limits::default(), Execution::default()).value;
    let second = second_moment(f);
    let rhs = rational_pow(&rational(9), degree(f) as u32) * &second * &second;
    BoundReport::exact(BoundKind::Classical, Some(2), lhs, rhs)
}

/// Exact check of `E[f^{2r}] <= (2r)! rho^{r-1} E[f^2]^r`. Width 0 means `f`
/// is constant, where `E[f^{2r}] = E[f^2]^r` and the coefficient is taken
/// as 1.
pub fn check_theorem_2r(f: &FourierExpansion, r: u32) -> BoundReport {
    check_theorem_2r_with(f, r, &Limits::default(), Execution::default())
}

pub fn check_theorem_2r_with(
    f: &FourierExpansion,
    r: u32,
    limits: &Limits,
    exec: Execution,
) -> BoundReport {
    let rho = width(f).width;
    let coefficient = if rho == 0 {
        rational(1)
    } else {
        rational(coeff_width_2r(r, rho).power)
    };
    check_even(f, r, BoundKind::Width2r, coefficient, limits, exec)
}

/// Exact check with the partition-counting coefficient
/// `B_r (2r)!/r! rho^{r-1}`.
pub fn check_theorem_2r_refined(f: &FourierExpansion, r: u32) -> BoundReport {
    check_theorem_2r_refined_with(f, r, &Limits::default(), Execution::default())
}

pub fn check_theorem_2r_refined_with(
    f: &FourierExpansion,
    r: u32,
    limits: &Limits,
    exec: Execution,
) -> BoundReport {
    let rho = width(f).width;
    let coefficient = if rho == 0 {
        rational(1)
    } else {
        rational(coeff_width_2r_refined(r, rho))
    };
    check_even(f, r, BoundKind::Refined2r, coefficient, limits, exec)
}

fn check_even(
    f: &FourierExpansion,
    r: u32,
    kind: BoundKind,
    coefficient: Rational,
    limits: &Limits,
    exec: Execution,
) -> BoundReport {
    let lhs = even_moment_with(f, r, limits, exec).value;
    let rhs = coefficient * rational_pow(&second_moment(f), r);
    BoundReport::exact(kind, Some(r), lhs, rhs)
}

/// Floating-point check of `||f||_q <= C ||f||_p` for `q > p >= 2`.
pub fn check_corollary(f: &FourierExpansion, q: f64, p: f64) -> Result<BoundReport> {
    check_corollary_with(f, q, p, &Limits::default(), Execution::default())
}

pub fn check_corollary_with(
    f: &FourierExpansion,
    q: f64,
    p: f64,
    limits: &Limits,
    exec: Execution,
) -> Result<BoundReport> {
    if !(p >= 2.0 && q > p) || !q.is_finite() {
        return Err(Error::BadExponents {
            q,
            p,
            reason: "need q > p >= 2",
        });
    }
    let rho = width(f).width;
    let (r, coefficient) = if rho == 0 {
        ((q / 2.0).ceil() as u32, 1.0)
    } else {
        let c = coeff_width_qp(q, p, rho)?;
        (c.r, c.value)
    };
    let lhs = p_norm_with(f, q, limits, exec)?.value;
    let rhs = coefficient * p_norm_with(f, p, limits, exec)?.value;
    Ok(BoundReport::float(BoundKind::Corollary, Some(r), lhs, rhs))
}

impl BoundReport {
    /// Whether `slack` is strictly positive.
    pub fn has_positive_slack(&self) -> bool {
        match &self.slack {
            BoundValue::Exact(v) => *v > Rational::zero(),
            BoundValue::Float(v) => *v > 0.0,
        }
    }
}
