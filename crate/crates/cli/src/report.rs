//! Machine-readable reports. Rationals are serialized as exact `"p/q"`
//! strings (`"p"` for integers); floats as shortest round-trip decimals.

use std::fmt::Write as _;

use pbf_core::bounds::{self, BoundReport, BoundValue};
use pbf_core::maxlin::{AlonCheck, KernelResult, LowerBoundTest, SolveResult};
use pbf_core::moments::{even_moment, p_norm_with, second_moment};
use pbf_core::transform::{degree, width};
use pbf_core::{Execution, FourierExpansion, Limits, Rational};
use serde::{Deserialize, Serialize};

use crate::format::parse_rational;

/// Either side of an inequality: exact rationals as strings, floats as
/// numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Exact(String),
    Float(f64),
}

impl From<&BoundValue> for Value {
    fn from(v: &BoundValue) -> Self {
        match v {
            BoundValue::Exact(r) => Value::Exact(r.to_string()),
            BoundValue::Float(f) => Value::Float(*f),
        }
    }
}

impl Value {
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Value::Exact(s) => parse_rational(s),
            Value::Float(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<u32>,
    pub exact: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub slack: Value,
    pub holds: bool,
    pub tight: bool,
}

impl From<&BoundReport> for BoundEntry {
    fn from(b: &BoundReport) -> Self {
        BoundEntry {
            kind: b.kind.name().to_string(),
            r: b.r,
            exact: b.exact,
            lhs: (&b.lhs).into(),
            rhs: (&b.rhs).into(),
            slack: (&b.slack).into(),
            holds: b.holds,
            tight: b.tight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentEntry {
    pub r: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEntry {
    pub p: f64,
    pub value: f64,
}

/// Everything `analyze` reports about one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub degree: usize,
    pub width: u64,
    pub per_variable: Vec<u64>,
    pub second_moment: String,
    pub moments: Vec<MomentEntry>,
    pub norms: Vec<NormEntry>,
    pub bounds: Vec<BoundEntry>,
}

impl AnalysisReport {
    /// Builds the report. `orders` are the requested even moments (also used
    /// for the `(2r,2)` checks); the corollary check at `(4,2)` is included
    /// when the function fits the float table cap.
    pub fn build(
        f: &FourierExpansion,
        orders: &[u32],
        norms: &[f64],
        limits: &Limits,
        exec: Execution,
    ) -> pbf_core::Result<Self> {
        let profile = width(f);
        let norms = norms
            .iter()
            .map(|&p| {
                p_norm_with(f, p, limits, exec).map(|v| NormEntry {
                    p,
                    value: v.value,
                })
            })
            .collect::<pbf_core::Result<Vec<_>>>()?;
        let moments = orders
            .iter()
            .map(|&r| MomentEntry {
                r,
                value: even_moment(f, r).value.to_string(),
            })
            .collect();

        let mut checks = vec![bounds::check_classical_42(f), bounds::check_theorem_42(f)];
        for &r in orders {
            checks.push(bounds::check_theorem_2r(f, r));
            checks.push(bounds::check_theorem_2r_refined(f, r));
        }
        if f.n() <= limits.dense_float {
            checks.push(bounds::check_corollary_with(f, 4.0, 2.0, limits, exec)?);
        }

        Ok(AnalysisReport {
            n: f.n(),
            m: f.m(),
            degree: degree(f),
            width: profile.width,
            per_variable: profile.per_variable,
            second_moment: second_moment(f).to_string(),
            moments,
            norms,
            bounds: checks.iter().map(BoundEntry::from).collect(),
        })
    }

    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n            {}", self.n);
        let _ = writeln!(out, "m            {}", self.m);
        let _ = writeln!(out, "degree       {}", self.degree);
        let _ = writeln!(out, "width        {}", self.width);
        let widths: Vec<String> = self.per_variable.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "per-variable {}", widths.join(" "));
        let _ = writeln!(out, "E[f^2]       {}", self.second_moment);
        for m in &self.moments {
            let _ = writeln!(out, "E[f^{}]       {}", 2 * m.r, m.value);
        }
        for p in &self.norms {
            let _ = writeln!(out, "||f||_{}      {}", p.p, p.value);
        }
        let _ = writeln!(out, "{:<10} {:>3} {:>6} {:>6}  {:<24} rhs", "bound", "r", "holds", "tight", "lhs");
        for b in &self.bounds {
            let r = b.r.map(|r| r.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<10} {:>3} {:>6} {:>6}  {:<24} {}",
                b.kind,
                r,
                b.holds,
                b.tight,
                show(&b.lhs),
                show(&b.rhs)
            );
        }
        out
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::Exact(s) => s.clone(),
        Value::Float(f) => f.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub verdict: String,
    pub n: usize,
    pub m: usize,
    pub k: i64,
    pub k_prime: i64,
    pub width: u64,
    pub sum_squares: String,
    /// `16 k^2 (2 rho + 1)`.
    pub m_bound: String,
    pub threshold: f64,
    pub exact_test: bool,
    pub kernel_m: usize,
    pub kernel: String,
}

impl KernelReport {
    pub fn new(system_m: usize, system_n: usize, k: i64, result: &KernelResult) -> Self {
        KernelReport {
            verdict: result.verdict.name().to_string(),
            n: system_n,
            m: system_m,
            k,
            k_prime: result.k_prime,
            width: result.width,
            sum_squares: result.sum_squares.to_string(),
            m_bound: result.size_bound.to_string(),
            threshold: result.threshold,
            exact_test: result.exact_test,
            kernel_m: result.kernel.m(),
            kernel: crate::format::write_maxlin(&result.kernel),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "verdict      {}\nm            {}\nwidth        {}\nsum c^2      {}\nm-bound      16k^2(2rho+1) = {}\nthreshold    {}\nk'           {}\nkernel:\n{}",
            self.verdict,
            self.m,
            self.width,
            self.sum_squares,
            self.m_bound,
            self.threshold,
            self.k_prime,
            self.kernel
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub total_weight: i64,
    pub k: i64,
    pub max_weight: i64,
    pub max_q: i64,
    pub witness: Vec<i64>,
    pub answer: bool,
}

impl SolveReport {
    pub fn new(total_weight: i64, k: i64, solved: &SolveResult) -> Self {
        SolveReport {
            total_weight,
            k,
            max_weight: solved.max_weight,
            max_q: solved.max_excess,
            witness: solved.witness.clone(),
            answer: solved.max_excess >= 2 * k,
        }
    }

    pub fn to_text(&self) -> String {
        let witness: Vec<String> = self.witness.iter().map(i64::to_string).collect();
        format!(
            "W            {}\nmax weight   {}\nmax Q        {}\nwitness      {}\nanswer       {}\n",
            self.total_weight,
            self.max_weight,
            self.max_q,
            witness.join(" "),
            if self.answer { "YES" } else { "NO" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: String,
    pub bound_test: bool,
    pub threshold: f64,
    pub decide: bool,
    pub max_q: i64,
    pub alon_holds: bool,
    pub sound: bool,
    pub size_bound_ok: bool,
}

impl CheckReport {
    pub fn new(
        m: usize,
        test: Option<&LowerBoundTest>,
        kernel: &KernelResult,
        decide: bool,
        alon: &AlonCheck,
    ) -> Self {
        let yes = kernel.verdict == pbf_core::maxlin::Verdict::YesByBound;
        CheckReport {
            verdict: kernel.verdict.name().to_string(),
            bound_test: test.map(|t| t.passes).unwrap_or(kernel.exact_test),
            threshold: kernel.threshold,
            decide,
            max_q: alon.max_excess,
            alon_holds: alon.holds,
            sound: !yes || decide,
            size_bound_ok: yes || num_bigint::BigInt::from(m) < kernel.size_bound,
        }
    }

    pub fn ok(&self) -> bool {
        self.alon_holds && self.sound && self.size_bound_ok
    }

    pub fn to_text(&self) -> String {
        format!(
            "verdict      {}\nthreshold    {}\nmax Q        {}\ndecide       {}\nalon holds   {}\nsound        {}\nsize bound   {}\n",
            self.verdict,
            self.threshold,
            self.max_q,
            self.decide,
            self.alon_holds,
            self.sound,
            self.size_bound_ok
        )
    }
}
