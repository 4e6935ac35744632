//! Exact even moments `E[f^{2r}]` and binary64 p-norms under the uniform
//! measure on the cube.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exec::{Execution, Limits};
use crate::expansion::rational_pow;
use crate::transform::{expansion_to_float_table, expansion_to_table_with};
use crate::{Error, FourierExpansion, Rational, Result};

/// `E[f(x)^{2r}]`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentValue {
    pub r: u32,
    pub value: Rational,
}

/// `||f||_p` in binary64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormValue {
    pub p: f64,
    pub value: f64,
}

/// Parseval: `E[f^2]` is the sum of squared coefficients.
pub fn second_moment(f: &FourierExpansion) -> Rational {
    f.terms().fold(Rational::zero(), |acc, (_, c)| acc + c * c)
}

/// `E[f^{2r}]` via sparse XOR self-convolution of the coefficient map.
///
/// The coefficients are scaled to integers by their common denominator `L`,
/// the `r`-fold convolution power `g_r` of the scaled map is formed, and
/// `E[f^{2r}] = (sum_z g_r(z)^2) / L^{2r}`.
pub fn even_moment(f: &FourierExpansion, r: u32) -> MomentValue {
    even_moment_with(f, r, &Limits::default(), Execution::default())
}

pub fn even_moment_with(
    f: &FourierExpansion,
    r: u32,
    limits: &Limits,
    exec: Execution,
) -> MomentValue {
    assert!(r >= 1, "moment order r must be positive");
    if f.is_zero() {
        return MomentValue {
            r,
            value: Rational::zero(),
        };
    }

    let scale = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let base: Vec<(u64, BigInt)> = f
        .terms()
        .map(|(m, c)| (m.mask(), c.numer() * (&scale / c.denom())))
        .collect();

    let space = if f.n() >= 64 { u64::MAX } else { 1u64 << f.n() };
    let mut power = base.clone();
    for _ in 1..r {
        let predicted = (power.len() as u64)
            .saturating_mul(base.len() as u64)
            .min(space);
        if predicted > limits.sparse_map as u64 && f.n() <= limits.dense_exact {
            return even_moment_oracle_with(f, r, limits, exec)
                .expect("n is within the dense cap");
        }
        power = xor_convolve(&power, &base, exec);
    }

    let sum: BigInt = power.iter().map(|(_, c)| c * c).sum();
    let denom = num_traits::pow(scale, 2 * r as usize);
    MomentValue {
        r,
        value: Rational::new(sum, denom),
    }
}

/// Sparse XOR convolution of two coefficient lists; exact zeros are dropped
/// and the result is sorted by mask.
fn xor_convolve(a: &[(u64, BigInt)], b: &[(u64, BigInt)], exec: Execution) -> Vec<(u64, BigInt)> {
    const CHUNK: usize = 64;
    let chunks: Vec<&[(u64, BigInt)]> = a.chunks(CHUNK).collect();
    let partials = exec.map(&chunks, |chunk| {
        let mut local: HashMap<u64, BigInt> = HashMap::new();
        for (ma, ca) in chunk.iter() {
            for (mb, cb) in b {
                *local.entry(ma ^ mb).or_default() += ca * cb;
            }
        }
        local
    });
    let mut merged: HashMap<u64, BigInt> = HashMap::new();
    for part in partials {
        for (mask, c) in part {
            *merged.entry(mask).or_default() += c;
        }
    }
    let mut out: Vec<(u64, BigInt)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_unstable_by_key(|(m, _)| *m);
    out
}

/// `E[f^{2r}]` by direct averaging over the exact truth table.
pub fn even_moment_oracle(f: &FourierExpansion, r: u32) -> Result<MomentValue> {
    even_moment_oracle_with(f, r, &Limits::default(), Execution::default())
}

pub fn even_moment_oracle_with(
    f: &FourierExpansion,
    r: u32,
    limits: &Limits,
    exec: Execution,
) -> Result<MomentValue> {
    assert!(r >= 1, "moment order r must be positive");
    let table = expansion_to_table_with(f, limits, exec)?;
    let values = table.values();
    let partial = exec.map_blocks(values.len() as u64, 1024, |range| {
        values[range.start as usize..range.end as usize]
            .iter()
            .fold(Rational::zero(), |acc, v| acc + rational_pow(v, 2 * r))
    });
    let total: Rational = partial.into_iter().sum();
    Ok(MomentValue {
        r,
        value: total / crate::rational(BigInt::one() << f.n()),
    })
}

/// `(E|f|^p)^{1/p}` in binary64 over the dense table.
pub fn p_norm(f: &FourierExpansion, p: f64) -> Result<NormValue> {
    p_norm_with(f, p, &Limits::default(), Execution::default())
}

pub fn p_norm_with(
    f: &FourierExpansion,
    p: f64,
    limits: &Limits,
    exec: Execution,
) -> Result<NormValue> {
    if !p.is_finite() || p < 1.0 {
        return Err(Error::BadExponent(p));
    }
    let table = expansion_to_float_table(f, limits, exec)?;
    let mean = abs_power_mean(&table, p, exec);
    Ok(NormValue {
        p,
        value: mean.powf(1.0 / p),
    })
}

/// Mean of `|v|^p` with a fixed block order, so the result is the same for
/// every execution strategy.
fn abs_power_mean(values: &[f64], p: f64, exec: Execution) -> f64 {
    let integral = (p.fract() == 0.0 && p <= i32::MAX as f64).then_some(p as i32);
    let sums = exec.map_blocks(values.len() as u64, 4096, |range| {
        let block = &values[range.start as usize..range.end as usize];
        match integral {
            Some(k) => block.iter().map(|v| v.abs().powi(k)).sum::<f64>(),
            None => block.iter().map(|v| v.abs().powf(p)).sum::<f64>(),
        }
    });
    sums.into_iter().sum::<f64>() / values.len() as f64
}

/// Real `(2r)`-th root of an exact nonnegative moment, for display.
pub fn moment_root(value: &Rational, r: u32) -> f64 {
    let v = value.to_f64().unwrap_or(f64::INFINITY);
    if v.is_finite() && v > 0.0 {
        return v.powf(1.0 / (2.0 * r as f64));
    }
    if value.is_zero() {
        return 0.0;
    }
    // Out of binary64 range: go through logarithms of numerator and denominator.
    let ln = big_ln(value.numer().abs()) - big_ln(value.denom().clone());
    (ln / (2.0 * r as f64)).exp()
}

pub(crate) fn big_ln(x: BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
