use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::{rational, Error, Rational, Result};

/// Degree-based coefficient `((q-1)/(p-1))^{d/2}` of the classical
/// inequality `||f||_q <= C ||f||_p`.
pub fn coeff_classical(q: f64, p: f64, d: u32) -> Result<f64> {
    if !(p > 1.0 && q > p) || !q.is_finite() {
        return Err(Error::BadExponents {
            q,
            p,
            reason: "need q > p > 1",
        });
    }
    Ok(((q - 1.0) / (p - 1.0)).powf(d as f64 / 2.0))
}

/// Width-based `(4,2)` coefficient: `C^4 = 2 rho + 1 - 2 rho / m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Width42Coefficient {
    pub fourth_power: Rational,
    pub value: f64,
}

pub fn coeff_width_42(rho: u64, m: u64) -> Result<Width42Coefficient> {
    if rho >= 1 && m == 0 {
        return Err(Error::InconsistentProfile { rho });
    }
    let fourth_power = if rho == 0 {
        Rational::one()
    } else {
        let rho = rational(rho);
        rational(2u32) * &rho + rational(1u32) - rational(2u32) * rho / rational(m)
    };
    let value = fourth_power.to_f64().unwrap_or(f64::INFINITY).powf(0.25);
    Ok(Width42Coefficient {
        fourth_power,
        value,
    })
}

/// Width-based `(2r,2)` coefficient: `C^{2r} = (2r)! rho^{r-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Width2rCoefficient {
    pub r: u32,
    pub power: BigUint,
    pub root: f64,
}

pub fn coeff_width_2r(r: u32, rho: u64) -> Width2rCoefficient {
    assert!(r >= 1 && rho >= 1, "need r >= 1 and rho >= 1");
    let power = factorial(2 * r) * num_traits::pow(BigUint::from(rho), (r - 1) as usize);
    let root = root_of(&power, 2 * r);
    Width2rCoefficient { r, power, root }
}

/// Sharper `(2r,2)` coefficient `B_r (2r)!/r! rho^{r-1}` obtained by counting
/// set partitions instead of bounding them by `r!`.
pub fn coeff_width_2r_refined(r: u32, rho: u64) -> BigUint {
    assert!(r >= 1 && rho >= 1, "need r >= 1 and rho >= 1");
    bell(r) * (factorial(2 * r) / factorial(r)) * num_traits::pow(BigUint::from(rho), (r - 1) as usize)
}

/// Coefficient for general `q > p >= 2`, reduced to the even case
/// `r = ceil(q/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthQpCoefficient {
    pub r: u32,
    pub value: f64,
}

pub fn coeff_width_qp(q: f64, p: f64, rho: u64) -> Result<WidthQpCoefficient> {
    if !(p >= 2.0 && q > p) || !q.is_finite() {
        return Err(Error::BadExponents {
            q,
            p,
            reason: "need q > p >= 2",
        });
    }
    if rho == 0 {
        return Err(Error::BadArgs("width must be at least 1".into()));
    }
    let r = (q / 2.0).ceil() as u32;
    Ok(WidthQpCoefficient {
        r,
        value: coeff_width_2r(r, rho).root,
    })
}

pub fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `B_r`, the number of partitions of an `r`-set, from the Bell triangle.
pub fn bell(r: u32) -> BigUint {
    if r == 0 {
        return BigUint::one();
    }
    let mut row = vec![BigUint::one()];
    for _ in 1..r {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_else(BigUint::zero));
        for value in &row {
            let v = next.last().expect("row is nonempty") + value;
            next.push(v);
        }
        row = next;
    }
    row.pop().expect("row is nonempty")
}

/// Upper bound `(0.792 r / ln(r+1))^r` on `B_r`.
pub fn bell_upper(r: u32) -> f64 {
    let r = r as f64;
    (0.792 * r / (r + 1.0).ln()).powf(r)
}

/// Number of `2r`-tuples over `[n]` in which every value appears zero or two
/// times: `C(n, r) (2r)! / 2^r`.
pub fn good_vector_bound(n: u32, r: u32) -> Result<BigUint> {
    if r > n {
        return Err(Error::BadArgs(format!("r = {r} exceeds n = {n}")));
    }
    let binom = factorial(n) / (factorial(r) * factorial(n - r));
    Ok((binom * factorial(2 * r)) >> r as usize)
}

fn root_of(value: &BigUint, k: u32) -> f64 {
    match value.to_f64() {
        Some(v) if v.is_finite() => v.powf(1.0 / k as f64),
        _ => (crate::moments::big_ln(value.clone().into()) / k as f64).exp(),
    }
}
