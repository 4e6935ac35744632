use num_traits::Zero;

use super::families::Family;
use crate::expansion::rational_pow;
use crate::moments::{even_moment, moment_root, second_moment};
use crate::transform::width;
use crate::Result;

/// One data point of the `||f||_{2r} / ||f||_2` versus `sqrt(r rho)`
/// exploration. Purely descriptive.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureScanRow {
    pub family: Family,
    pub n: usize,
    pub r: u32,
    pub width: u64,
    /// `||f||_{2r} / ||f||_2`, from exact moments.
    pub ratio: f64,
    /// `sqrt(r * max(rho, 1))`.
    pub reference: f64,
    pub implied_c: f64,
}

/// Scans `n = 1..=n_max` and `r = 1..=r_max` for each family.
pub fn conjecture_scan(families: &[Family], n_max: usize, r_max: u32) -> Result<Vec<ConjectureScanRow>> {
    let mut rows = Vec::new();
    for &family in families {
        for n in 1..=n_max {
            let f = family.build(n)?;
            let rho = width(&f).width;
            let second = second_moment(&f);
            for r in 1..=r_max {
                let ratio = if second.is_zero() {
                    1.0
                } else {
                    let normalized = even_moment(&f, r).value / rational_pow(&second, r);
                    moment_root(&normalized, r)
                };
                let reference = (r as f64 * rho.max(1) as f64).sqrt();
                rows.push(ConjectureScanRow {
                    family,
                    n,
                    r,
                    width: rho,
                    ratio,
                    reference,
                    implied_c: ratio / reference,
                });
            }
        }
    }
    Ok(rows)
}
