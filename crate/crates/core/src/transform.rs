//! Walsh–Hadamard transform between coefficient vectors and truth tables,
//! plus degree and width statistics.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use crate::exec::{Execution, Limits};
use crate::{Error, FourierExpansion, Rational, Result, TruthTable, VarSet};

/// One butterfly of the transform: `(a, b) <- (a + b, a - b)`.
pub trait Butterfly: Send {
    fn butterfly(a: &mut Self, b: &mut Self);
}

impl Butterfly for f64 {
    #[inline]
    fn butterfly(a: &mut f64, b: &mut f64) {
        let (x, y) = (*a, *b);
        *a = x + y;
        *b = x - y;
    }
}

impl Butterfly for Rational {
    #[inline]
    fn butterfly(a: &mut Rational, b: &mut Rational) {
        let sum = &*a + &*b;
        *b = &*a - &*b;
        *a = sum;
    }
}

// Below this many pairs per block a stage's blocks are distributed across
// threads; above it each block's pairs are.
const SPLIT_WITHIN_BLOCK: usize = 1 << 12;

/// In-place unnormalized transform `v <- W v`, `W[b][c] = (-1)^{|b & c|}`.
pub fn wht_in_place<T: Butterfly>(values: &mut [T], exec: Execution) -> Result<()> {
    let len = values.len();
    if !len.is_power_of_two() {
        return Err(Error::BadLength(len));
    }
    let mut half = 1;
    while half < len {
        let stage = |block: &mut [T]| {
            let (lo, hi) = block.split_at_mut(half);
            lo.iter_mut().zip(hi).for_each(|(a, b)| T::butterfly(a, b));
        };
        if !exec.is_parallel() {
            values.chunks_mut(2 * half).for_each(stage);
        } else if half < SPLIT_WITHIN_BLOCK {
            let batch = (2 * half).max(2 * SPLIT_WITHIN_BLOCK);
            exec.for_each_chunk_mut(values, batch, |run| run.chunks_mut(2 * half).for_each(stage));
        } else {
            for block in values.chunks_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                exec.zip_mut(lo, hi, T::butterfly);
            }
        }
        half *= 2;
    }
    Ok(())
}

/// Exact transform of a rational vector; applying it twice scales by `2^n`.
pub fn wht(values: &[Rational]) -> Result<Vec<Rational>> {
    wht_with(values, Execution::default())
}

pub fn wht_with(values: &[Rational], exec: Execution) -> Result<Vec<Rational>> {
    let mut out = values.to_vec();
    wht_in_place(&mut out, exec)?;
    Ok(out)
}

/// Dense truth table of `f`, computed by transforming its coefficient vector.
pub fn expansion_to_table(f: &FourierExpansion) -> Result<TruthTable> {
    expansion_to_table_with(f, &Limits::default(), Execution::default())
}

pub fn expansion_to_table_with(
    f: &FourierExpansion,
    limits: &Limits,
    exec: Execution,
) -> Result<TruthTable> {
    Limits::check(f.n(), limits.dense_exact)?;
    let mut values = vec![Rational::zero(); 1usize << f.n()];
    for (mask, c) in f.terms() {
        values[mask.mask() as usize] = c.clone();
    }
    wht_in_place(&mut values, exec)?;
    TruthTable::new(values)
}

/// Binary64 truth table for the float fast path (p-norms).
pub fn expansion_to_float_table(
    f: &FourierExpansion,
    limits: &Limits,
    exec: Execution,
) -> Result<Vec<f64>> {
    Limits::check(f.n(), limits.dense_float)?;
    let mut values = vec![0.0f64; 1usize << f.n()];
    for (mask, c) in f.terms() {
        values[mask.mask() as usize] = c.to_f64().unwrap_or(f64::NAN);
    }
    wht_in_place(&mut values, exec)?;
    Ok(values)
}

/// Recovers the unique expansion of a truth table.
pub fn table_to_expansion(table: &TruthTable) -> FourierExpansion {
    table_to_expansion_with(table, Execution::default())
}

pub fn table_to_expansion_with(table: &TruthTable, exec: Execution) -> FourierExpansion {
    let mut values = table.values().to_vec();
    wht_in_place(&mut values, exec).expect("table length is a power of two");
    let scale = crate::rational(1u64 << table.n());
    let terms: BTreeMap<VarSet, Rational> = values
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (VarSet::from_mask(i as u64), v / &scale))
        .collect();
    FourierExpansion::from_map_unchecked(table.n(), terms)
}

/// Largest term cardinality; 0 for the zero function.
pub fn degree(f: &FourierExpansion) -> usize {
    f.terms().map(|(m, _)| m.len()).max().unwrap_or(0)
}

/// Per-variable term counts and their maximum.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WidthProfile {
    /// `per_variable[i - 1]` counts the terms containing variable `i`.
    pub per_variable: Vec<u64>,
    pub width: u64,
}

impl WidthProfile {
    fn from_masks(n: usize, masks: impl Iterator<Item = VarSet>) -> Self {
        let mut per_variable = vec![0u64; n];
        for mask in masks {
            for i in mask.indices() {
                per_variable[i - 1] += 1;
            }
        }
        let width = per_variable.iter().copied().max().unwrap_or(0);
        WidthProfile {
            per_variable,
            width,
        }
    }
}

pub fn width(f: &FourierExpansion) -> WidthProfile {
    WidthProfile::from_masks(f.n(), f.terms().map(|(m, _)| m))
}

pub(crate) fn width_of_masks(n: usize, masks: impl Iterator<Item = VarSet>) -> WidthProfile {
    WidthProfile::from_masks(n, masks)
}
