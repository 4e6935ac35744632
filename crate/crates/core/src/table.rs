use crate::{Error, Rational, Result};

/// Dense table of `f` over all `2^n` cube points.
///
/// Entry `b` holds `f(x)` where bit `i-1` of `b` is 0 for `x_i = +1` and 1
/// for `x_i = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    values: Vec<Rational>,
}

impl TruthTable {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        Ok(TruthTable {
            n: len.trailing_zeros() as usize,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn get(&self, point: usize) -> Option<&Rational> {
        self.values.get(point)
    }
}
