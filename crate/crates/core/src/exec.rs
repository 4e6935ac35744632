//! Execution strategy for the data-parallel inner loops.
//!
//! Every dense transform, table reduction, brute-force search and randomized
//! suite takes an [`Execution`]. With the `parallel` feature (on by default)
//! [`Execution::Parallel`] runs on the rayon global pool; without it, both
//! variants run the same sequential loop. Results never depend on the
//! strategy: exact reductions are order-independent and float reductions use
//! a fixed block decomposition.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
const ZIP_CHUNK: usize = 1 << 12;

/// How to run a data-parallel loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether this strategy actually uses more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Maps `f` over `0..len` in fixed-size blocks and returns one result per
    /// block, in block order. The decomposition depends only on `len` and
    /// `block`, never on the thread count.
    pub fn map_blocks<U, F>(self, len: u64, block: u64, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(std::ops::Range<u64>) -> U + Sync + Send,
    {
        let block = block.max(1);
        let blocks = len.div_ceil(block);
        let range = move |k: u64| k * block..((k + 1) * block).min(len);
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..blocks).into_par_iter().map(|k| f(range(k))).collect();
        }
        (0..blocks).map(|k| f(range(k))).collect()
    }

    /// Applies `f` to each element of `items` in place.
    pub fn for_each_mut<T, F>(self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            items.par_iter_mut().for_each(f);
            return;
        }
        items.iter_mut().for_each(f);
    }

    /// Applies `f` to consecutive disjoint chunks of `items`.
    pub fn for_each_chunk_mut<T, F>(self, items: &mut [T], chunk: usize, f: F)
    where
        T: Send,
        F: Fn(&mut [T]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            items.par_chunks_mut(chunk).for_each(f);
            return;
        }
        items.chunks_mut(chunk).for_each(f);
    }

    /// Applies `f` pairwise to two equal-length slices.
    pub fn zip_mut<T, F>(self, left: &mut [T], right: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            left.par_chunks_mut(ZIP_CHUNK)
                .zip(right.par_chunks_mut(ZIP_CHUNK))
                .for_each(|(l, r)| l.iter_mut().zip(r).for_each(|(a, b)| f(a, b)));
            return;
        }
        left.iter_mut().zip(right.iter_mut()).for_each(|(a, b)| f(a, b));
    }
}

/// Size caps for dense and brute-force work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for exact rational truth tables.
    pub dense_exact: usize,
    /// Largest `n` for binary64 truth tables (p-norms).
    pub dense_float: usize,
    /// Largest intermediate map in the sparse XOR self-convolution before the
    /// moment computation switches to the dense route (when admissible).
    pub sparse_map: usize,
    /// Largest `n` for exhaustive MaxLin search.
    pub brute_force: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            dense_exact: 16,
            dense_float: 24,
            sparse_map: 1 << 20,
            brute_force: 24,
        }
    }
}

impl Limits {
    pub(crate) fn check(n: usize, cap: usize) -> crate::Result<()> {
        if n > cap {
            Err(crate::Error::TooManyVariables { n, cap })
        } else {
            Ok(())
        }
    }
}
