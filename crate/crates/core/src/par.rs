//! Execution strategy for batch checks.
//!
//! Work items are always indexed; parallel runs report the same first
//! failure as sequential runs (minimal index) and collect results in input
//! order, so every report is independent of scheduling.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise runs
    /// sequentially.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().find_map_first(f)
            }
            _ => items.iter().find_map(f),
        }
    }

    /// `items.map(f)` in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// All items for which `f` returns `Some`, in input order.
    pub fn filter_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        self.map(items, f).into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_matches_sequential() {
        let items: Vec<u32> = (0..1000).collect();
        let pick = |x: &u32| (x % 97 == 13 && *x > 100).then_some(*x);
        assert_eq!(Exec::Parallel.find_first(&items, pick), Exec::Sequential.find_first(&items, pick));
        assert_eq!(Exec::Parallel.find_first(&items, pick), Some(110));
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..257).collect();
        assert_eq!(Exec::Parallel.map(&items, |x| x * 2), Exec::Sequential.map(&items, |x| x * 2));
    }
}
