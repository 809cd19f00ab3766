//! Fixtures shared by the benchmarks.

use factorcat::catalog::constant_indexing;
use factorcat::dblcat::{boxtimes, DoubleCategory};
use factorcat::fib::DblIndexing;
use factorcat::fincat::{poset_category, product};
use factorcat::ofs::product_ofs;
use factorcat::{FactorizationSystem, FinCategory};

/// `[m] × [n]` as a plain category.
pub fn grid_category(m: usize, n: usize) -> FinCategory {
    product(&poset_category(m), &poset_category(n))
}

/// The product system on `[m] × [n]`.
pub fn grid_system(m: usize, n: usize) -> FactorizationSystem {
    product_ofs(&poset_category(m), &poset_category(n))
}

/// `[m] ⊠ [n]`.
pub fn grid_double(m: usize, n: usize) -> DoubleCategory {
    boxtimes(&poset_category(m), &poset_category(n))
}

/// The indexing over `[m] ⊠ [n]` constant at `[k]`.
pub fn constant_over_grid(m: usize, n: usize, k: usize) -> DblIndexing {
    constant_indexing(&grid_double(m, n), &poset_category(k))
}
