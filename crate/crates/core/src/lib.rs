//! Finite categories, orthogonal factorization systems and strict double
//! categories, with exhaustive checkers for their structural properties.

pub mod adequate;
pub mod bridge;
pub mod budget;
pub mod catalog;
pub mod dblcat;
pub mod fib;
pub mod fincat;
pub mod io;
pub mod ofs;
mod search;
pub mod suite;

pub use budget::{Budget, BudgetExceeded, DEFAULT_BUDGET};
pub use fincat::{FinCategory, Functor, MorId, Morphism, ObjId, RawCategory};
pub use ofs::{FactorizationSystem, MorphismClass, OfsMap};
