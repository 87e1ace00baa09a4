//! The field of algebraic functions over ℚ(Λ) realized at the anchor.

pub mod adjoin;
pub mod atom;
pub mod calculus;
pub mod element;
pub mod poly;

use std::sync::atomic::{AtomicUsize, Ordering};

pub use adjoin::{adjoin_root, real_roots, Selector};
pub use calculus::{conjugate, partial_derivative, split_re_im};
pub use element::{Element, Sign};
pub use poly::ElemPoly;

pub const DEFAULT_DEGREE_BUDGET: usize = 64;

static BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_BUDGET);

/// Cap on the `Z`-degree of any defining polynomial.
pub fn degree_budget() -> usize {
    BUDGET.load(Ordering::Relaxed)
}

pub fn set_degree_budget(n: usize) {
    BUDGET.store(n.max(1), Ordering::Relaxed);
}
