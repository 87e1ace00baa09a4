//! Exact and certified numeric primitives.

pub mod dyadic;
pub mod mpoly;
pub mod resultant;
pub mod roots;
pub mod parse;
pub mod sturm;

pub use dyadic::{CDyadic, Dyadic, DyadicBox, DyadicInterval, Round};
pub use mpoly::{rat, MPoly, Rational, Var};
pub use resultant::{constant_factor_in, gcd, resultant, squarefree_part};
pub use sturm::{sturm_count, UPoly};
