//! Exact computations in quantized enveloping algebras `U_q(g)` of finite type
//! and in quantum symmetric pair coideal subalgebras, with a verification
//! harness for braid group actions on them.

#![allow(clippy::needless_range_loop, clippy::too_many_arguments, clippy::type_complexity)]

pub mod braidact;
pub mod budget;
pub mod chevalley;
pub mod error;
pub mod garside;
pub mod lusztig;
pub mod properties;
pub mod qsp;
pub mod repl;
pub mod report;
pub mod rootdata;
pub mod scalar;
pub mod suites;
pub mod uqg;

pub use budget::Budget;
pub use error::{Error, Result};
pub use rootdata::{CaseSpec, RootDatum, Variant};
pub use scalar::{q_binomial, q_factorial, q_int, IntPoly, Scalar};
pub use uqg::{Element, FreeElement, GenSymbol, NormalMonomial, Uq};
