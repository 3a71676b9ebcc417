//! Multi-scale maximal operators, oscillation norms, and a numerical
//! verification harness on uniform grids.
//!
//! The crate discretizes a family of cube-based averaging operators — the
//! (fractional) maximal function, its restricted and commutator variants, and
//! the sharp maximal function — on 1D/2D uniform grids, together with the
//! norms used to study them (`L^p`, mixed slice norms, mean oscillation). On
//! top of the operators sits a verification layer: exact finite-family
//! identities are asserted to near machine precision, analytic inequalities
//! are checked with pinned slacks, and norm-equivalence constants are tracked
//! across grid refinement and domain growth to exhibit boundedness or
//! blow-up empirically.
//!
//! Layering, bottom to top:
//!
//! * [`grid`] — grid functions, cube geometry, compensated prefix tables, I/O;
//! * [`operators`] — pointwise operator evaluations (reference and fast paths
//!   agree bitwise);
//! * [`norms`] — norms, exponent bookkeeping, and the symbol
//!   characterization functionals;
//! * [`verify`] — instance corpus, checks, and the deterministic suite;
//! * [`cli`] — the `maxosc` command-line driver.

pub mod cli;
pub mod error;
pub mod grid;
pub mod norms;
pub mod operators;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
