//! Validated numerics for the Pólya functional `λ(Ω)·T(Ω)/|Ω|` and for the
//! product `λ(Ω)·M(Ω)` on isosceles triangles, rhombi and thin convex sets.
//!
//! * [`interval`]: outward-rounded binary64 intervals, elementary function
//!   enclosures and certified constants.
//! * [`shapes`]: angle-parameterized shape families and their normalizations.
//! * [`bounds`]: interval evaluators for every closed-form bound.
//! * [`certifier`]: covering proofs over parameter ranges, with exportable
//!   certificates.
//! * [`oracle`]: non-rigorous finite-difference solvers and series references
//!   used to bracket the certified bounds.
//! * [`cli`]: the batch command surface behind the `polya` binary.

pub mod bounds;
pub mod certifier;
pub mod cli;
pub mod error;
pub mod interval;
pub mod oracle;
pub mod shapes;

pub use error::{Error, Result};
pub use interval::{constants, Interval};
