//! Numerical toolkit for one-sided fractional calculus on the real line.
//!
//! The crate covers the Weyl and Riemann–Liouville fractional integrals, the
//! Marchaud-type one-sided fractional derivatives, the classical two-sided
//! operators expressed through them, the degenerate extension problem whose
//! weighted Neumann trace recovers the one-sided derivative, one-sided maximal
//! functions and Muckenhoupt-type weight checks, and the inversion
//! ("fractional fundamental theorem of calculus") pipeline.
//!
//! Functions are represented by [`grid::GridFunction`]: uniform samples with
//! piecewise-cubic interpolation and explicit tail models beyond both ends.

pub mod cli;
pub mod error;
pub mod extension;
pub mod fracops;
pub mod grid;
pub mod onesided;
pub mod special;
pub mod spectral;

pub use error::{FracError, Result};
pub use fracops::OperatorKind;
pub use grid::{GridFunction, QuadratureSpec, TailModel};
pub use special::Alpha;
