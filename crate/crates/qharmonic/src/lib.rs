//! Harmonic analysis on the q-lattice `R_q = {±q^n} ∪ {0}`.
//!
//! Functions are even and stored on a finite window of exponents (see [`LatticeFunction`]).
//! The crate provides the normalized q-Bessel function `j_alpha(x; q^2)`, the q-Bessel
//! Fourier transform and generalized translation, continuous q-wavelet transforms, and
//! the q-Riemann-Liouville and q-Weyl operators with their inverses.

pub mod error;
pub mod fractional;
pub mod harmonic;
pub mod lattice;
pub mod special;
pub mod verify;
pub mod wavelet;

pub use error::{DomainWarning, QError, Result};
pub use lattice::{LatticeFunction, LatticeGrid, QContext, Role};
