//! Quantized number theory at desk scale.
//!
//! A multiset of zeros (or poles) becomes a diagonal operator whose
//! regularized determinants rebuild the function it came from: rational
//! functions, `Gamma`, `xi`, `zeta`, zeta functions of curves over finite
//! fields, and finite-order entire functions via Hadamard factorization.
//! Every reconstruction is checked against an independent oracle.

pub mod bergman;
pub mod cli;
pub mod error;
pub mod factors;
pub mod ffcurves;
pub mod opmodel;
pub mod par;
mod quad;
pub mod recon;
pub mod regdet;
pub mod report;
pub mod special;
pub mod suite;

pub use error::{Error, Result};
pub use num_complex::Complex64;
