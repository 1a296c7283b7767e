//! Cyclic symmetry on the complex Grassmannian, computationally.
//!
//! The library realizes the fixed points of the (deformed) cyclic shift map
//! on Gr_{k,n}(C) in several independent ways and cross-validates them:
//! moment-curve matrices and their sine-product minors, root-set subspaces,
//! the banded-Toeplitz embedding, Schur polynomials at roots of unity, and
//! critical points of the Grassmannian superpotential. Around this core sit
//! total-positivity tests (sign variation included), the twist map with its
//! periodicity modulo the column torus, promotion on rectangular tableaux,
//! birational rowmotion, and the contraction flow exp(t sigma).
//!
//! Everything is double-precision complex arithmetic; identities are checked
//! at explicit tolerances rather than symbolically. See the `examples/`
//! directory for one runnable program per capability and the `grcyc` binary
//! for the command-line interface.

pub mod cmatrix;
pub mod cyclic;
pub mod error;
pub mod io;
pub mod laurent;
pub mod moment;
pub mod plucker;
pub mod peterson;
pub mod positivity;
pub mod rowmotion;
pub mod schur;
pub mod subset;
pub mod superpotential;
pub mod tableau;
pub mod tol;
pub mod torus;
pub mod verify;
pub mod twist;

pub use cmatrix::{C64, CMat};
pub use error::{Error, Result};
pub use plucker::{MatrixKxN, PluckerVector};
pub use tol::TolerancePolicy;
