//! Entropy- and complexity-like spreading measures of the Rakhmanov densities
//! `ρ_n = p̂_n² h` of the Hermite, Laguerre, Jacobi and Gegenbauer orthonormal
//! polynomials, their first-order asymptotics, and a harness that compares the
//! two along degree or parameter sweeps.

// Parameter guards are written `!(x > 0.0)` on purpose: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod measures;
pub mod ortho;
pub mod quadrature;
pub mod special;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
pub use ortho::{FamilyKind, PolynomialFamily};
