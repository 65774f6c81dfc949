//! Interpolation symmetric functions, N-variate big q-Jacobi polynomials and
//! their N->infinity limits, with exact rational (or Gaussian rational)
//! arithmetic throughout and an arbitrary-precision float mode for larger
//! truncated-lattice studies.
//!
//! The crate is organized around the objects it computes:
//!
//! - [`scalar`]: the exact coefficient field (rationals, Gaussian rationals)
//!   plus big floats, and exact determinants;
//! - [`partition`]: partitions, hooks, reverse tableaux, interpolation nodes;
//! - [`qseries`]: q-Pochhammer symbols and the terminating 3phi2 series;
//! - [`interp`]: the interpolation symmetric functions `I_mu` in all three
//!   representations (determinant, combinatorial, Schur expansion);
//! - [`bigq`]: big q-Jacobi polynomials, the coefficients `rho`, the limit
//!   functions `Phi_lambda` and their closed-form norms;
//! - [`measure`]: finite-N q-beta measures on truncated lattices, Gram
//!   matrices (brute force and Andreief fast path), convergence and
//!   concentration diagnostics;
//! - [`verify`]: the invariant suites driven by `qjsf verify`.

pub mod bigq;
pub mod cli;
pub mod error;
pub mod interp;
pub mod measure;
pub mod partition;
pub mod qseries;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
