//! Numerical models for electron-droplet formation.
//!
//! The crate is `no_std` and only needs `alloc`. It contains
//!
//! * [`quantities`]: CODATA 2018 constants and a small dimension-checked quantity type,
//! * [`numerics`]: generic kernels (adaptive Runge-Kutta, Gauss-Kronrod quadrature,
//!   bracketed stationary points, finite differences, cyclic Jacobi eigensolver),
//! * [`kinematics`]: particle/inerton-cloud dynamics of a single chain cell,
//! * [`lattice`]: force matrices with an additive inerton correction and phonon branches,
//! * [`cluster`]: the lattice-gas Hamiltonian, the reduced action and droplet estimates.
//!
//! IO, configuration files and the command line live in the `droplet-lab` crate.
#![no_std]
#![forbid(unsafe_code)]
// Guards such as `!(x > 0.0)` are written that way so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cluster;
mod error;
pub mod kinematics;
pub mod lattice;
pub mod numerics;
pub mod quantities;

pub use error::{Error, Result};
pub use quantities::{constants, PhysicalConstants};
