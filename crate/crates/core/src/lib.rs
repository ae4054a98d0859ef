//! Geometric quantum speed limits for open quantum dynamics.
//!
//! The central quantity is
//!
//! ```text
//! T_D(rho, sigma) = ||rho - sigma|| / avg_t ||d rho_t / dt||
//! ```
//!
//! a lower bound on the time any process needs to carry `rho` to `sigma`
//! along an orbit with the given average Hilbert-Schmidt speed. It follows
//! from measuring distances as straight lines between generalized Bloch
//! vectors, which is valid for unitary, Markovian and non-Markovian
//! evolution alike.
//!
//! The crate is organized as:
//!
//! - [`state`], [`bloch`], [`metrics`]: density matrices, the generalized
//!   Bloch representation, and distance/overlap functionals.
//! - [`dynamics`]: orbit generation for unitary, Lindblad, depolarizing and
//!   joint system-environment evolution.
//! - [`speed`]: speed profiles and closed-form speed bounds.
//! - [`bounds`]: `T_D`, the bounds it is compared with, and robustness
//!   checks.
//! - [`ensembles`]: seeded random states, unitaries and generators.
//!
//! ```
//! use qsl_core::bounds::t_d;
//! use qsl_core::dynamics::{depolarizing_orbit, DepolarizingSchedule};
//! use qsl_core::speed::orbit_speed_profile;
//! use qsl_core::state::DensityMatrix;
//!
//! let rho0 = DensityMatrix::basis(2, 0)?;
//! let orbit = depolarizing_orbit(&rho0, &DepolarizingSchedule::linear(1.0, 0.0), 1.0, 100)?;
//! let speed = orbit_speed_profile(&orbit)?.average;
//! let bound = t_d(orbit.initial(), orbit.last(), speed)?;
//! assert!((bound.value - 1.0).abs() < 1e-12);
//! # Ok::<(), qsl_core::QslError>(())
//! ```

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bloch;
pub mod bounds;
pub mod dynamics;
pub mod ensembles;
mod error;
pub mod linalg;
pub mod metrics;
pub mod speed;
pub mod state;

#[cfg(doctest)]
mod book;

pub use error::{QslError, Result};
pub use linalg::ComplexMatrix;
pub use state::DensityMatrix;
