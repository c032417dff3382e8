//! Real-time response of two harmonically trapped, soft-Coulomb
//! interacting particles in one dimension to impulse probes of
//! topological charge l = 0, 1, 2.
//!
//! The homogeneous probe (l = 0) only drives the centre of mass; the
//! quadratic and cubic probes also reach the relative coordinate, so
//! internal transitions show up in the quadrupole spectrum. The crate
//! covers the separable 1D eigenproblems, exact 2D propagation, spectral
//! analysis with peak assignment, and a configuration-driven harness.

// `!(x > 0.0)` guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dynamics;
mod error;
pub mod harness;
pub mod model;
pub mod spectral;

pub use error::{Error, Result};
