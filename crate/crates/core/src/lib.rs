//! Static, spherically symmetric, self-gravitating elastic matter in
//! Newtonian gravity.
//!
//! The library computes equilibrium configurations of elastic balls and
//! shells described in Euler coordinates, where the constitutive functions
//! take the form `p_rad(δ, η)` and `p_tan(δ, η)` with `δ = ρ/K` the
//! dimensionless density and `η` the dimensionless local-mass measure.
//! On top of the constitutive catalog and the hydrostatic ODE system it
//! provides:
//!
//! - builders for single balls, single shells and recursively assembled
//!   multi-body distributions of Seth elastic matter ([`bodies`]),
//! - the closed-form Seth analysis: self-similar solution, fixed points of
//!   the associated autonomous system and large-radius asymptotics
//!   ([`seth`]),
//! - calibration of the reference parameters `K` (reference density) and
//!   `S` (reference inner radius) from physical observables
//!   ([`calibration`]),
//! - variational and Lagrangian cross-checks for hyperelastic materials
//!   ([`diagnostics`]).
//!
//! Units: `G = 1`; all inputs are expected in one consistent unit system.

pub mod bodies;
pub mod calibration;
pub mod diagnostics;
pub mod equilibrium;
pub mod error;
pub mod export;
pub mod materials;
pub mod rootfind;
pub mod seth;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
