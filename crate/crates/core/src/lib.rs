//! Quantum scattering of a charged particle on a rigid hoop carrying half an
//! Aharonov-Bohm flux quantum.
//!
//! The flux flips the sign of the wave function across the disc bounded by
//! the hoop, so even partial waves inside the sphere `r < R` connect to odd
//! partial waves outside it. The crate provides
//!
//! * [`model`]: parameters, channels, wavenumbers, characteristic
//!   frequencies and the effective potential;
//! * [`specfun`]: spherical Bessel/Hankel/modified functions, Legendre
//!   polynomials and half-interval overlaps;
//! * [`scattering`]: the single-channel S-inside/P-outside solver, the
//!   near-threshold resonance and the below-threshold mismatch scan;
//! * [`multichannel`]: the static-hoop matching system for an incident P
//!   wave with many open channels, and its high-energy limit;
//! * [`variational`]: Rayleigh-Ritz energies for the simple and Bessel trial
//!   families and the `N -> ∞` extrapolation;
//! * [`feasibility`]: order-of-magnitude estimates for a nanotube hoop.
//!
//! Grid evaluations go through [`parallel::par_map`], which uses rayon when
//! the `parallel` feature is on and falls back to a sequential loop
//! otherwise. Results never depend on the number of workers.

pub mod error;
pub mod feasibility;
pub mod grid;
pub mod model;
pub mod multichannel;
pub mod parallel;
pub mod quadrature;
pub mod scattering;
mod search;
pub mod specfun;
pub mod variational;

pub use error::{Error, Result};
pub use grid::{Grid, Spacing};
pub use model::{Channel, ModelParams, Region, TransitConvention};
