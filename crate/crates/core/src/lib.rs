//! Photon momentum in weakly dispersive, transparent dielectrics.
//!
//! The crate evaluates the canonical (`ħk`), Abraham and Minkowski
//! single-photon momenta for a dispersion model `n(ω)`, scores those
//! predictions against the Jones–Leslie radiation-pressure data, checks the
//! corresponding operator algebra on a truncated Fock space and propagates
//! classical wave packets to show energy transport at the group velocity.
//!
//! Everything is SI internally. Wavelengths in nanometres appear only at the
//! edges (model files, constructors named `*_nm`).

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dispersion;
mod error;
pub mod fock;
pub mod momentum;
pub mod phasematch;
pub mod pressure;
pub mod roots;
pub mod wavepacket;

pub use dispersion::{DispersionModel, Helicity, ModePoint};
pub use error::{Error, Result};
pub use momentum::{EqualityClass, MomentumTriple, Picture};
