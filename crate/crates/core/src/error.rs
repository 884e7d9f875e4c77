use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library. Infeasible solves and sub-threshold
/// Cerenkov kinematics are ordinary results, not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("angular frequency {omega:.6e} rad/s is outside the validity band [{min:.6e}, {max:.6e}] rad/s")]
    OutOfBand { omega: f64, min: f64, max: f64 },

    #[error("Sellmeier denominator vanishes at {omega:.6e} rad/s")]
    ModelSingular { omega: f64 },

    #[error("finite-difference derivative unavailable at {omega:.6e} rad/s (too close to the table edge)")]
    DerivativeUnavailable { omega: f64 },

    #[error("group index {n_gr} is not positive at {omega:.6e} rad/s")]
    NonPositiveGroupIndex { omega: f64, n_gr: f64 },

    #[error("k(ω) is not strictly increasing over the validity band")]
    NotMonotone,

    #[error("wavenumber {k:.6e} 1/m is outside the band's range [{min:.6e}, {max:.6e}] 1/m")]
    OutOfRange { k: f64, min: f64, max: f64 },

    #[error("invalid dispersion model: {0}")]
    InvalidModel(String),

    #[error("invalid record `{name}`: {reason}")]
    InvalidRecord { name: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("mode index {index} out of range for a register with {len} modes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("register dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("state occupies mode {index}, which lies outside every declared carrier band")]
    OutsideCarrierBand { index: usize },

    #[error("wave packet violates the quasimonochromatic premise: {0}")]
    BandViolation(String),

    #[error("wave packet is not localized: {0}")]
    Delocalized(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
