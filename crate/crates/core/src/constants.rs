//! Physical constants (CODATA 2018) and unit conversions.

use std::f64::consts::PI;

/// Speed of light in vacuum, m/s (exact).
pub const C: f64 = 2.997_924_58e8;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Vacuum permeability, H/m.
///
/// Derived from `ε₀` and `c` so that `ε₀ µ₀ c² = 1` holds to rounding; the
/// energy identities in [`crate::wavepacket`] rely on it.
pub const MU_0: f64 = 1.0 / (EPSILON_0 * C * C);

/// Angular frequency (rad/s) of light with the given vacuum wavelength (nm).
pub fn omega_from_lambda_nm(lambda_nm: f64) -> f64 {
    2.0 * PI * C / (lambda_nm * 1e-9)
}

/// Vacuum wavelength (nm) of light with the given angular frequency (rad/s).
pub fn lambda_nm_from_omega(omega: f64) -> f64 {
    2.0 * PI * C / omega * 1e9
}
