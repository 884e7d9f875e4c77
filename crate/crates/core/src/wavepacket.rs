//! Classical one-dimensional wave packets in a dispersive medium.
//!
//! The spectrum lives on a uniform grid `k_j = k₀ + (j − N/2)Δk` with
//! `Δk = 2π/L`, and the positive-frequency field on the periodic grid
//! `z_m = z_min + mL/N` is
//!
//! ```text
//! A⁺(z, t) = Σ_j (Δk/2π) A_j e^{i(k_j z − ω(k_j) t)}
//! ```
//!
//! so `A_j` is a spectral density and `Σ_m Δz |A⁺|² = (Δk/2π) Σ_j |A_j|²`.
//! Three-dimensional integrals are recovered by multiplying with a fixed
//! transverse area.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::constants::{omega_from_lambda_nm, EPSILON_0, HBAR, MU_0};
use crate::dispersion::{check_weak_dispersion, invert_dispersion, mode_point, DispersionModel, Helicity};
use crate::{Error, Result};

/// Default transverse area, m².
pub const DEFAULT_TRANSVERSE_AREA: f64 = 1e-10;

/// Half-width of the declared spectral band of a Gaussian packet, in units
/// of the rms width of `|A(k)|²`.
pub const GAUSSIAN_BAND_SIGMAS: f64 = 6.0;

/// Largest fraction of `Σ|A|²` allowed outside the declared band.
pub const MAX_OUT_OF_BAND_FRACTION: f64 = 1e-6;

/// Largest fraction of `Σ|A⁺|²` allowed within `L/8` of the wrap seam.
pub const MAX_SEAM_FRACTION: f64 = 1e-6;

/// A sampled spectrum `A_s(k)` together with the medium it propagates in.
#[derive(Debug, Clone)]
pub struct SpectralPacket {
    model: DispersionModel,
    helicity: Helicity,
    omega0: f64,
    k0: f64,
    dk: f64,
    z_min: f64,
    band_k: (f64, f64),
    transverse_area: f64,
    amplitude: Vec<Complex64>,
    omega: Vec<f64>,
    n: Vec<f64>,
    n_gr: Vec<f64>,
}

fn band_violation(e: Error) -> Error {
    match e {
        Error::OutOfBand { .. } | Error::OutOfRange { .. } | Error::NonPositiveGroupIndex { .. } => {
            Error::BandViolation(e.to_string())
        }
        other => other,
    }
}

impl SpectralPacket {
    /// Builds a packet around the carrier `omega0` on a periodic domain of
    /// length `length` (m). The grid is centered on `k₀ = k(ω₀)`, which is
    /// sample `N/2`; `band_k` is the declared spectral band in 1/m.
    pub fn new(
        model: DispersionModel,
        omega0: f64,
        length: f64,
        amplitude: Vec<Complex64>,
        band_k: (f64, f64),
    ) -> Result<Self> {
        let n_pts = amplitude.len();
        if n_pts < 2 || !n_pts.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "sample count must be a power of two ≥ 2, got {n_pts}"
            )));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidArgument(format!("domain length must be positive, got {length}")));
        }
        let k0 = model.k(omega0)?;
        let dk = 2.0 * PI / length;
        let half = (n_pts / 2) as f64;
        let (k_first, k_last) = (k0 - half * dk, k0 + (half - 1.0) * dk);
        if !(band_k.0 < band_k.1) || band_k.0 < k_first || band_k.1 > k_last {
            return Err(Error::BandViolation(format!(
                "declared band [{:e}, {:e}] 1/m is not inside the grid [{k_first:e}, {k_last:e}]",
                band_k.0, band_k.1
            )));
        }
        if k_first <= 0.0 {
            return Err(Error::BandViolation(format!("grid reaches non-positive k = {k_first:e}")));
        }
        let mut packet = SpectralPacket {
            helicity: Helicity::Plus,
            omega0,
            k0,
            dk,
            z_min: -0.25 * length,
            band_k,
            transverse_area: DEFAULT_TRANSVERSE_AREA,
            amplitude,
            omega: Vec::with_capacity(n_pts),
            n: Vec::with_capacity(n_pts),
            n_gr: Vec::with_capacity(n_pts),
            model,
        };
        for j in 0..n_pts {
            let w = invert_dispersion(&packet.model, packet.k(j)).map_err(band_violation)?;
            let p = mode_point(&packet.model, w, Helicity::Plus).map_err(band_violation)?;
            packet.omega.push(w);
            packet.n.push(p.n);
            packet.n_gr.push(p.n_gr);
        }
        let frac = packet.out_of_band_fraction();
        if frac > MAX_OUT_OF_BAND_FRACTION {
            return Err(Error::BandViolation(format!(
                "{frac:e} of the spectral power lies outside the declared band"
            )));
        }
        Ok(packet)
    }

    pub fn with_transverse_area(mut self, area: f64) -> Result<Self> {
        if !(area > 0.0 && area.is_finite()) {
            return Err(Error::InvalidArgument(format!("transverse area must be positive, got {area}")));
        }
        self.transverse_area = area;
        Ok(self)
    }

    pub fn with_helicity(mut self, helicity: Helicity) -> Self {
        self.helicity = helicity;
        self
    }

    /// Multiplies every amplitude by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        for a in &mut self.amplitude {
            *a *= factor;
        }
        self
    }

    pub fn model(&self) -> &DispersionModel {
        &self.model
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn len(&self) -> usize {
        self.amplitude.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitude.is_empty()
    }

    /// Carrier frequency, rad/s.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn dk(&self) -> f64 {
        self.dk
    }

    /// Periodic domain length `L = 2π/Δk`.
    pub fn length(&self) -> f64 {
        2.0 * PI / self.dk
    }

    pub fn z_min(&self) -> f64 {
        self.z_min
    }

    pub fn carrier_band(&self) -> (f64, f64) {
        self.band_k
    }

    pub fn transverse_area(&self) -> f64 {
        self.transverse_area
    }

    pub fn k(&self, j: usize) -> f64 {
        self.k0 + (j as f64 - (self.len() / 2) as f64) * self.dk
    }

    pub fn k_grid(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.k(j)).collect()
    }

    pub fn amplitude(&self) -> &[Complex64] {
        &self.amplitude
    }

    /// `ω(k_j)` for every sample.
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn n(&self) -> &[f64] {
        &self.n
    }

    pub fn n_gr(&self) -> &[f64] {
        &self.n_gr
    }

    pub fn out_of_band_fraction(&self) -> f64 {
        let (lo, hi) = self.band_k;
        let total: f64 = self.amplitude.iter().map(|a| a.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outside: f64 = (0..self.len())
            .filter(|&j| self.k(j) < lo || self.k(j) > hi)
            .map(|j| self.amplitude[j].norm_sqr())
            .sum();
        outside / total
    }

    fn power_weighted<F: Fn(usize) -> f64>(&self, f: F) -> f64 {
        let total: f64 = self.amplitude.iter().map(|a| a.norm_sqr()).sum();
        let s: f64 = (0..self.len()).map(|j| f(j) * self.amplitude[j].norm_sqr()).sum();
        s / total
    }

    /// rms width of ω under the weight `|A(k)|²`.
    pub fn rms_omega_width(&self) -> f64 {
        let mean = self.power_weighted(|j| self.omega[j]);
        self.power_weighted(|j| (self.omega[j] - mean).powi(2)).sqrt()
    }

    /// Group velocity averaged over `|A(k)|²`.
    pub fn mean_group_velocity(&self) -> f64 {
        self.power_weighted(|j| crate::constants::C / self.n_gr[j])
    }

    /// `Δω·|dn/dω|/n` at the carrier with Δω the rms spectral width.
    pub fn weak_dispersion_ratio(&self) -> Result<f64> {
        check_weak_dispersion(&self.model, self.omega0, self.rms_omega_width())
    }
}

/// Gaussian packet `A(k) = exp(−(k − k₀)²/(4σ_k²))` with `σ_k = δ·k₀`, so
/// `|A|²` has rms width `σ_k`. The declared band is
/// `k₀ ± GAUSSIAN_BAND_SIGMAS·σ_k` and must fit inside the grid.
pub fn make_gaussian_packet(
    model: &DispersionModel,
    lambda0_nm: f64,
    delta_k_rel: f64,
    n_samples: usize,
    length: f64,
) -> Result<SpectralPacket> {
    if !(delta_k_rel > 0.0 && delta_k_rel.is_finite()) {
        return Err(Error::InvalidArgument(format!("delta_k_rel must be positive, got {delta_k_rel}")));
    }
    let omega0 = omega_from_lambda_nm(lambda0_nm);
    let k0 = model.k(omega0)?;
    let sigma = delta_k_rel * k0;
    let band = (k0 - GAUSSIAN_BAND_SIGMAS * sigma, k0 + GAUSSIAN_BAND_SIGMAS * sigma);
    if band.0 <= 0.0 {
        return Err(Error::BandViolation(format!(
            "spectral width {delta_k_rel} of k₀ puts the band below k = 0"
        )));
    }
    let dk = 2.0 * PI / length;
    let half = (n_samples / 2) as f64;
    let amplitude = (0..n_samples)
        .map(|j| {
            let x = (j as f64 - half) * dk;
            Complex64::new((-x * x / (4.0 * sigma * sigma)).exp(), 0.0)
        })
        .collect();
    SpectralPacket::new(model.clone(), omega0, length, amplitude, band)
}

/// Domain length whose k-grid spans `±span_sigmas·σ_k` around the carrier.
pub fn domain_length_for(model: &DispersionModel, lambda0_nm: f64, delta_k_rel: f64, n_samples: usize, span_sigmas: f64) -> Result<f64> {
    let k0 = model.k(omega_from_lambda_nm(lambda0_nm))?;
    let sigma = delta_k_rel * k0;
    Ok(PI * n_samples as f64 / (span_sigmas * sigma))
}

/// The positive-frequency field on the z-grid at one instant.
#[derive(Debug, Clone, Serialize)]
pub struct PacketSnapshot {
    /// s
    pub time: f64,
    /// m
    pub z_min: f64,
    /// m
    pub dz: f64,
    /// V·s/m
    #[serde(skip)]
    pub field: Vec<Complex64>,
    /// Intensity centroid, wrapped into `[z_min, z_min + L)`; NaN for a
    /// zero field.
    pub centroid: f64,
    /// rms width of `|A⁺|²` about the centroid, m
    pub spread: f64,
    /// Fraction of `Σ|A⁺|²` within `L/8` of the seam opposite the peak.
    pub seam_fraction: f64,
    /// Spectral energy recomputed from this field, J
    pub energy: f64,
}

impl PacketSnapshot {
    pub fn len(&self) -> usize {
        self.field.len()
    }

    pub fn is_empty(&self) -> bool {
        self.field.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.dz * self.field.len() as f64
    }

    pub fn z(&self, m: usize) -> f64 {
        self.z_min + m as f64 * self.dz
    }

    pub fn z_grid(&self) -> Vec<f64> {
        (0..self.len()).map(|m| self.z(m)).collect()
    }

    /// The centroid, provided the packet is well localized: rms spread
    /// below `L/4`, centroid at least `L/8` from the seam, and no more than
    /// [`MAX_SEAM_FRACTION`] of the intensity near the seam.
    pub fn localized_centroid(&self) -> Result<f64> {
        let l = self.length();
        if !self.centroid.is_finite() {
            return Err(Error::Delocalized("field is zero".into()));
        }
        if self.spread >= 0.25 * l {
            return Err(Error::Delocalized(format!("spread {:e} m exceeds L/4 = {:e} m", self.spread, 0.25 * l)));
        }
        if self.seam_fraction > MAX_SEAM_FRACTION {
            return Err(Error::Delocalized(format!(
                "{:e} of the intensity lies within L/8 of the wrap seam",
                self.seam_fraction
            )));
        }
        Ok(self.centroid)
    }
}

struct Localization {
    centroid: f64,
    spread: f64,
    seam_fraction: f64,
}

/// Centroid in a window of width L centered on the intensity peak, which
/// unwraps packets that straddle the grid seam.
fn localize(field: &[Complex64], z_min: f64, dz: f64) -> Localization {
    let n = field.len();
    let dens: Vec<f64> = field.iter().map(|a| a.norm_sqr()).collect();
    let total: f64 = dens.iter().sum();
    if total == 0.0 {
        return Localization {
            centroid: f64::NAN,
            spread: f64::NAN,
            seam_fraction: f64::NAN,
        };
    }
    let peak = (0..n).fold(0, |best, m| if dens[m] > dens[best] { m } else { best });
    let half = (n / 2) as isize;
    let offsets = || (-half..half).map(|o| (o, dens[(peak as isize + o).rem_euclid(n as isize) as usize]));
    let mean_off = offsets().map(|(o, d)| o as f64 * d).sum::<f64>() / total;
    let var = offsets().map(|(o, d)| (o as f64 - mean_off).powi(2) * d).sum::<f64>() / total;
    let seam = offsets()
        .filter(|&(o, _)| o.unsigned_abs() >= 3 * n / 8)
        .map(|(_, d)| d)
        .sum::<f64>()
        / total;
    let l = dz * n as f64;
    let c = z_min + (peak as f64 + mean_off) * dz;
    Localization {
        centroid: z_min + (c - z_min).rem_euclid(l),
        spread: var.sqrt() * dz,
        seam_fraction: seam,
    }
}

fn synthesize(packet: &SpectralPacket, coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len();
    let h = packet.length() / n as f64;
    let mut buf: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .map(|(j, &b)| b * Complex64::from_polar(1.0, packet.k(j) * packet.z_min))
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let scale = packet.dk / (2.0 * PI);
    buf.iter()
        .enumerate()
        .map(|(m, &d)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            d * Complex64::from_polar(scale * sign, packet.k0 * m as f64 * h)
        })
        .collect()
}

fn analyze(packet: &SpectralPacket, field: &[Complex64]) -> Vec<Complex64> {
    let n = field.len();
    let h = packet.length() / n as f64;
    let scale = 2.0 * PI / packet.dk / n as f64;
    let mut buf: Vec<Complex64> = field
        .iter()
        .enumerate()
        .map(|(m, &a)| {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            a * Complex64::from_polar(scale * sign, -packet.k0 * m as f64 * h)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter()
        .enumerate()
        .map(|(j, &c)| c * Complex64::from_polar(1.0, -packet.k(j) * packet.z_min))
        .collect()
}

fn check_snapshot(snapshot: &PacketSnapshot, packet: &SpectralPacket) -> Result<()> {
    let ok = snapshot.len() == packet.len()
        && snapshot.z_min == packet.z_min
        && (snapshot.dz - packet.length() / packet.len() as f64).abs() <= 1e-12 * snapshot.dz;
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument("snapshot was not produced from this packet's grid".into()))
    }
}

/// Spectral coefficients `A_j e^{−iω_j t}` recovered from a snapshot.
pub fn recover_spectrum(snapshot: &PacketSnapshot, packet: &SpectralPacket) -> Result<Vec<Complex64>> {
    check_snapshot(snapshot, packet)?;
    Ok(analyze(packet, &snapshot.field))
}

fn spectral_energy_of(packet: &SpectralPacket, coeffs: &[Complex64]) -> f64 {
    let s: f64 = (0..packet.len())
        .map(|j| packet.omega[j].powi(2) * packet.n[j] * packet.n_gr[j] * coeffs[j].norm_sqr())
        .sum();
    2.0 * EPSILON_0 * packet.transverse_area * packet.dk / (2.0 * PI) * s
}

/// Evolves the spectrum to time `t` and transforms to z-space.
pub fn propagate(packet: &SpectralPacket, t: f64) -> Result<PacketSnapshot> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("propagation time must be ≥ 0, got {t}")));
    }
    let coeffs: Vec<Complex64> = packet
        .amplitude
        .iter()
        .zip(&packet.omega)
        .map(|(&a, &w)| a * Complex64::from_polar(1.0, -w * t))
        .collect();
    let field = synthesize(packet, &coeffs);
    let dz = packet.length() / packet.len() as f64;
    let loc = localize(&field, packet.z_min, dz);
    let energy = spectral_energy_of(packet, &analyze(packet, &field));
    Ok(PacketSnapshot {
        time: t,
        z_min: packet.z_min,
        dz,
        field,
        centroid: loc.centroid,
        spread: loc.spread,
        seam_fraction: loc.seam_fraction,
        energy,
    })
}

pub fn centroid(snapshot: &PacketSnapshot) -> Result<f64> {
    snapshot.localized_centroid()
}

/// `(z̄(t₂) − z̄(t₁))/(t₂ − t₁)`. Whole periods of wrap-around are resolved
/// with the branch closest to the mean group velocity of the spectrum.
pub fn centroid_velocity(packet: &SpectralPacket, t1: f64, t2: f64) -> Result<f64> {
    if !(t2 > t1) {
        return Err(Error::InvalidArgument(format!("need t2 > t1, got {t1} and {t2}")));
    }
    let z1 = propagate(packet, t1)?.localized_centroid()?;
    let z2 = propagate(packet, t2)?.localized_centroid()?;
    let dt = t2 - t1;
    let l = packet.length();
    let raw = z2 - z1;
    let wraps = ((packet.mean_group_velocity() * dt - raw) / l).round();
    Ok((raw + wraps * l) / dt)
}

/// `U = 2ε₀·area·(Δk/2π)·Σ_j ω_j² n_j n_gr,j |A_j|²`.
pub fn energy_spectral(packet: &SpectralPacket) -> f64 {
    spectral_energy_of(packet, &packet.amplitude)
}

/// Period-averaged energy `∫ [d(ωε)/dω|_{ω₀} |E⁺|² + |B⁺|²/µ₀] dz · area`
/// with `E⁺ = iωA⁺` and `B⁺ = ikA⁺` taken spectrally.
pub fn energy_realspace(snapshot: &PacketSnapshot, packet: &SpectralPacket) -> Result<f64> {
    let coeffs = recover_spectrum(snapshot, packet)?;
    let n0 = packet.model.n(packet.omega0)?;
    let dn0 = packet.model.dn_domega(packet.omega0)?;
    let d_omega_eps = EPSILON_0 * (n0 * n0 + 2.0 * n0 * packet.omega0 * dn0);
    let i = Complex64::new(0.0, 1.0);
    let e_spec: Vec<Complex64> = (0..packet.len()).map(|j| i * packet.omega[j] * coeffs[j]).collect();
    let b_spec: Vec<Complex64> = (0..packet.len()).map(|j| i * packet.k(j) * coeffs[j]).collect();
    let e = synthesize(packet, &e_spec);
    let b = synthesize(packet, &b_spec);
    let u: f64 = e
        .iter()
        .zip(&b)
        .map(|(e, b)| d_omega_eps * e.norm_sqr() + b.norm_sqr() / MU_0)
        .sum();
    Ok(u * snapshot.dz * packet.transverse_area)
}

/// Mean photon number per bin, `N_j = |α_j|²·area·Δk/2π` with
/// `|α_j|² = 2ε₀ n ω n_gr |A_j|²/ħ`, so that `Σ ħω_j N_j` is the spectral
/// energy.
pub fn normalize_to_quanta(packet: &SpectralPacket) -> Vec<f64> {
    let bin = packet.transverse_area * packet.dk / (2.0 * PI);
    (0..packet.len())
        .map(|j| {
            let alpha2 = 2.0 * EPSILON_0 * packet.n[j] * packet.omega[j] * packet.n_gr[j] * packet.amplitude[j].norm_sqr() / HBAR;
            alpha2 * bin
        })
        .collect()
}

/// Rescales the packet so that its mean photon number is `photons`.
pub fn scale_to_photon_number(packet: SpectralPacket, photons: f64) -> Result<SpectralPacket> {
    let total: f64 = normalize_to_quanta(&packet).iter().sum();
    if total == 0.0 {
        return Err(Error::InvalidArgument("cannot rescale a zero packet".into()));
    }
    Ok(packet.scaled((photons / total).sqrt()))
}
