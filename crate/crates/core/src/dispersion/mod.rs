//! Refractive-index models and the kinematics derived from them: group
//! index, phase and group velocity, inversion of `k(ω)`, and the
//! weak-dispersion criterion.

mod file;
mod model;
mod table;

pub use file::{load_model, parse_model_toml, parse_table_csv, ModelFile};
pub use model::{band_from_nm, DispersionModel, ModelKind, FD_REL_STEP};
pub use table::MonotoneCubic;

use serde::Serialize;

use crate::constants::C;
use crate::roots::{self, Tolerance};
use crate::{Error, Result};

/// Default upper bound on `Δn/n` for a packet to count as weakly dispersive.
pub const DEFAULT_WEAK_DISPERSION_THRESHOLD: f64 = 0.01;

/// Number of samples in the band scan that brackets `k(ω) = k`.
pub const INVERSION_SCAN_POINTS: usize = 256;

/// Circular polarization label `s = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Helicity {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Helicity {
    pub fn value(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            _ => Err(Error::InvalidArgument(format!("helicity must be +1 or -1, got {s}"))),
        }
    }
}

/// A single optical mode evaluated at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModePoint {
    /// rad/s
    pub omega: f64,
    /// 1/m
    pub k: f64,
    pub n: f64,
    pub n_gr: f64,
    /// m/s
    pub v_ph: f64,
    /// m/s
    pub v_gr: f64,
    pub helicity: Helicity,
}

impl ModePoint {
    /// Builds a mode directly from its phase and group indices.
    pub fn from_indices(omega: f64, n: f64, n_gr: f64, helicity: Helicity) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("ω must be positive, got {omega}")));
        }
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidArgument(format!("n must be positive, got {n}")));
        }
        if !(n_gr > 0.0 && n_gr.is_finite()) {
            return Err(Error::NonPositiveGroupIndex { omega, n_gr });
        }
        Ok(ModePoint {
            omega,
            k: n * omega / C,
            n,
            n_gr,
            v_ph: C / n,
            v_gr: C / n_gr,
            helicity,
        })
    }

    /// Vacuum wavelength in nm.
    pub fn lambda_nm(&self) -> f64 {
        crate::constants::lambda_nm_from_omega(self.omega)
    }
}

/// Resolves a built-in alias (`vacuum`, `bk7`) or a model file path
/// (relative paths are taken from `base_dir`).
pub fn resolve_model(spec: &str, base_dir: &std::path::Path) -> Result<DispersionModel> {
    match spec.to_ascii_lowercase().as_str() {
        "vacuum" => Ok(DispersionModel::vacuum()),
        "bk7" => Ok(DispersionModel::bk7()),
        _ => load_model(&base_dir.join(spec)),
    }
}

/// `n(ω)`.
pub fn eval_n(model: &DispersionModel, omega: f64) -> Result<f64> {
    model.n(omega)
}

/// `dn/dω`.
pub fn eval_dn_domega(model: &DispersionModel, omega: f64) -> Result<f64> {
    model.dn_domega(omega)
}

/// Evaluates every kinematic quantity of the mode at `omega`.
pub fn mode_point(model: &DispersionModel, omega: f64, helicity: Helicity) -> Result<ModePoint> {
    let n = model.n(omega)?;
    let dn = model.dn_domega(omega)?;
    let n_gr = n + omega * dn;
    if !(n_gr > 0.0) {
        return Err(Error::NonPositiveGroupIndex { omega, n_gr });
    }
    ModePoint::from_indices(omega, n, n_gr, helicity)
}

/// Solves `n(ω)ω/c = k` for ω.
///
/// Constant models invert in closed form. Otherwise the band is scanned on
/// [`INVERSION_SCAN_POINTS`] points, `k(ω)` must be strictly increasing on
/// that grid, and the bracketing cell is bisected until it cannot be split
/// further in double precision.
pub fn invert_dispersion(model: &DispersionModel, k: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!("k must be positive, got {k}")));
    }
    let (lo, hi) = model.band();
    if let Some(n) = model.constant_index() {
        let omega = C * k / n;
        if !model.in_band(omega) {
            return Err(Error::OutOfRange {
                k,
                min: n * lo / C,
                max: n * hi / C,
            });
        }
        return Ok(omega);
    }
    let samples = roots::scan(|w| model.k(w), lo, hi, INVERSION_SCAN_POINTS)?;
    if samples.windows(2).any(|p| p[1].1 <= p[0].1) {
        return Err(Error::NotMonotone);
    }
    let (k_min, k_max) = (samples[0].1, samples[samples.len() - 1].1);
    if k < k_min || k > k_max {
        return Err(Error::OutOfRange {
            k,
            min: k_min,
            max: k_max,
        });
    }
    let shifted: Vec<(f64, f64)> = samples.iter().map(|&(w, kw)| (w, kw - k)).collect();
    let i = roots::first_sign_change(&shifted).expect("target lies within the sampled range");
    roots::bisect(|w| Ok(model.k(w)? - k), shifted[i].0, shifted[i + 1].0, Tolerance::default())
}

/// Weak-dispersion figure of merit `Δω·|dn/dω| / |n|` at `omega0`.
///
/// Both `omega0 ± delta_omega` must lie in the validity band; callers
/// compare the result against a threshold such as
/// [`DEFAULT_WEAK_DISPERSION_THRESHOLD`].
pub fn check_weak_dispersion(model: &DispersionModel, omega0: f64, delta_omega: f64) -> Result<f64> {
    if !(delta_omega >= 0.0) {
        return Err(Error::InvalidArgument(format!("Δω must be non-negative, got {delta_omega}")));
    }
    for w in [omega0 - delta_omega, omega0 + delta_omega] {
        if !model.in_band(w) {
            let (min, max) = model.band();
            return Err(Error::OutOfBand { omega: w, min, max });
        }
    }
    let n = model.n(omega0)?;
    let dn = model.dn_domega(omega0)?;
    Ok(delta_omega * dn.abs() / n.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::omega_from_lambda_nm;

    /// Central difference on `n` with relative step 1e-6, independent of the
    /// analytic derivative under test.
    fn fd_dn(model: &DispersionModel, w: f64) -> f64 {
        let h = 1e-6 * w;
        (model.n(w + h).unwrap() - model.n(w - h).unwrap()) / (2.0 * h)
    }

    /// Direct Sellmeier sum for BK7, written out independently.
    fn bk7_oracle(lambda_um: f64) -> f64 {
        let l2 = lambda_um * lambda_um;
        (1.0 + 1.03961212 * l2 / (l2 - 0.00600069867)
            + 0.231792344 * l2 / (l2 - 0.0200179144)
            + 1.01046945 * l2 / (l2 - 103.560653))
            .sqrt()
    }

    #[test]
    fn constant_models() {
        let vac = DispersionModel::vacuum();
        assert_eq!(eval_n(&vac, 1e15).unwrap(), 1.0);
        let benz = DispersionModel::constant(1.4974).unwrap();
        assert_eq!(eval_n(&benz, omega_from_lambda_nm(632.8)).unwrap(), 1.4974);
        assert_eq!(eval_dn_domega(&benz, 3e15).unwrap(), 0.0);
    }

    #[test]
    fn bk7_d_line() {
        let m = DispersionModel::bk7();
        let w = omega_from_lambda_nm(587.6);
        let n = eval_n(&m, w).unwrap();
        assert!((n - bk7_oracle(0.5876)).abs() < 1e-12);
        assert!((n - 1.5168).abs() < 1e-4);
    }

    #[test]
    fn analytic_derivatives_match_finite_difference() {
        let bk7 = DispersionModel::bk7();
        let cauchy = DispersionModel::cauchy(1.45, 0.0036, 1e-5, [400.0, 1600.0]).unwrap();
        for lnm in [450.0, 587.6, 632.8, 1064.0, 1550.0] {
            let w = omega_from_lambda_nm(lnm);
            for m in [&bk7, &cauchy] {
                let a = eval_dn_domega(m, w).unwrap();
                let fd = fd_dn(m, w);
                assert!(((a - fd) / a).abs() <= 1e-6, "{lnm} nm: {a} vs {fd}");
                assert!(a > 0.0);
            }
        }
    }

    #[test]
    fn bk7_group_index_exceeds_phase_index() {
        let m = DispersionModel::bk7();
        let mp = mode_point(&m, omega_from_lambda_nm(587.6), Helicity::Plus).unwrap();
        assert!(mp.n_gr - mp.n > 0.0);
        let fd_ngr = mp.n + mp.omega * fd_dn(&m, mp.omega);
        assert!((mp.n_gr - fd_ngr).abs() < 1e-8);
    }

    #[test]
    fn out_of_band_and_singular() {
        let m = DispersionModel::bk7();
        assert!(matches!(eval_n(&m, omega_from_lambda_nm(200.0)), Err(Error::OutOfBand { .. })));
        assert!(matches!(eval_n(&m, omega_from_lambda_nm(3000.0)), Err(Error::OutOfBand { .. })));
        // resonance at sqrt(0.0200179144) µm ≈ 141.5 nm inside a band that
        // is declared to include it
        let err = DispersionModel::sellmeier(
            [1.03961212, 0.231792344, 1.01046945],
            [0.00600069867, 0.0200179144, 103.560653],
            [120.0, 2500.0],
        );
        assert!(matches!(err, Err(Error::InvalidModel(_))));
    }

    #[test]
    fn vacuum_mode() {
        let w = omega_from_lambda_nm(500.0);
        let mp = mode_point(&DispersionModel::vacuum(), w, Helicity::Minus).unwrap();
        assert_eq!(mp.v_ph, C);
        assert_eq!(mp.v_gr, C);
        assert_eq!(mp.k, w / C);
    }

    #[test]
    fn constant_mode_at_helium_neon() {
        let m = DispersionModel::constant(1.5).unwrap();
        let mp = mode_point(&m, omega_from_lambda_nm(632.8), Helicity::Plus).unwrap();
        let k_oracle = 1.5 * 2.0 * std::f64::consts::PI / 632.8e-9;
        assert!((mp.k - k_oracle).abs() / k_oracle < 1e-14);
        assert!((mp.k - 1.4894e7).abs() < 1e3);
        assert_eq!(mp.v_gr.to_bits(), mp.v_ph.to_bits());
        assert_eq!(mp.v_gr, C / 1.5);
    }

    #[test]
    fn methanol_like_group_velocity() {
        let m = DispersionModel::cauchy_through(632.8, 1.3275, 1.34174, [400.0, 1000.0]).unwrap();
        let mp = mode_point(&m, omega_from_lambda_nm(632.8), Helicity::Plus).unwrap();
        assert!((mp.n - 1.3275).abs() < 1e-12);
        assert!((mp.n_gr - 1.34174).abs() < 1e-10);
        assert!((mp.v_gr / C - 0.74530).abs() < 5e-5);
    }

    #[test]
    fn non_positive_group_index_rejected() {
        // strongly anomalous Cauchy slope drives n + ω dn/dω negative
        let m = DispersionModel::cauchy(1.5, -1.0, 0.0, [900.0, 1100.0]).unwrap();
        let r = mode_point(&m, omega_from_lambda_nm(1000.0), Helicity::Plus);
        assert!(matches!(r, Err(Error::NonPositiveGroupIndex { .. })), "{r:?}");
    }

    #[test]
    fn inversion_closed_form_and_bk7_round_trip() {
        let w0 = 3.1e15;
        let vac = DispersionModel::vacuum();
        let w = invert_dispersion(&vac, w0 / C).unwrap();
        assert!((w - w0).abs() <= w0 * f64::EPSILON);
        let n15 = DispersionModel::constant(1.5).unwrap();
        assert_eq!(invert_dispersion(&n15, 1e7).unwrap(), C * 1e7 / 1.5);

        let bk7 = DispersionModel::bk7();
        let w = omega_from_lambda_nm(587.6);
        let mp = mode_point(&bk7, w, Helicity::Plus).unwrap();
        let back = invert_dispersion(&bk7, mp.k).unwrap();
        assert!(((back - w) / w).abs() < 1e-10);
        let residual = (bk7.k(back).unwrap() - mp.k) / mp.k;
        assert!(residual.abs() <= 1e-12);
    }

    #[test]
    fn inversion_errors() {
        let bk7 = DispersionModel::bk7();
        assert!(matches!(invert_dispersion(&bk7, 1.0), Err(Error::OutOfRange { .. })));
        // k(ω) decreasing: n rises with wavelength faster than λ
        let rows: Vec<(f64, f64)> = (0..20)
            .map(|i| {
                let l = 500.0 + 10.0 * i as f64;
                (l, 1.2 + 0.1 * i as f64)
            })
            .collect();
        let t = DispersionModel::tabulated(&rows).unwrap();
        let k_mid = t.k(omega_from_lambda_nm(590.0)).unwrap();
        assert!(matches!(invert_dispersion(&t, k_mid), Err(Error::NotMonotone)));
    }

    #[test]
    fn tabulated_derivative_at_edges() {
        let rows = [(500.0, 1.50), (600.0, 1.49), (700.0, 1.485), (800.0, 1.482)];
        let t = DispersionModel::tabulated(&rows).unwrap();
        let (lo, hi) = t.band();
        assert!(matches!(t.dn_domega(lo), Err(Error::DerivativeUnavailable { .. })));
        assert!(matches!(t.dn_domega(hi), Err(Error::DerivativeUnavailable { .. })));
        assert!(t.dn_domega(omega_from_lambda_nm(650.0)).unwrap() > 0.0);
        assert!(matches!(t.n(hi * 1.0001), Err(Error::OutOfBand { .. })));
    }

    #[test]
    fn weak_dispersion_ratio() {
        let w = omega_from_lambda_nm(632.8);
        assert_eq!(check_weak_dispersion(&DispersionModel::vacuum(), w, 0.3 * w).unwrap(), 0.0);
        let n = DispersionModel::constant(1.7).unwrap();
        assert_eq!(check_weak_dispersion(&n, w, 1e-3 * w).unwrap(), 0.0);
        let bk7 = DispersionModel::bk7();
        let r = check_weak_dispersion(&bk7, w, 1e-3 * w).unwrap();
        let oracle = 1e-3 * w * fd_dn(&bk7, w).abs() / bk7.n(w).unwrap();
        assert!((r - oracle).abs() / oracle < 1e-6);
        assert!(r < 1e-4, "ratio {r}");
        assert!(matches!(
            check_weak_dispersion(&bk7, w, 0.9 * w),
            Err(Error::OutOfBand { .. })
        ));
    }
}
