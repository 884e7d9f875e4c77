//! Energy and canonical-momentum conservation in spontaneous parametric
//! down-conversion (`ω₀ = ω₁ + ω₂`, `k₀ = k₁ + k₂`) for an isotropic scalar
//! index, plus the classical Cerenkov angle.
//!
//! Geometry is planar: the pump runs along `+z`, the signal leaves at `θ₁`
//! on the `+x` side and the idler at `θ₂` on the `−x` side.

use serde::Serialize;

use crate::dispersion::{mode_point, DispersionModel, Helicity, ModePoint};
use crate::roots::{self, Tolerance};
use crate::{Error, Result};

/// Samples in the sign-change scan of [`solve_collinear`].
pub const COLLINEAR_SCAN_POINTS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Collinear,
    PlanarNoncollinear,
}

#[derive(Debug, Clone)]
pub struct SpdcProblem {
    pub pump: ModePoint,
    pub model: DispersionModel,
    pub geometry: Geometry,
    signal_band: (f64, f64),
}

impl SpdcProblem {
    /// Pump at `omega0`. The default signal band is the widest range that
    /// keeps both signal and idler inside the model's validity band,
    /// clipped to `[0.01, 0.99]·ω₀`.
    pub fn new(model: DispersionModel, omega0: f64, geometry: Geometry) -> Result<Self> {
        let pump = mode_point(&model, omega0, Helicity::Plus)?;
        let (lo, hi) = model.band();
        // pulled in slightly so the exact energy split cannot step outside
        let s_lo = lo.max(omega0 - hi).max(0.01 * omega0) * (1.0 + 1e-12);
        let s_hi = hi.min(omega0 - lo).min(0.99 * omega0) * (1.0 - 1e-12);
        if !(s_lo < s_hi) {
            return Err(Error::OutOfBand {
                omega: 0.5 * omega0,
                min: lo,
                max: hi,
            });
        }
        Ok(SpdcProblem {
            pump,
            model,
            geometry,
            signal_band: (s_lo, s_hi),
        })
    }

    /// Narrows the signal search band. Both `ω₁` and `ω₀ − ω₁` must stay in
    /// the model band for every `ω₁` in it.
    pub fn with_signal_band(mut self, lo: f64, hi: f64) -> Result<Self> {
        let w0 = self.pump.omega;
        if !(lo > 0.0 && lo < hi && hi < w0) {
            return Err(Error::InvalidArgument(format!(
                "signal band [{lo:.6e}, {hi:.6e}] must satisfy 0 < lo < hi < ω₀"
            )));
        }
        for w in [lo, hi, w0 - lo, w0 - hi] {
            if !self.model.in_band(w) {
                let (min, max) = self.model.band();
                return Err(Error::OutOfBand { omega: w, min, max });
            }
        }
        self.signal_band = (lo, hi);
        Ok(self)
    }

    pub fn signal_band(&self) -> (f64, f64) {
        self.signal_band
    }

    fn k(&self, omega: f64) -> Result<f64> {
        self.model.k(omega)
    }
}

/// Splits the pump into `(ω₁, ω₂)` with `ω₁ + ω₂ == ω₀` exactly in floating
/// point. `ω₁` may move by at most one ulp.
pub fn split_energy(omega0: f64, omega1: f64) -> (f64, f64) {
    if omega1 <= 0.5 * omega0 {
        // ω₂ ≥ ω₀/2, so ω₀ − ω₂ is exact (Sterbenz)
        let omega2 = omega0 - omega1;
        (omega0 - omega2, omega2)
    } else {
        let (o2, o1) = split_energy(omega0, omega0 - omega1);
        (o1, o2)
    }
}

/// A phase-matched pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchSolution {
    pub omega1: f64,
    pub omega2: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// `|k₀ − k₁ − k₂|`, 1/m.
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MatchOutcome {
    Matched(MatchSolution),
    /// No phase-matched pair; the smallest mismatch found and where.
    Infeasible { min_mismatch: f64, omega1: f64 },
}

impl MatchOutcome {
    pub fn solution(&self) -> Option<&MatchSolution> {
        match self {
            MatchOutcome::Matched(s) => Some(s),
            MatchOutcome::Infeasible { .. } => None,
        }
    }
}

/// `|k₀ẑ − k₁ − k₂|` with `k₁` at angle `theta1` toward `+x` and `k₂` at
/// `theta2` toward `−x`; `ω₂ = ω₀ − ω₁`.
pub fn momentum_mismatch(problem: &SpdcProblem, omega1: f64, theta1: f64, theta2: f64) -> Result<f64> {
    let w0 = problem.pump.omega;
    if !(omega1 > 0.0 && omega1 < w0) {
        return Err(Error::InvalidArgument(format!("ω₁ must lie in (0, ω₀), got {omega1:.6e}")));
    }
    let (w1, w2) = split_energy(w0, omega1);
    let (k1, k2) = (problem.k(w1)?, problem.k(w2)?);
    let dx = -(k1 * theta1.sin()) + k2 * theta2.sin();
    let dz = problem.pump.k - k1 * theta1.cos() - k2 * theta2.cos();
    Ok(dx.hypot(dz))
}

/// Signed collinear mismatch `k₀ − k₁ − k₂`.
pub fn collinear_mismatch(problem: &SpdcProblem, omega1: f64) -> Result<f64> {
    let (w1, w2) = split_energy(problem.pump.omega, omega1);
    Ok(problem.pump.k - problem.k(w1)? - problem.k(w2)?)
}

/// Collinear mismatch sampled over the signal band, for plotting.
pub fn mismatch_curve(problem: &SpdcProblem, samples: usize) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = problem.signal_band;
    roots::scan(|w| collinear_mismatch(problem, w), lo, hi, samples.max(2))
}

fn matched(problem: &SpdcProblem, omega1: f64, theta: f64) -> Result<MatchSolution> {
    let (w1, w2) = split_energy(problem.pump.omega, omega1);
    Ok(MatchSolution {
        omega1: w1,
        omega2: w2,
        theta1: theta,
        theta2: theta,
        residual: momentum_mismatch(problem, w1, theta, theta)?,
    })
}

/// Collinear phase matching over the signal band.
///
/// Scans [`COLLINEAR_SCAN_POINTS`] values of `ω₁` for a sign change of
/// `k₀ − k₁ − k₂` and bisects the first one to `|mismatch| <= tol`. When the
/// mismatch is within `tol` everywhere (a nondispersive medium), the
/// degenerate pair `ω₁ = ω₀/2` is returned. Without a sign change the
/// minimum of `|mismatch|` is refined and reported as infeasible.
pub fn solve_collinear(problem: &SpdcProblem, tol: f64) -> Result<MatchOutcome> {
    if problem.geometry != Geometry::Collinear {
        return Err(Error::InvalidArgument("solve_collinear needs collinear geometry".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    let w0 = problem.pump.omega;
    let samples = mismatch_curve(problem, COLLINEAR_SCAN_POINTS)?;

    if samples.iter().all(|&(_, f)| f.abs() <= tol) {
        let (lo, hi) = problem.signal_band;
        let w = (0.5 * w0).clamp(lo, hi);
        return Ok(MatchOutcome::Matched(matched(problem, w, 0.0)?));
    }

    if let Some(&(w, _)) = samples.iter().find(|&&(_, f)| f.abs() <= tol) {
        return Ok(MatchOutcome::Matched(matched(problem, w, 0.0)?));
    }

    if let Some(i) = roots::first_sign_change(&samples) {
        let t = Tolerance {
            f_abs: tol,
            ..Tolerance::default()
        };
        let w = roots::bisect(|w| collinear_mismatch(problem, w), samples[i].0, samples[i + 1].0, t)?;
        let sol = matched(problem, w, 0.0)?;
        if sol.residual > tol {
            return Err(Error::InvalidArgument(format!(
                "tolerance {tol:e} 1/m is below the attainable precision ({:e} 1/m)",
                sol.residual
            )));
        }
        return Ok(MatchOutcome::Matched(sol));
    }

    let (imin, _) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.abs().total_cmp(&b.1 .1.abs()))
        .expect("scan is non-empty");
    let a = samples[imin.saturating_sub(1)].0;
    let b = samples[(imin + 1).min(samples.len() - 1)].0;
    let (w, f) = roots::golden_min(|w| Ok(collinear_mismatch(problem, w)?.abs()), a, b, 100)?;
    let (w, f) = if f <= samples[imin].1.abs() {
        (w, f)
    } else {
        (samples[imin].0, samples[imin].1.abs())
    };
    Ok(MatchOutcome::Infeasible {
        min_mismatch: f,
        omega1: w,
    })
}

/// Degenerate (`ω₁ = ω₂ = ω₀/2`) symmetric non-collinear matching:
/// `cos θ = k₀ / 2k₁`, possible only when `k₀ ≤ 2k₁`.
pub fn solve_noncollinear_degenerate(problem: &SpdcProblem, tol: f64) -> Result<MatchOutcome> {
    if problem.geometry != Geometry::PlanarNoncollinear {
        return Err(Error::InvalidArgument(
            "solve_noncollinear_degenerate needs planar non-collinear geometry".into(),
        ));
    }
    let half = 0.5 * problem.pump.omega;
    let k0 = problem.pump.k;
    let k1 = problem.k(half)?;
    if k0 > 2.0 * k1 {
        return Ok(MatchOutcome::Infeasible {
            min_mismatch: k0 - 2.0 * k1,
            omega1: half,
        });
    }
    let theta = (k0 / (2.0 * k1)).acos();
    let sol = matched(problem, half, theta)?;
    if sol.residual > tol {
        return Err(Error::InvalidArgument(format!(
            "tolerance {tol:e} 1/m is below the attainable precision ({:e} 1/m)",
            sol.residual
        )));
    }
    Ok(MatchOutcome::Matched(sol))
}

/// Result of [`cerenkov_angle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cerenkov {
    /// Emission half-angle from the particle track, rad.
    Angle { theta: f64 },
    BelowThreshold,
}

/// Recoil-free Cerenkov angle `cos θ = 1/(nβ)` for a charge moving at
/// `β = v/c` through a medium of index `n`.
pub fn cerenkov_angle(n: f64, beta: f64) -> Result<Cerenkov> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidArgument(format!("β must lie in (0, 1), got {beta}")));
    }
    if !(n >= 1.0 && n.is_finite()) {
        return Err(Error::InvalidArgument(format!("n must be at least 1, got {n}")));
    }
    let nb = n * beta;
    Ok(if nb < 1.0 {
        Cerenkov::BelowThreshold
    } else {
        Cerenkov::Angle {
            theta: (1.0 / nb).acos(),
        }
    })
}
