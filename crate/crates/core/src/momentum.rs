use std::fmt;

use nalgebra::{Unit, Vector3};
use serde::Serialize;

use crate::constants::{C, HBAR};
use crate::dispersion::ModePoint;

/// Which momentum is assigned to a dressed photon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Canonical,
    Abraham,
    Minkowski,
}

impl Picture {
    pub const ALL: [Picture; 3] = [Picture::Canonical, Picture::Abraham, Picture::Minkowski];

    /// Factor `w` with `p = w·ħk`: 1, `v_gr v_ph / c²` and `v_gr / v_ph`.
    pub fn weight(self, mode: &ModePoint) -> f64 {
        match self {
            Picture::Canonical => 1.0,
            Picture::Abraham => mode.v_gr * mode.v_ph / (C * C),
            Picture::Minkowski => mode.v_gr / mode.v_ph,
        }
    }
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Picture::Canonical => "canonical",
            Picture::Abraham => "abraham",
            Picture::Minkowski => "minkowski",
        })
    }
}

/// Single-photon momenta (kg·m/s, signed along `direction`) and effective
/// masses (kg) for one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumTriple {
    pub p_can: f64,
    pub p_abraham: f64,
    pub p_minkowski: f64,
    pub m_eff_abraham: f64,
    pub m_eff_minkowski: f64,
    #[serde(skip)]
    pub direction: Unit<Vector3<f64>>,
    pub mode: ModePoint,
}

impl MomentumTriple {
    pub fn get(&self, picture: Picture) -> f64 {
        match picture {
            Picture::Canonical => self.p_can,
            Picture::Abraham => self.p_abraham,
            Picture::Minkowski => self.p_minkowski,
        }
    }

    /// Momentum vector in the given picture.
    pub fn vector(&self, picture: Picture) -> Vector3<f64> {
        self.direction.into_inner() * self.get(picture)
    }
}

/// Momenta for a photon travelling along `+z`.
pub fn momentum_triple(mode: &ModePoint) -> MomentumTriple {
    momentum_triple_along(mode, Vector3::z_axis())
}

pub fn momentum_triple_along(mode: &ModePoint, direction: Unit<Vector3<f64>>) -> MomentumTriple {
    let hbar_k = HBAR * mode.k;
    let p_abraham = Picture::Abraham.weight(mode) * hbar_k;
    let p_minkowski = Picture::Minkowski.weight(mode) * hbar_k;
    MomentumTriple {
        p_can: hbar_k,
        p_abraham,
        p_minkowski,
        m_eff_abraham: HBAR * mode.omega / (C * C),
        m_eff_minkowski: mode.n * mode.n * HBAR * mode.omega / (C * C),
        direction,
        mode: *mode,
    }
}

/// Abraham momentum of one photon obtained from its energy flux instead of
/// from `ħk`: energy `ħω` carried at `v_gr`, divided by `c²`. For `µ = µ₀`
/// the `ε₀⟨E×B⟩` density integrates to this same quantity.
pub fn abraham_from_energy_flux(mode: &ModePoint) -> f64 {
    HBAR * mode.omega * mode.v_gr / (C * C)
}

/// Relationship among the three momenta at a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityClass {
    AllEqual,
    CanEqualsMinkowski,
    CanEqualsAbraham,
    AllDistinct,
}

pub const DEFAULT_EQUALITY_TOL: f64 = 1e-9;

/// Decides which of the momenta coincide at `mode`, to relative tolerance
/// `tol`. Checked in order: all equal (vacuum-like), canonical = Minkowski
/// (no dispersion), canonical = Abraham (`v_gr v_ph = c²`).
pub fn classify_equalities(mode: &ModePoint, tol: f64) -> EqualityClass {
    debug_assert!(tol > 0.0 && tol < 0.1);
    let nondispersive = (mode.n_gr - mode.n).abs() <= tol * mode.n;
    if (mode.n - 1.0).abs() <= tol && (mode.n_gr - mode.n).abs() <= tol {
        EqualityClass::AllEqual
    } else if nondispersive {
        EqualityClass::CanEqualsMinkowski
    } else if (mode.v_gr * mode.v_ph - C * C).abs() <= tol * C * C {
        EqualityClass::CanEqualsAbraham
    } else {
        EqualityClass::AllDistinct
    }
}

/// `p_A / (ħω v_gr)`, which equals `1/c²` for every mode.
pub fn planck_inertia_ratio(triple: &MomentumTriple) -> f64 {
    triple.p_abraham / (HBAR * triple.mode.omega * triple.mode.v_gr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::omega_from_lambda_nm;
    use crate::dispersion::{mode_point, DispersionModel, Helicity};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn vacuum_momenta_are_equal() {
        let w = omega_from_lambda_nm(632.8);
        let mp = mode_point(&DispersionModel::vacuum(), w, Helicity::Plus).unwrap();
        let t = momentum_triple(&mp);
        let oracle = 1.054571817e-34 * 2.0 * std::f64::consts::PI / 632.8e-9;
        assert!(rel(t.p_can, oracle) < 1e-14);
        assert!((t.p_can - 1.047e-27).abs() < 1e-30);
        assert_eq!(t.p_can, t.p_abraham);
        assert_eq!(t.p_can, t.p_minkowski);
        assert_eq!(classify_equalities(&mp, DEFAULT_EQUALITY_TOL), EqualityClass::AllEqual);
        assert_eq!(planck_inertia_ratio(&t), 1.0 / (C * C));
    }

    #[test]
    fn nondispersive_medium() {
        let w = omega_from_lambda_nm(800.0);
        let mp = mode_point(&DispersionModel::constant(1.5).unwrap(), w, Helicity::Plus).unwrap();
        let t = momentum_triple(&mp);
        assert!(rel(t.p_minkowski, 1.5 * HBAR * w / C) < 1e-15);
        assert!(rel(t.p_can, 1.5 * HBAR * w / C) < 1e-15);
        assert!(rel(t.p_abraham, HBAR * w / (1.5 * C)) < 1e-15);
        assert_eq!(classify_equalities(&mp, DEFAULT_EQUALITY_TOL), EqualityClass::CanEqualsMinkowski);
        assert!(rel(planck_inertia_ratio(&t), 1.0 / (C * C)) < 1e-15);
    }

    #[test]
    fn benzene_like_mode() {
        let mp = ModePoint::from_indices(omega_from_lambda_nm(632.8), 1.4974, 1.54440, Helicity::Plus)
            .unwrap();
        let t = momentum_triple(&mp);
        let ratio = t.p_minkowski / t.p_abraham;
        assert!(rel(ratio, 1.4974 * 1.4974) < 1e-14);
        assert!((ratio - 2.24221).abs() < 1e-5);
        assert_eq!(classify_equalities(&mp, DEFAULT_EQUALITY_TOL), EqualityClass::AllDistinct);
    }

    #[test]
    fn abraham_equals_canonical_special_case() {
        // n·n_gr = 1 gives v_gr v_ph = c²
        let mp = ModePoint::from_indices(2e15, 1.25, 0.8, Helicity::Plus).unwrap();
        assert_eq!(classify_equalities(&mp, 1e-9), EqualityClass::CanEqualsAbraham);
        let t = momentum_triple(&mp);
        assert!(rel(t.p_abraham, t.p_can) < 1e-14);
    }

    #[test]
    fn effective_masses() {
        let bk7 = DispersionModel::bk7();
        let w = omega_from_lambda_nm(587.6);
        let mp = mode_point(&bk7, w, Helicity::Minus).unwrap();
        let t = momentum_triple(&mp);
        assert!(rel(t.m_eff_abraham, HBAR * w / (C * C)) < 1e-14);
        assert!(rel(t.m_eff_minkowski, mp.n * mp.n * HBAR * w / (C * C)) < 1e-14);
        assert!(rel(planck_inertia_ratio(&t), 1.0 / (C * C)) < 1e-14);
        assert!(rel(abraham_from_energy_flux(&mp), t.p_abraham) < 1e-14);
    }

    #[test]
    fn abraham_mass_ignores_the_medium() {
        let w = omega_from_lambda_nm(700.0);
        let masses: Vec<f64> = [(1.0, 1.0), (1.33, 1.35), (1.5, 1.6), (2.4, 2.9)]
            .iter()
            .map(|&(n, ng)| {
                momentum_triple(&ModePoint::from_indices(w, n, ng, Helicity::Plus).unwrap())
                    .m_eff_abraham
            })
            .collect();
        for m in &masses {
            assert!(rel(*m, masses[0]) < 1e-15);
        }
    }

    #[test]
    fn minkowski_approaches_canonical_linearly() {
        let lnm = 633.0;
        let w = omega_from_lambda_nm(lnm);
        for b in [1e-3, 1e-4, 1e-5, 1e-6] {
            let m = DispersionModel::cauchy(1.45, b, 0.0, [400.0, 1000.0]).unwrap();
            let mp = mode_point(&m, w, Helicity::Plus).unwrap();
            let t = momentum_triple(&mp);
            let gap = (t.p_minkowski - t.p_can).abs() / t.p_can;
            let small = w * m.dn_domega(w).unwrap() / mp.n;
            // gap = (ω n'/n)/(1 + ω n'/n) exactly, so the ratio tends to 1
            assert!((gap / small - 1.0).abs() < 2.0 * small + 1e-9, "B={b}: {gap} vs {small}");
        }
    }

    #[test]
    fn vector_form() {
        let mp = ModePoint::from_indices(2e15, 1.5, 1.55, Helicity::Plus).unwrap();
        let t = momentum_triple_along(&mp, Unit::new_normalize(Vector3::new(1.0, 1.0, 0.0)));
        let v = t.vector(Picture::Canonical);
        assert!((v.norm() - t.p_can).abs() / t.p_can < 1e-15);
        assert!((v.x - v.y).abs() < 1e-40);
        for p in Picture::ALL {
            assert!(rel(t.get(p), p.weight(&mp) * HBAR * mp.k) < 1e-15);
        }
    }
}
