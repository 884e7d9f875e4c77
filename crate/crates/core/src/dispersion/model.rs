use std::fmt;

use super::table::MonotoneCubic;
use crate::constants::{lambda_nm_from_omega, omega_from_lambda_nm};
use crate::{Error, Result};

/// Which functional form a [`DispersionModel`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Constant,
    Cauchy,
    Sellmeier,
    Tabulated,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Constant => "constant",
            ModelKind::Cauchy => "cauchy",
            ModelKind::Sellmeier => "sellmeier",
            ModelKind::Tabulated => "tabulated",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Form {
    Constant(f64),
    /// `n = A + B/λ² + C/λ⁴`, λ in µm.
    Cauchy([f64; 3]),
    /// `n² = 1 + Σ Bᵢλ²/(λ² − Cᵢ)`, λ in µm, Cᵢ in µm².
    Sellmeier { b: [f64; 3], c: [f64; 3] },
    /// `n(ω)` on strictly increasing ω samples.
    Tabulated(MonotoneCubic),
}

/// Real refractive index `n(ω)` of an isotropic, nonmagnetic, transparent
/// medium over a closed validity band of angular frequencies.
///
/// Models are immutable once built; every evaluation outside the band is an
/// error rather than an extrapolation.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionModel {
    name: String,
    form: Form,
    band: (f64, f64),
}

/// Relative step of the central difference used for tabulated models.
pub const FD_REL_STEP: f64 = 1e-6;

fn lambda_um(omega: f64) -> f64 {
    lambda_nm_from_omega(omega) * 1e-3
}

/// Converts a vacuum-wavelength band in nm (either order) to rad/s.
pub fn band_from_nm(band_nm: [f64; 2]) -> Result<(f64, f64)> {
    let (a, b) = (band_nm[0], band_nm[1]);
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) || a == b {
        return Err(Error::InvalidModel(format!(
            "band_nm must be two distinct positive wavelengths, got [{a}, {b}]"
        )));
    }
    let (w1, w2) = (omega_from_lambda_nm(a), omega_from_lambda_nm(b));
    Ok((w1.min(w2), w1.max(w2)))
}

impl DispersionModel {
    /// Frequency-independent index; valid for every ω > 0.
    pub fn constant(n: f64) -> Result<Self> {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidModel(format!("constant index must be positive, got {n}")));
        }
        Ok(DispersionModel {
            name: format!("constant n={n}"),
            form: Form::Constant(n),
            band: (0.0, f64::INFINITY),
        })
    }

    pub fn vacuum() -> Self {
        DispersionModel {
            name: "vacuum".into(),
            form: Form::Constant(1.0),
            band: (0.0, f64::INFINITY),
        }
    }

    /// Cauchy model `n = A + B/λ² + C/λ⁴` with λ in µm.
    pub fn cauchy(a: f64, b: f64, c: f64, band_nm: [f64; 2]) -> Result<Self> {
        if ![a, b, c].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidModel("Cauchy coefficients must be finite".into()));
        }
        let m = DispersionModel {
            name: format!("cauchy A={a} B={b} C={c}"),
            form: Form::Cauchy([a, b, c]),
            band: band_from_nm(band_nm)?,
        };
        m.check_positive_on_band()?;
        Ok(m)
    }

    /// Two-term Cauchy model passing through a prescribed phase index `n`
    /// and group index `n_gr` at `lambda_nm`.
    ///
    /// With `n = A + B/λ²` the group index is `n + 2B/λ²`, so both
    /// coefficients follow in closed form.
    pub fn cauchy_through(lambda_nm: f64, n: f64, n_gr: f64, band_nm: [f64; 2]) -> Result<Self> {
        let l2 = (lambda_nm * 1e-3).powi(2);
        let b = 0.5 * (n_gr - n) * l2;
        let a = n - b / l2;
        Self::cauchy(a, b, 0.0, band_nm)
    }

    /// Three-term Sellmeier model with λ in µm and `c` in µm².
    pub fn sellmeier(b: [f64; 3], c: [f64; 3], band_nm: [f64; 2]) -> Result<Self> {
        if !b.iter().chain(&c).all(|v| v.is_finite()) {
            return Err(Error::InvalidModel("Sellmeier coefficients must be finite".into()));
        }
        let band = band_from_nm(band_nm)?;
        for &ci in &c {
            if ci > 0.0 {
                let pole = omega_from_lambda_nm(ci.sqrt() * 1e3);
                if pole >= band.0 && pole <= band.1 {
                    return Err(Error::InvalidModel(format!(
                        "Sellmeier resonance at {:.3} nm lies inside the validity band",
                        ci.sqrt() * 1e3
                    )));
                }
            }
        }
        let m = DispersionModel {
            name: "sellmeier".into(),
            form: Form::Sellmeier { b, c },
            band,
        };
        m.check_positive_on_band()?;
        Ok(m)
    }

    /// Schott N-BK7 borosilicate crown, valid 300–2500 nm.
    pub fn bk7() -> Self {
        let mut m = Self::sellmeier(
            [1.039_612_12, 0.231_792_344, 1.010_469_45],
            [0.006_000_698_67, 0.020_017_914_4, 103.560_653],
            [300.0, 2500.0],
        )
        .expect("BK7 coefficients are valid");
        m.name = "bk7".into();
        m
    }

    /// Tabulated model from `(vacuum wavelength nm, n)` rows in any order.
    /// The validity band is the table's own span.
    pub fn tabulated(rows: &[(f64, f64)]) -> Result<Self> {
        let mut pts: Vec<(f64, f64)> = rows
            .iter()
            .map(|&(lnm, n)| {
                if !(lnm > 0.0 && lnm.is_finite()) {
                    return Err(Error::InvalidModel(format!("bad wavelength {lnm} nm in table")));
                }
                if !(n > 0.0 && n.is_finite()) {
                    return Err(Error::InvalidModel(format!("bad index {n} in table")));
                }
                Ok((omega_from_lambda_nm(lnm), n))
            })
            .collect::<Result<_>>()?;
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (w, n): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let table = MonotoneCubic::new(w, n)?;
        let band = (table.first(), table.last());
        let m = DispersionModel {
            name: "tabulated".into(),
            form: Form::Tabulated(table),
            band,
        };
        m.check_positive_on_band()?;
        Ok(m)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Restricts the validity band (given in nm) to its intersection with
    /// the current band.
    pub fn restrict_band_nm(mut self, band_nm: [f64; 2]) -> Result<Self> {
        let (lo, hi) = band_from_nm(band_nm)?;
        let lo = lo.max(self.band.0);
        let hi = hi.min(self.band.1);
        if lo >= hi {
            return Err(Error::InvalidModel("requested band does not overlap the model's band".into()));
        }
        self.band = (lo, hi);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ModelKind {
        match self.form {
            Form::Constant(_) => ModelKind::Constant,
            Form::Cauchy(_) => ModelKind::Cauchy,
            Form::Sellmeier { .. } => ModelKind::Sellmeier,
            Form::Tabulated(_) => ModelKind::Tabulated,
        }
    }

    /// Coefficients in the file layout: `[n]`, `[A, B, C]`,
    /// `[B1, B2, B3, C1, C2, C3]`; empty for tables.
    pub fn coefficients(&self) -> Vec<f64> {
        match &self.form {
            Form::Constant(n) => vec![*n],
            Form::Cauchy(c) => c.to_vec(),
            Form::Sellmeier { b, c } => b.iter().chain(c).copied().collect(),
            Form::Tabulated(_) => Vec::new(),
        }
    }

    /// The constant index, if this is a constant model.
    pub fn constant_index(&self) -> Option<f64> {
        match self.form {
            Form::Constant(n) => Some(n),
            _ => None,
        }
    }

    /// Validity band `[ω_min, ω_max]` in rad/s. Constant models span `(0, ∞)`.
    pub fn band(&self) -> (f64, f64) {
        self.band
    }

    pub fn in_band(&self, omega: f64) -> bool {
        omega > 0.0 && omega.is_finite() && omega >= self.band.0 && omega <= self.band.1
    }

    fn require_in_band(&self, omega: f64) -> Result<()> {
        if self.in_band(omega) {
            Ok(())
        } else {
            Err(Error::OutOfBand {
                omega,
                min: self.band.0,
                max: self.band.1,
            })
        }
    }

    /// Refractive index at `omega` (rad/s).
    pub fn n(&self, omega: f64) -> Result<f64> {
        self.require_in_band(omega)?;
        self.n_unchecked(omega)
    }

    fn n_unchecked(&self, omega: f64) -> Result<f64> {
        let n = match &self.form {
            Form::Constant(n) => *n,
            Form::Cauchy([a, b, c]) => {
                let l2 = lambda_um(omega).powi(2);
                a + b / l2 + c / (l2 * l2)
            }
            Form::Sellmeier { b, c } => {
                let l2 = lambda_um(omega).powi(2);
                let mut n2 = 1.0;
                for (bi, ci) in b.iter().zip(c) {
                    let den = l2 - ci;
                    if den == 0.0 {
                        return Err(Error::ModelSingular { omega });
                    }
                    n2 += bi * l2 / den;
                }
                if n2 <= 0.0 {
                    return Err(Error::InvalidModel(format!("n² = {n2} ≤ 0 at ω = {omega:.6e} rad/s")));
                }
                n2.sqrt()
            }
            Form::Tabulated(t) => t.eval(omega).ok_or(Error::OutOfBand {
                omega,
                min: self.band.0,
                max: self.band.1,
            })?,
        };
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidModel(format!("n = {n} at ω = {omega:.6e} rad/s")));
        }
        Ok(n)
    }

    /// `dn/dω` in s/rad. Analytic except for tabulated models, which use a
    /// central difference with step `1e-6·ω` and fail near the table edges.
    pub fn dn_domega(&self, omega: f64) -> Result<f64> {
        self.require_in_band(omega)?;
        match &self.form {
            Form::Constant(_) => Ok(0.0),
            Form::Cauchy([_, b, c]) => {
                let l2 = lambda_um(omega).powi(2);
                Ok((2.0 * b / l2 + 4.0 * c / (l2 * l2)) / omega)
            }
            Form::Sellmeier { b, c } => {
                let n = self.n_unchecked(omega)?;
                let l2 = lambda_um(omega).powi(2);
                let mut s = 0.0;
                for (bi, ci) in b.iter().zip(c) {
                    let den = l2 - ci;
                    if den == 0.0 {
                        return Err(Error::ModelSingular { omega });
                    }
                    s += bi * l2 * ci / (den * den);
                }
                Ok(s / (n * omega))
            }
            Form::Tabulated(_) => {
                let h = FD_REL_STEP * omega;
                let (lo, hi) = (omega - h, omega + h);
                if !self.in_band(lo) || !self.in_band(hi) {
                    return Err(Error::DerivativeUnavailable { omega });
                }
                Ok((self.n_unchecked(hi)? - self.n_unchecked(lo)?) / (hi - lo))
            }
        }
    }

    /// `k(ω) = n(ω)ω/c` in 1/m.
    pub fn k(&self, omega: f64) -> Result<f64> {
        Ok(self.n(omega)? * omega / crate::constants::C)
    }

    fn check_positive_on_band(&self) -> Result<()> {
        if !self.band.1.is_finite() {
            return Ok(());
        }
        let (lo, hi) = self.band;
        for i in 0..=64 {
            let w = (lo + (hi - lo) * i as f64 / 64.0).min(hi);
            self.n_unchecked(w)?;
        }
        Ok(())
    }
}
