//! Radiation pressure on a perfect mirror immersed in a dielectric, and the
//! Jones–Leslie liquid measurements it is scored against.

use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::{Error, Result};

/// Jones–Leslie table: measured ratio, its standard deviation and the three
/// published predictions, one row per liquid (HeNe laser, 632.8 nm).
pub const JONES_LESLIE_CSV: &str = include_str!("../data/jones_leslie.csv");

/// Laser power used in the Jones–Leslie apparatus, W.
pub const JONES_LESLIE_LASER_POWER: f64 = 0.015;

/// Laser vacuum wavelength, nm.
pub const JONES_LESLIE_LAMBDA_NM: f64 = 632.8;

/// Published σ-deviations `(canonical, Minkowski, Abraham)` per liquid, in
/// table order. The Abraham column is printed to whole σ.
pub const PUBLISHED_DEVIATIONS: [(&str, [f64; 3]); 7] = [
    ("methanol", [-0.3, -8.2, -324.0]),
    ("acetone", [0.6, -10.8, -350.0]),
    ("ethanol", [0.5, -7.1, -288.0]),
    ("isopropanol", [-0.3, -9.3, -329.0]),
    ("CCl4", [-1.6, -14.3, -375.0]),
    ("toluene", [1.3, -20.5, -465.0]),
    ("benzene", [0.2, -21.5, -405.0]),
];

/// Decimal places of the published deviations, per column.
pub const PUBLISHED_DEVIATION_DECIMALS: [i32; 3] = [1, 1, 0];

/// One row of [`JONES_LESLIE_CSV`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub r_exp: f64,
    pub sigma: f64,
    pub r_can: f64,
    pub r_m: f64,
    pub r_a: f64,
}

pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

pub fn jones_leslie_rows() -> Vec<TableRow> {
    parse_table(JONES_LESLIE_CSV).expect("embedded table parses")
}

/// Measurement for one liquid together with the indices used to predict it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiquidRecord {
    pub name: String,
    pub r_exp: f64,
    pub sigma: f64,
    pub n: f64,
    pub n_gr: f64,
}

impl LiquidRecord {
    pub fn new(name: impl Into<String>, r_exp: f64, sigma: f64, n: f64, n_gr: f64) -> Result<Self> {
        let rec = LiquidRecord {
            name: name.into(),
            r_exp,
            sigma,
            n,
            n_gr,
        };
        rec.validate()?;
        Ok(rec)
    }

    /// Reconstructs `n` from the canonical column (`R_can = n`) and `n_gr`
    /// from the Abraham column (`R_A = 1/n_gr`).
    pub fn from_row(row: &TableRow) -> Result<Self> {
        Self::new(row.name.clone(), row.r_exp, row.sigma, row.r_can, 1.0 / row.r_a)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Error::InvalidRecord {
            name: self.name.clone(),
            reason: reason.into(),
        };
        let all = [self.r_exp, self.sigma, self.n, self.n_gr];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(bad("non-finite field"));
        }
        if !(self.sigma > 0.0) {
            return Err(bad("sigma must be positive"));
        }
        if !(self.r_exp > 0.0) {
            return Err(bad("r_exp must be positive"));
        }
        if self.n < 1.0 || self.n_gr < 1.0 {
            return Err(bad("n and n_gr must be at least 1"));
        }
        Ok(())
    }
}

/// The seven Jones–Leslie liquids as scoring records.
pub fn jones_leslie_records() -> Vec<LiquidRecord> {
    jones_leslie_rows()
        .iter()
        .map(|r| LiquidRecord::from_row(r).expect("embedded rows are valid"))
        .collect()
}

/// Force (N) of a beam of power `p_laser` (W) at `omega_l` (rad/s) on a
/// perfect mirror at normal incidence, each photon carrying
/// `photon_momentum` (kg·m/s) and reversing it on reflection.
pub fn radiation_force(p_laser: f64, omega_l: f64, photon_momentum: f64) -> f64 {
    debug_assert!(p_laser >= 0.0 && omega_l > 0.0);
    let photon_rate = p_laser / (HBAR * omega_l);
    photon_rate * 2.0 * photon_momentum.abs()
}

/// Liquid-to-air force ratios in the three pictures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ratios {
    pub r_can: f64,
    pub r_minkowski: f64,
    pub r_abraham: f64,
}

impl Ratios {
    pub fn as_array(&self) -> [f64; 3] {
        [self.r_can, self.r_minkowski, self.r_abraham]
    }
}

/// `R_can = n`, `R_M = n²/n_gr`, `R_A = 1/n_gr` (air has `n = n_gr = 1`).
pub fn predict_ratios(n: f64, n_gr: f64) -> Ratios {
    Ratios {
        r_can: n,
        r_minkowski: n * n / n_gr,
        r_abraham: 1.0 / n_gr,
    }
}

/// Predictions and signed deviations `(R − R_exp)/σ` for one liquid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiquidScore {
    pub name: String,
    pub r_exp: f64,
    pub sigma: f64,
    pub ratios: Ratios,
    pub dev_can: f64,
    pub dev_m: f64,
    pub dev_a: f64,
}

impl LiquidScore {
    pub fn deviations(&self) -> [f64; 3] {
        [self.dev_can, self.dev_m, self.dev_a]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PressureReport {
    pub liquids: Vec<LiquidScore>,
}

impl PressureReport {
    pub fn get(&self, name: &str) -> Option<&LiquidScore> {
        self.liquids.iter().find(|l| l.name == name)
    }
}

pub fn score_against_experiment(records: &[LiquidRecord]) -> Result<PressureReport> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no liquid records to score".into()));
    }
    let liquids = records
        .iter()
        .map(|rec| {
            rec.validate()?;
            let ratios = predict_ratios(rec.n, rec.n_gr);
            let dev = |r: f64| (r - rec.r_exp) / rec.sigma;
            Ok(LiquidScore {
                name: rec.name.clone(),
                r_exp: rec.r_exp,
                sigma: rec.sigma,
                ratios,
                dev_can: dev(ratios.r_can),
                dev_m: dev(ratios.r_minkowski),
                dev_a: dev(ratios.r_abraham),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PressureReport { liquids })
}

/// Rounds half away from zero to `decimals` places, for display.
pub fn round_to(x: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (x * scale).round() / scale
}
