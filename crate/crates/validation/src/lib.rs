//! Fixtures shared by the acceptance suite: a planted anomalous dispersion
//! table, random normally dispersive models and brute-force scans.

use dielectric_momentum::constants::{omega_from_lambda_nm, C};
use dielectric_momentum::phasematch::{collinear_mismatch, SpdcProblem};
use dielectric_momentum::DispersionModel;
use rand::Rng;

pub const PLANTED_PUMP_NM: f64 = 400.0;

/// Tabulated model on nodes `ω = x·ω₀`, `x = i/200` for `i = 50..=210`.
/// Above `ω₀/2` it is BK7; below, `k` is bent so that the collinear
/// mismatch at a node equals `F₀(x − x_root)/0.1`, which plants a single
/// root at `x_root` in the signal band `[0.3, 0.5]·ω₀`.
pub fn planted_model(x_root: f64) -> DispersionModel {
    let bk7 = DispersionModel::bk7();
    let w0 = omega_from_lambda_nm(PLANTED_PUMP_NM);
    let g_b = |x: f64| x * bk7.n(x * w0).unwrap();
    let f0 = g_b(1.0) - 2.0 * g_b(0.5);
    let rows: Vec<(f64, f64)> = (50..=210)
        .map(|i| {
            let x = i as f64 / 200.0;
            let n = if x < 0.5 {
                (g_b(1.0) - g_b(1.0 - x) - f0 * (x - x_root) / 0.1) / x
            } else {
                bk7.n(x * w0).unwrap()
            };
            (PLANTED_PUMP_NM / x, n)
        })
        .collect();
    DispersionModel::tabulated(&rows).unwrap().with_name("planted")
}

/// Planted model with its root on the node `x = 0.4`, plus that node's `ω`.
pub fn planted_on_node() -> (DispersionModel, f64, f64) {
    let model = planted_model(0.4);
    let w0 = omega_from_lambda_nm(PLANTED_PUMP_NM);
    let w_root = omega_from_lambda_nm(PLANTED_PUMP_NM / (80.0 / 200.0));
    (model, w0, w_root)
}

pub fn planted_band(w0: f64) -> (f64, f64) {
    (0.3 * w0, 0.5 * w0)
}

/// Random Cauchy or perturbed-BK7 Sellmeier model, normally dispersive
/// over 350–1700 nm.
pub fn random_normal_model<R: Rng>(rng: &mut R) -> DispersionModel {
    let band = [350.0, 1700.0];
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(1.3..1.8);
        let b = rng.gen_range(2e-3..1.5e-2);
        let c = rng.gen_range(0.0..2e-4);
        DispersionModel::cauchy(a, b, c, band).unwrap()
    } else {
        let s = |rng: &mut R| rng.gen_range(0.8..1.2);
        let b = [1.03961212 * s(rng), 0.231792344 * s(rng), 1.01046945 * s(rng)];
        let c = [0.00600069867 * s(rng), 0.0200179144 * s(rng), 103.560653 * s(rng)];
        DispersionModel::sellmeier(b, c, band).unwrap()
    }
}

/// `10⁴` uniform samples of the collinear mismatch over the signal band.
pub fn brute_force_scan(problem: &SpdcProblem) -> Vec<(f64, f64)> {
    let (lo, hi) = problem.signal_band();
    let n = 10_000;
    (0..n)
        .map(|i| {
            let w = if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
            (w, collinear_mismatch(problem, w).unwrap())
        })
        .collect()
}

pub fn brute_force_has_root(scan: &[(f64, f64)]) -> bool {
    scan.windows(2).any(|p| p[0].1 == 0.0 || p[0].1.signum() != p[1].1.signum())
}

pub fn brute_force_min(scan: &[(f64, f64)]) -> (f64, f64) {
    scan.iter()
        .map(|&(w, f)| (w, f.abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

/// Group velocity from an independent central difference of `k(ω)`.
pub fn group_velocity_oracle(model: &DispersionModel, w: f64) -> f64 {
    let h = 1e-5 * w;
    let k = |w: f64| model.n(w).unwrap() * w / C;
    2.0 * h / (k(w + h) - k(w - h))
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}
