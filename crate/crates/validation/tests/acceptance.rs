//! Exit criteria. Prints one line per criterion and exits non-zero if any
//! of them fails.

use std::time::{Duration, Instant};

use dielectric_momentum_validation::*;
use dielectric_momentum::constants::{omega_from_lambda_nm, C, HBAR};
use dielectric_momentum::dispersion::mode_point;
use dielectric_momentum::fock::{
    momentum_operator, translation_generator_deviations, verify_translation_generator, FockMode, FockRegister,
    ModeSet,
};
use dielectric_momentum::momentum::{momentum_triple, momentum_triple_along, planck_inertia_ratio};
use dielectric_momentum::phasematch::{collinear_mismatch, momentum_mismatch, solve_collinear, Geometry, MatchOutcome, SpdcProblem};
use dielectric_momentum::pressure::{
    jones_leslie_records, jones_leslie_rows, predict_ratios, round_to, score_against_experiment,
    PUBLISHED_DEVIATIONS, PUBLISHED_DEVIATION_DECIMALS,
};
use dielectric_momentum::wavepacket::{
    centroid_velocity, domain_length_for, energy_realspace, energy_spectral, make_gaussian_packet,
    normalize_to_quanta, propagate,
};
use dielectric_momentum::{DispersionModel, Helicity, Picture};
use nalgebra::Vector3;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const RATIO_TOL: f64 = 5e-4;
const DEVIATION_TOL: f64 = 0.1;
const IDENTITY_TOL: f64 = 1e-12;
const GENERATOR_TOL: f64 = 1e-12;
const VELOCITY_TOL: f64 = 1e-3;
const SPECTRAL_INVARIANCE_TOL: f64 = 1e-13;
const QUANTA_TOL: f64 = 1e-12;
const PHASEMATCH_TOL: f64 = 1e-3;
const EIGENVALUE_TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, title: &str, budget: Duration, f: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let pass = out.pass && in_time;
    println!(
        "criterion {id} [{}] {title}: {}; {:.3} s (budget {} s)",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn table_reproduction() -> Outcome {
    let rows = jones_leslie_rows();
    let mut worst_ratio: f64 = 0.0;
    for row in &rows {
        let r = predict_ratios(row.r_can, 1.0 / row.r_a);
        for (got, published) in r.as_array().iter().zip([row.r_can, row.r_m, row.r_a]) {
            worst_ratio = worst_ratio.max((got - published).abs());
        }
    }
    let report = score_against_experiment(&jones_leslie_records()).expect("embedded records are valid");
    let mut misses = Vec::new();
    let mut rounded_ok = 0;
    for (name, published) in PUBLISHED_DEVIATIONS {
        let score = report.get(name).expect("liquid present");
        for (col, (got, want)) in score.deviations().iter().zip(published).enumerate() {
            if (got - want).abs() > DEVIATION_TOL {
                misses.push(format!("{name}/{}: {got:.2} vs {want}", ["can", "M", "A"][col]));
            }
            if round_to(*got, PUBLISHED_DEVIATION_DECIMALS[col]) == want {
                rounded_ok += 1;
            }
        }
    }
    Outcome {
        pass: worst_ratio <= RATIO_TOL && misses.is_empty(),
        detail: format!(
            "max ratio error {worst_ratio:.1e} (tol {RATIO_TOL:.0e}); {} of 21 deviations outside ±{DEVIATION_TOL}σ [{}]; {rounded_ok} of 21 equal the printed value after rounding",
            misses.len(),
            misses.join(", ")
        ),
    }
}

fn momentum_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst = [0.0f64; 3];
    for i in 0..1000 {
        let model = if i % 10 == 0 { DispersionModel::bk7() } else { random_normal_model(&mut rng) };
        let (lo, hi) = model.band();
        let w = rng.gen_range(lo.max(1e14)..hi.min(1e16));
        let mode = mode_point(&model, w, Helicity::Plus).expect("in band");
        let t = momentum_triple(&mode);
        let beta = mode.v_gr / C;
        worst[0] = worst[0].max(rel(t.p_minkowski, mode.n * mode.n * t.p_abraham));
        worst[1] = worst[1].max(rel(t.p_abraham * t.p_minkowski, beta * beta * t.p_can * t.p_can));
        worst[2] = worst[2].max(rel(planck_inertia_ratio(&t), 1.0 / (C * C)));
    }
    Outcome {
        pass: worst.iter().all(|&e| e <= IDENTITY_TOL),
        detail: format!(
            "1000 modes; max rel error p_M=n²p_A {:.1e}, p_Ap_M=(v_gr/c)²p_can² {:.1e}, Planck ratio {:.1e} (tol {IDENTITY_TOL:.0e})",
            worst[0], worst[1], worst[2]
        ),
    }
}

fn translation_generator() -> Outcome {
    let bk7 = DispersionModel::bk7();
    let modes = vec![
        FockMode::new(mode_point(&bk7, omega_from_lambda_nm(632.8), Helicity::Plus).unwrap(), Vector3::z()).unwrap(),
        FockMode::new(mode_point(&bk7, omega_from_lambda_nm(1064.0), Helicity::Minus).unwrap(), Vector3::x()).unwrap(),
    ];
    let reg = FockRegister::uniform(ModeSet::new(modes, 1e-12).unwrap(), 3).unwrap();
    let canonical = verify_translation_generator(&reg);
    let mut worst: f64 = 0.0;
    let mut min_gap = f64::INFINITY;
    for picture in [Picture::Abraham, Picture::Minkowski] {
        for (m, dev) in translation_generator_deviations(&reg, picture).iter().enumerate() {
            let expect = (picture.weight(&reg.modes()[m].point) - 1.0).abs();
            worst = worst.max((dev - expect).abs());
            min_gap = min_gap.min(expect);
        }
    }
    Outcome {
        pass: canonical <= GENERATOR_TOL && worst <= GENERATOR_TOL && min_gap > GENERATOR_TOL,
        detail: format!(
            "canonical deviation {canonical:.1e}; kinetic deviations differ from |w_m − 1| by at most {worst:.1e}, smallest |w_m − 1| {min_gap:.3} (tol {GENERATOR_TOL:.0e})"
        ),
    }
}

fn group_velocity_transport() -> Outcome {
    let bk7 = DispersionModel::bk7();
    let w0 = omega_from_lambda_nm(632.8);
    let vg = C / (bk7.n(w0).unwrap() + w0 * bk7.dn_domega(w0).unwrap());
    let errs: Vec<f64> = [1e-3, 5e-4, 2.5e-4]
        .iter()
        .map(|&delta| {
            let l = domain_length_for(&bk7, 632.8, delta, 4096, 12.0).unwrap();
            let p = make_gaussian_packet(&bk7, 632.8, delta, 4096, l).unwrap();
            let t = 0.25 * l / vg;
            rel(centroid_velocity(&p, 0.0, t).unwrap(), vg)
        })
        .collect();
    Outcome {
        pass: errs[0] <= VELOCITY_TOL && errs[1] < errs[0] && errs[2] < errs[1],
        detail: format!(
            "rel error vs c/n_gr at δ = 1e-3, 5e-4, 2.5e-4: {:.2e}, {:.2e}, {:.2e} (tol {VELOCITY_TOL:.0e}, must decrease)",
            errs[0], errs[1], errs[2]
        ),
    }
}

fn energy_bookkeeping() -> Outcome {
    let bk7 = DispersionModel::bk7();
    let l = domain_length_for(&bk7, 632.8, 1e-3, 4096, 12.0).unwrap();
    let p = make_gaussian_packet(&bk7, 632.8, 1e-3, 4096, l).unwrap();
    let u = energy_spectral(&p);
    let tol_real = 10.0 * p.weak_dispersion_ratio().unwrap();
    let t_max = 0.25 * l * p.n_gr()[2048] / C;
    let (mut worst_inv, mut worst_real) = (0.0f64, 0.0f64);
    for i in 0..=4 {
        let s = propagate(&p, t_max * i as f64 / 4.0).unwrap();
        worst_inv = worst_inv.max(rel(s.energy, u));
        worst_real = worst_real.max(rel(energy_realspace(&s, &p).unwrap(), u));
    }
    let quanta: f64 = normalize_to_quanta(&p).iter().zip(p.omega()).map(|(n, w)| HBAR * w * n).sum();
    let q_err = rel(quanta, u);
    Outcome {
        pass: worst_inv <= SPECTRAL_INVARIANCE_TOL && worst_real <= tol_real && q_err <= QUANTA_TOL,
        detail: format!(
            "spectral drift {worst_inv:.1e} (tol {SPECTRAL_INVARIANCE_TOL:.0e}); real-space vs spectral {worst_real:.1e} (tol {tol_real:.1e}); Σħω N vs U {q_err:.1e} (tol {QUANTA_TOL:.0e})"
        ),
    }
}

fn phase_matching() -> Outcome {
    let w0 = omega_from_lambda_nm(400.0);
    let normal = SpdcProblem::new(DispersionModel::bk7(), w0, Geometry::Collinear).unwrap();
    let scan = brute_force_scan(&normal);
    let (wb, fb) = brute_force_min(&scan);
    let (lo, hi) = normal.signal_band();
    let step = (hi - lo) / 9999.0;
    let normal_ok = match solve_collinear(&normal, PHASEMATCH_TOL).unwrap() {
        MatchOutcome::Infeasible { min_mismatch, omega1 } => {
            let dist = (omega1 - wb).abs().min((w0 - omega1 - wb).abs());
            !brute_force_has_root(&scan) && dist <= 2.0 * step && rel(min_mismatch, fb) < 1e-6
        }
        MatchOutcome::Matched(_) => false,
    };

    let (model, w0p, w_root) = planted_on_node();
    let (plo, phi) = planted_band(w0p);
    let planted = SpdcProblem::new(model, w0p, Geometry::Collinear)
        .unwrap()
        .with_signal_band(plo, phi)
        .unwrap();
    let (planted_ok, found) = match solve_collinear(&planted, PHASEMATCH_TOL).unwrap() {
        MatchOutcome::Matched(sol) => {
            let residual = momentum_mismatch(&planted, sol.omega1, 0.0, 0.0).unwrap();
            let h = 1e-6 * w_root;
            let slope = (collinear_mismatch(&planted, w_root + h).unwrap()
                - collinear_mismatch(&planted, w_root - h).unwrap())
                / (2.0 * h);
            let ok = residual <= PHASEMATCH_TOL
                && sol.omega1 + sol.omega2 == w0p
                && (sol.omega1 - w_root).abs() <= PHASEMATCH_TOL / slope.abs();
            (ok, sol.omega1)
        }
        MatchOutcome::Infeasible { .. } => (false, f64::NAN),
    };
    Outcome {
        pass: normal_ok && planted_ok,
        detail: format!(
            "BK7 pump 400 nm infeasible with min |Δk| {fb:.4e} 1/m matching a 10⁴-point scan: {normal_ok}; planted ω₁ {w_root:.9e} recovered as {found:.9e} rad/s: {planted_ok}"
        ),
    }
}

fn fock_eigenvalues() -> Outcome {
    let bk7 = DispersionModel::bk7();
    let mut rng = StdRng::seed_from_u64(7);
    let modes = [(532.0, Vector3::z()), (810.0, Vector3::new(1.0, 0.0, 1.0)), (1310.0, Vector3::new(-0.3, 1.0, 0.2))]
        .iter()
        .map(|&(lambda, d)| FockMode::new(mode_point(&bk7, omega_from_lambda_nm(lambda), Helicity::Plus).unwrap(), d).unwrap())
        .collect();
    let reg = FockRegister::uniform(ModeSet::new(modes, 1e-12).unwrap(), 3).unwrap();
    let ops: Vec<_> = Picture::ALL.iter().map(|&p| (p, momentum_operator(&reg, p))).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let occ: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
        for (picture, op) in &ops {
            let expect: Vector3<f64> = reg
                .modes()
                .iter()
                .zip(&occ)
                .map(|(m, &n)| momentum_triple_along(&m.point, m.direction).vector(*picture) * n as f64)
                .sum();
            let scale = expect.norm();
            for axis in 0..3 {
                let got = op[axis].number_state_eigenvalue(&reg, &occ).unwrap();
                let err = if scale == 0.0 { got.abs() } else { (got - expect[axis]).abs() / scale };
                worst = worst.max(err);
            }
        }
    }
    Outcome {
        pass: worst <= EIGENVALUE_TOL,
        detail: format!("20 random number states, 3 pictures; max rel error {worst:.1e} (tol {EIGENVALUE_TOL:.0e})"),
    }
}

fn main() {
    let results = [
        run(1, "liquid-table reproduction", Duration::from_secs(1), table_reproduction),
        run(2, "momentum identities", Duration::from_secs(1), momentum_identities),
        run(3, "translation generator", Duration::from_secs(5), translation_generator),
        run(4, "group-velocity transport", Duration::from_secs(10), group_velocity_transport),
        run(5, "energy bookkeeping", Duration::from_secs(10), energy_bookkeeping),
        run(6, "phase-matching feasibility", Duration::from_secs(5), phase_matching),
        run(7, "Fock eigenvalue cross-check", Duration::from_secs(5), fock_eigenvalues),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
