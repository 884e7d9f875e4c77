use std::path::Path;

use dielectric_momentum::constants::{lambda_nm_from_omega, omega_from_lambda_nm, C, HBAR};
use dielectric_momentum::dispersion::{check_weak_dispersion, mode_point, resolve_model, DEFAULT_WEAK_DISPERSION_THRESHOLD};
use dielectric_momentum::fock::{evaluate_states, load_scenario, verify_translation_generator_with};
use dielectric_momentum::momentum::{classify_equalities, momentum_triple, planck_inertia_ratio, DEFAULT_EQUALITY_TOL};
use dielectric_momentum::phasematch::{
    mismatch_curve, solve_collinear, solve_noncollinear_degenerate, Geometry, MatchOutcome, SpdcProblem,
};
use dielectric_momentum::pressure::{
    jones_leslie_rows, parse_table, score_against_experiment, LiquidRecord, PUBLISHED_DEVIATIONS,
};
use dielectric_momentum::wavepacket::{
    centroid_velocity, domain_length_for, energy_realspace, energy_spectral, make_gaussian_packet, propagate,
    scale_to_photon_number, PacketSnapshot,
};
use dielectric_momentum::{DispersionModel, Helicity, ModePoint, Picture};
use serde_json::{json, Value};

use crate::args::{
    Common, DispersionArgs, FockArgs, GeometryArg, MomentumArgs, PhasematchArgs, PressureArgs, WavepacketArgs,
};
use crate::error::CliError;
use crate::report::{Cell, Report, Table};

fn load_model(common: &Common) -> Result<DispersionModel, CliError> {
    Ok(resolve_model(&common.model, Path::new(""))?)
}

fn check_lambda(lambda_nm: f64) -> Result<f64, CliError> {
    if lambda_nm > 0.0 && lambda_nm.is_finite() {
        Ok(omega_from_lambda_nm(lambda_nm))
    } else {
        Err(CliError::Usage(format!("--lambda-nm must be positive, got {lambda_nm}")))
    }
}

fn model_json(model: &DispersionModel) -> Value {
    let (lo, hi) = model.band();
    json!({
        "name": model.name(),
        "kind": model.kind().to_string(),
        "band_rad_s": [lo, hi],
    })
}

fn mode_json(p: &ModePoint) -> Value {
    json!({
        "lambda_nm": p.lambda_nm(),
        "omega_rad_s": p.omega,
        "k_per_m": p.k,
        "n": p.n,
        "n_gr": p.n_gr,
        "v_ph_m_s": p.v_ph,
        "v_gr_m_s": p.v_gr,
        "helicity": p.helicity.value(),
    })
}

const MODE_HEADERS: [&str; 7] = [
    "lambda [nm]",
    "omega [rad/s]",
    "k [1/m]",
    "n",
    "n_gr",
    "v_ph [m/s]",
    "v_gr [m/s]",
];

fn mode_row(p: &ModePoint) -> Vec<Cell> {
    vec![
        p.lambda_nm().into(),
        p.omega.into(),
        p.k.into(),
        p.n.into(),
        p.n_gr.into(),
        p.v_ph.into(),
        p.v_gr.into(),
    ]
}

pub fn dispersion(common: &Common, args: &DispersionArgs) -> Result<Report, CliError> {
    let model = load_model(common)?;
    let lambdas: Vec<f64> = match (args.from_nm, args.to_nm) {
        (Some(a), Some(b)) => {
            if args.steps < 2 {
                return Err(CliError::Usage("--steps must be at least 2 for a sweep".into()));
            }
            (0..args.steps)
                .map(|i| a + (b - a) * i as f64 / (args.steps - 1) as f64)
                .collect()
        }
        _ => vec![common.lambda_nm],
    };
    let mut table = Table::new(&MODE_HEADERS);
    let mut modes = Vec::new();
    for &l in &lambdas {
        let p = mode_point(&model, check_lambda(l)?, Helicity::Plus)?;
        table.push(mode_row(&p));
        modes.push(mode_json(&p));
    }
    let mut report = Report::new("dispersion", table);
    report.insert("model", model_json(&model));
    report.insert("modes", modes);
    report.note("model", format!("{} ({})", model.name(), model.kind()));
    if let Some(dw) = args.delta_omega {
        let w0 = check_lambda(common.lambda_nm)?;
        let ratio = check_weak_dispersion(&model, w0, dw)?;
        let weak = ratio <= DEFAULT_WEAK_DISPERSION_THRESHOLD;
        report.insert(
            "weak_dispersion",
            json!({
                "omega0_rad_s": w0,
                "delta_omega_rad_s": dw,
                "ratio": ratio,
                "threshold": DEFAULT_WEAK_DISPERSION_THRESHOLD,
                "weak": weak,
            }),
        );
        report.note(
            "weak-dispersion ratio",
            format!("{} (threshold {DEFAULT_WEAK_DISPERSION_THRESHOLD}, weak: {weak})", crate::report::sig6(ratio)),
        );
    }
    Ok(report)
}

pub fn momentum(common: &Common, args: &MomentumArgs) -> Result<Report, CliError> {
    let model = load_model(common)?;
    let s = Helicity::from_sign(args.helicity).map_err(|e| CliError::Usage(e.to_string()))?;
    let p = mode_point(&model, check_lambda(common.lambda_nm)?, s)?;
    let t = momentum_triple(&p);
    let class = classify_equalities(&p, DEFAULT_EQUALITY_TOL);
    let mut table = Table::new(&["picture", "weight", "p [kg m/s]", "m_eff [kg]"]);
    let m_can = f64::NAN;
    for (picture, m) in [
        (Picture::Canonical, m_can),
        (Picture::Abraham, t.m_eff_abraham),
        (Picture::Minkowski, t.m_eff_minkowski),
    ] {
        let m_cell = if m.is_nan() { Cell::Text("-".into()) } else { m.into() };
        table.push(vec![picture.to_string().into(), picture.weight(&p).into(), t.get(picture).into(), m_cell]);
    }
    let mut report = Report::new("momentum", table);
    report.insert("model", model_json(&model));
    report.insert("mode", mode_json(&p));
    report.insert(
        "momentum_kg_m_s",
        json!({"canonical": t.p_can, "abraham": t.p_abraham, "minkowski": t.p_minkowski}),
    );
    report.insert(
        "effective_mass_kg",
        json!({"abraham": t.m_eff_abraham, "minkowski": t.m_eff_minkowski}),
    );
    report.insert("equality_class", serde_json::to_value(class).expect("enum serializes"));
    report.insert("planck_ratio_s2_m2", planck_inertia_ratio(&t));
    report.note("model", format!("{} ({})", model.name(), model.kind()));
    report.note(
        "mode",
        format!(
            "lambda {} nm, n {}, n_gr {}",
            crate::report::sig6(p.lambda_nm()),
            crate::report::sig6(p.n),
            crate::report::sig6(p.n_gr)
        ),
    );
    report.note("equality class", serde_json::to_value(class).expect("enum serializes").as_str().unwrap_or("").to_string());
    report.note("p_A/(hbar w v_gr) [s^2/m^2]", crate::report::sig6(planck_inertia_ratio(&t)));
    Ok(report)
}

pub fn pressure(_common: &Common, args: &PressureArgs) -> Result<Report, CliError> {
    let (rows, embedded) = match &args.table {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| dielectric_momentum::Error::Io {
                path: path.display().to_string(),
                source: e,
            })?;
            (parse_table(&text)?, false)
        }
        None => (jones_leslie_rows(), true),
    };
    let records = rows.iter().map(LiquidRecord::from_row).collect::<Result<Vec<_>, _>>()?;
    let report_data = score_against_experiment(&records)?;
    let mut headers = vec![
        "liquid", "R_exp", "sigma", "R_can", "R_M", "R_A", "dev_can [sigma]", "dev_M [sigma]", "dev_A [sigma]",
    ];
    if embedded {
        headers.extend(["published dev_can", "published dev_M", "published dev_A"]);
    }
    let mut table = Table::new(&headers);
    let mut liquids = Vec::new();
    for score in &report_data.liquids {
        let r = score.ratios;
        let mut row: Vec<Cell> = vec![
            score.name.clone().into(),
            score.r_exp.into(),
            score.sigma.into(),
            r.r_can.into(),
            r.r_minkowski.into(),
            r.r_abraham.into(),
            score.dev_can.into(),
            score.dev_m.into(),
            score.dev_a.into(),
        ];
        let mut entry = json!({
            "name": score.name,
            "r_exp": score.r_exp,
            "sigma": score.sigma,
            "ratios": {"canonical": r.r_can, "minkowski": r.r_minkowski, "abraham": r.r_abraham},
            "deviation_sigma": {"canonical": score.dev_can, "minkowski": score.dev_m, "abraham": score.dev_a},
        });
        if embedded {
            let published = PUBLISHED_DEVIATIONS
                .iter()
                .find(|(n, _)| *n == score.name)
                .map(|(_, d)| *d)
                .expect("embedded liquids have published deviations");
            row.extend(published.iter().map(|&d| Cell::Num(d)));
            entry["published_deviation_sigma"] =
                json!({"canonical": published[0], "minkowski": published[1], "abraham": published[2]});
        }
        table.push(row);
        liquids.push(entry);
    }
    let mut report = Report::new("pressure", table);
    report.insert("source", if embedded { "jones-leslie" } else { "file" });
    report.insert("liquids", liquids);
    report.note(
        "ratios",
        "liquid-to-air radiation-pressure ratios; dev = (R - R_exp)/sigma".to_string(),
    );
    Ok(report)
}

pub fn phasematch(common: &Common, args: &PhasematchArgs) -> Result<Report, CliError> {
    let model = load_model(common)?;
    let w0 = check_lambda(common.lambda_nm)?;
    let geometry = match args.geometry {
        GeometryArg::Collinear => Geometry::Collinear,
        GeometryArg::Noncollinear => Geometry::PlanarNoncollinear,
    };
    let mut problem = SpdcProblem::new(model.clone(), w0, geometry)?;
    if let Some(b) = &args.signal_band_nm {
        let (w_a, w_b) = (check_lambda(b[0])?, check_lambda(b[1])?);
        problem = problem.with_signal_band(w_a.min(w_b), w_a.max(w_b))?;
    }
    if let Some(samples) = args.curve {
        let curve = mismatch_curve(&problem, samples)?;
        let mut table = Table::new(&["omega1 [rad/s]", "omega2 [rad/s]", "lambda1 [nm]", "delta_k [1/m]"]);
        for &(w1, dk) in &curve {
            table.push(vec![w1.into(), (w0 - w1).into(), lambda_nm_from_omega(w1).into(), dk.into()]);
        }
        let mut report = Report::new("phasematch", table);
        report.insert("model", model_json(&model));
        report.insert("pump", mode_json(&problem.pump));
        report.insert(
            "curve",
            curve.iter().map(|&(w, d)| json!({"omega1_rad_s": w, "delta_k_per_m": d})).collect::<Vec<_>>(),
        );
        return Ok(report);
    }
    let outcome = match geometry {
        Geometry::Collinear => solve_collinear(&problem, args.tol)?,
        Geometry::PlanarNoncollinear => solve_noncollinear_degenerate(&problem, args.tol)?,
    };
    let mut table = Table::new(&[
        "status",
        "omega1 [rad/s]",
        "omega2 [rad/s]",
        "theta1 [rad]",
        "theta2 [rad]",
        "mismatch [1/m]",
    ]);
    let failure = match outcome {
        MatchOutcome::Matched(s) => {
            table.push(vec![
                "matched".into(),
                s.omega1.into(),
                s.omega2.into(),
                s.theta1.into(),
                s.theta2.into(),
                s.residual.into(),
            ]);
            None
        }
        MatchOutcome::Infeasible { min_mismatch, omega1 } => {
            table.push(vec![
                "infeasible".into(),
                omega1.into(),
                (w0 - omega1).into(),
                Cell::Text("-".into()),
                Cell::Text("-".into()),
                min_mismatch.into(),
            ]);
            Some(format!(
                "no phase-matched pair; smallest |delta k| {min_mismatch:e} 1/m at omega1 = {omega1:e} rad/s"
            ))
        }
    };
    let (lo, hi) = problem.signal_band();
    let mut report = Report::new("phasematch", table);
    report.insert("model", model_json(&model));
    report.insert("pump", mode_json(&problem.pump));
    report.insert("geometry", serde_json::to_value(geometry).expect("enum serializes"));
    report.insert("signal_band_rad_s", json!([lo, hi]));
    report.insert("tolerance_per_m", args.tol);
    report.insert("outcome", serde_json::to_value(outcome).expect("outcome serializes"));
    report.note("model", format!("{} ({})", model.name(), model.kind()));
    report.note("pump", format!("{} nm", crate::report::sig6(common.lambda_nm)));
    report.failure = failure;
    Ok(report)
}

pub fn fock(_common: &Common, args: &FockArgs) -> Result<Report, CliError> {
    let scenario = load_scenario(&args.scenario)?;
    let reg = &scenario.register;
    let rows = evaluate_states(reg, &scenario.states)?;
    let mut table = Table::new(&[
        "occupations",
        "energy [J]",
        "p_can_x [kg m/s]",
        "p_can_y [kg m/s]",
        "p_can_z [kg m/s]",
        "p_A_x [kg m/s]",
        "p_A_y [kg m/s]",
        "p_A_z [kg m/s]",
        "p_M_x [kg m/s]",
        "p_M_y [kg m/s]",
        "p_M_z [kg m/s]",
        "J_x [J s]",
        "J_y [J s]",
        "J_z [J s]",
    ]);
    for r in &rows {
        let occ = r.occupations.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
        let mut row: Vec<Cell> = vec![occ.into(), r.energy.into()];
        for v in [r.p_can, r.p_abraham, r.p_minkowski, r.j_spin] {
            row.extend(v.iter().map(|&x| Cell::Num(x)));
        }
        table.push(row);
    }
    let generator: Vec<(Picture, f64)> = Picture::ALL
        .iter()
        .map(|&p| (p, verify_translation_generator_with(reg, p)))
        .collect();
    let mut report = Report::new("fock", table);
    report.insert("dimension", reg.dim());
    report.insert(
        "modes",
        reg.modes()
            .iter()
            .map(|m| {
                let mut v = mode_json(&m.point);
                v["direction"] = json!([m.direction[0], m.direction[1], m.direction[2]]);
                v
            })
            .collect::<Vec<_>>(),
    );
    report.insert(
        "translation_generator_deviation",
        generator
            .iter()
            .map(|(p, d)| (p.to_string().to_lowercase(), Value::from(*d)))
            .collect::<serde_json::Map<_, _>>(),
    );
    report.insert("states", serde_json::to_value(&rows).expect("reports serialize"));
    report.note("modes", reg.modes().len().to_string());
    report.note("dimension", reg.dim().to_string());
    for (p, d) in &generator {
        report.note(&format!("[a, P_{p}] - hbar k a (relative)"), crate::report::sig6(*d));
    }
    Ok(report)
}

fn snapshot_csv(s: &PacketSnapshot) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["z [m]", "Re A [V s/m]", "Im A [V s/m]", "|A|^2 [V^2 s^2/m^2]"])
        .expect("in-memory write");
    for (m, a) in s.field.iter().enumerate() {
        w.write_record([s.z(m).to_string(), a.re.to_string(), a.im.to_string(), a.norm_sqr().to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is UTF-8")
}

pub fn wavepacket(common: &Common, args: &WavepacketArgs) -> Result<Report, CliError> {
    let model = load_model(common)?;
    check_lambda(common.lambda_nm)?;
    let length = match args.length {
        Some(l) => l,
        None => domain_length_for(&model, common.lambda_nm, args.delta_k_rel, args.samples, 12.0)?,
    };
    let packet = make_gaussian_packet(&model, common.lambda_nm, args.delta_k_rel, args.samples, length)?
        .with_transverse_area(args.area)?;
    let packet = scale_to_photon_number(packet, args.photons)?;
    let w0 = packet.omega0();
    let p0 = mode_point(&model, w0, Helicity::Plus)?;
    let times = match &args.times {
        Some(t) => t.clone(),
        None => {
            let t_max = 0.25 * packet.length() / p0.v_gr;
            (0..5).map(|i| t_max * i as f64 / 4.0).collect()
        }
    };
    if times.is_empty() {
        return Err(CliError::Usage("--times needs at least one value".into()));
    }
    let u_spec = energy_spectral(&packet);
    let mut table = Table::new(&[
        "t [s]",
        "centroid [m]",
        "spread [m]",
        "energy_spectral [J]",
        "energy_realspace [J]",
    ]);
    if let Some(dir) = &args.snapshot_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io {
            path: dir.display().to_string(),
            source: e,
        })?;
    }
    let mut trajectory = Vec::new();
    for (i, &t) in times.iter().enumerate() {
        let s = propagate(&packet, t)?;
        let c = s.localized_centroid()?;
        let u_real = energy_realspace(&s, &packet)?;
        table.push(vec![t.into(), c.into(), s.spread.into(), s.energy.into(), u_real.into()]);
        trajectory.push(json!({
            "t_s": t,
            "centroid_m": c,
            "spread_m": s.spread,
            "energy_spectral_j": s.energy,
            "energy_realspace_j": u_real,
        }));
        if let Some(dir) = &args.snapshot_dir {
            let path = dir.join(format!("snapshot_{i:03}.csv"));
            std::fs::write(&path, snapshot_csv(&s)).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                source: e,
            })?;
        }
    }
    let measured = if times.len() >= 2 {
        let (t1, t2) = (times[0], times[times.len() - 1]);
        Some(centroid_velocity(&packet, t1.min(t2), t1.max(t2))?)
    } else {
        None
    };
    let ratio = packet.weak_dispersion_ratio()?;
    let mut report = Report::new("wavepacket", table);
    report.insert("model", model_json(&model));
    report.insert("carrier", mode_json(&p0));
    report.insert(
        "grid",
        json!({
            "samples": packet.len(),
            "length_m": packet.length(),
            "dk_per_m": packet.dk(),
            "delta_k_rel": args.delta_k_rel,
            "transverse_area_m2": packet.transverse_area(),
        }),
    );
    report.insert("photons", args.photons);
    report.insert("energy_spectral_j", u_spec);
    report.insert("photon_energy_j", HBAR * w0);
    report.insert("weak_dispersion_ratio", ratio);
    report.insert("trajectory", trajectory);
    report.insert("measured_velocity_m_s", measured.map(Value::from).unwrap_or(Value::Null));
    report.insert("group_velocity_m_s", p0.v_gr);
    report.note("model", format!("{} ({})", model.name(), model.kind()));
    report.note("carrier", format!("{} nm, n_gr {}", crate::report::sig6(common.lambda_nm), crate::report::sig6(p0.n_gr)));
    report.note("energy_spectral [J]", crate::report::sig6(u_spec));
    report.note("hbar omega0 * photons [J]", crate::report::sig6(HBAR * w0 * args.photons));
    if let Some(v) = measured {
        report.note("centroid velocity [m/s]", crate::report::sig6(v));
        report.note("c/n_gr [m/s]", crate::report::sig6(C / p0.n_gr));
    }
    Ok(report)
}
