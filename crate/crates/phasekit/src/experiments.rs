//! The experiment catalogue.
//!
//! Each experiment consumes a resolved configuration, draws any random
//! inputs from the seeded generator, and returns tables, exported JSON
//! blobs, and named pass/fail verdicts. Default configurations run
//! the standard study of each quantity; flags narrow or widen the
//! sweep without changing the verdict definitions.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64 as C64;
use phasekit_core::commute::{com_ne_set, com_e_estimate, joint_prob, pairwise_commutator_norm};
use phasekit_core::effects::{
    build_effect, covariance_residual, elementary_spectrum_closed, complementarity_probe,
    mixture_bound_check, GRAM_TOL,
};
use phasekit_core::eigen::{eigh, DEFAULT_RANGE_TOL};
use phasekit_core::scans::{norm_scan, uncertainty_product, value_comp_scan};
use phasekit_core::stats::{
    coherent_min_dim, coherent_state, density_canonical_geometric, density_groundstate_coherent,
    fourier_coeff, geometric_min_dim, geometric_state, min_variance, phase_density,
};
use phasekit_core::{ComReport, PhaseFamily, PhaseSequence, StateVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::battery::{default_battery, random_arcset, random_unit_state, seeded_rng};
use crate::config::ExperimentConfig;
use crate::json::{com_report_to_json, effect_to_json};
use crate::report::{Cell, Table, Verdict};
use crate::RunError;

/// Everything one run produces before it is written to disk.
#[derive(Debug, Default)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    pub json_blobs: Vec<(String, serde_json::Value)>,
}

impl RunOutput {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Validate the configuration, then dispatch by experiment name.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    validate_config(cfg)?;
    let mut rng = seeded_rng(cfg.seed);
    match cfg.experiment.as_str() {
        "effect" => effect_run(cfg, &mut rng),
        "spectrum" => spectrum_run(cfg, &mut rng),
        "covariance" => covariance_run(cfg, &mut rng),
        "commute" => commute_run(cfg, &mut rng),
        "complementarity" => complementarity_run(cfg, &mut rng),
        "density" => density_run(cfg),
        "variance" => variance_run(cfg),
        "uncertainty" => uncertainty_run(cfg),
        "norm-scan" => norm_scan_run(cfg),
        "value-scan" => value_scan_run(cfg),
        "structure" => structure_run(cfg),
        other => Err(RunError::Config(format!("unknown experiment '{other}'"))),
    }
}

/// Family sanity plus the positivity check at the largest explicitly
/// requested dimension. Scan dimensions derived from amplitudes are
/// checked where they are built.
fn validate_config(cfg: &ExperimentConfig) -> Result<(), RunError> {
    cfg.family
        .validate()
        .map_err(|e| RunError::Config(format!("invalid family: {e}")))?;
    let max_dim = cfg
        .dims
        .iter()
        .copied()
        .chain([cfg.dim, cfg.d_eval, cfg.d_big])
        .max()
        .unwrap_or(cfg.dim)
        .max(2);
    let violation = cfg.family.validate_gram(max_dim);
    if violation > GRAM_TOL {
        return Err(RunError::Config(format!(
            "family fails positivity at dimension {max_dim}: violation {violation:.3e}"
        )));
    }
    Ok(())
}

fn family_label(family: &PhaseFamily) -> String {
    match family {
        PhaseFamily::Canonical => "canonical".into(),
        PhaseFamily::Trivial => "trivial".into(),
        PhaseFamily::GroundState => "ground_state".into(),
        PhaseFamily::Elementary { s, t, .. } => format!("elementary_{s}_{t}"),
        PhaseFamily::FromVectors { .. } => "from_vectors".into(),
        PhaseFamily::Mixture { .. } => "mixture".into(),
        PhaseFamily::Conjugated { .. } => "conjugated".into(),
    }
}

fn effect_run(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let x = cfg.arc_set();
    let effect = build_effect(&cfg.family, &x, cfg.dim)?;
    let eig = eigh(&effect.matrix)?;
    let mut spectrum = Table::new("effect_spectrum", &["index", "eigenvalue"]);
    for (i, v) in eig.values.iter().enumerate() {
        spectrum.push(vec![Cell::Int(i as i64), Cell::Float(*v)]);
    }
    let lo = eig.values.first().copied().unwrap_or(0.0);
    let hi = eig.values.last().copied().unwrap_or(0.0);
    let shift = rng.gen::<f64>() * TAU;
    let residual = covariance_residual(&cfg.family, &x, shift, cfg.dim)?;

    let mut out = RunOutput::default();
    out.tables.push(spectrum);
    out.json_blobs.push(("effect".into(), effect_to_json(&effect)));
    out.verdicts.push(Verdict::check(
        "spectrum_in_unit_interval",
        lo >= -1e-10 && hi <= 1.0 + 1e-10,
        format!("eigenvalues span [{lo:.3e}, {hi:.12}]"),
    ));
    out.verdicts.push(Verdict::check(
        "shift_covariance",
        residual <= 1e-12,
        format!("residual {residual:.3e} at shift {shift:.6}"),
    ));
    Ok(out)
}

fn spectrum_run(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let dim = cfg.dim;
    let mut table = Table::new(
        "spectrum_trials",
        &[
            "trial", "s", "t", "w_re", "w_im", "measure", "e_minus", "e_zero", "e_plus", "max_dev",
        ],
    );
    let mut worst = 0.0f64;
    for trial in 0..cfg.trials {
        let s = rng.gen_range(0..dim);
        let mut t = rng.gen_range(0..dim);
        while t == s {
            t = rng.gen_range(0..dim);
        }
        let modulus = 0.05 + 0.95 * rng.gen::<f64>();
        let angle = TAU * rng.gen::<f64>();
        let w = modulus * C64::cis(angle);
        let x = random_arcset(rng);
        let family = PhaseFamily::elementary(s, t, w)?;
        let effect = build_effect(&family, &x, dim)?;
        let eig = eigh(&effect.matrix)?;
        let (e_minus, e_zero, e_plus) = elementary_spectrum_closed(s, t, w, &x)?;
        let mut closed = vec![e_minus];
        closed.extend(std::iter::repeat_n(e_zero, dim - 2));
        closed.push(e_plus);
        let max_dev = eig
            .values
            .iter()
            .zip(&closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        worst = worst.max(max_dev);
        table.push(vec![
            Cell::Int(trial as i64),
            Cell::Int(s as i64),
            Cell::Int(t as i64),
            Cell::Float(w.re),
            Cell::Float(w.im),
            Cell::Float(x.measure()),
            Cell::Float(e_minus),
            Cell::Float(e_zero),
            Cell::Float(e_plus),
            Cell::Float(max_dev),
        ]);
    }
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "closed_spectrum_matches",
        worst <= cfg.tol,
        format!("max deviation {worst:.3e} over {} trials", cfg.trials),
    ));
    Ok(out)
}

fn covariance_panel(cfg: &ExperimentConfig) -> Vec<(String, PhaseFamily)> {
    let mut panel = vec![
        ("canonical".to_string(), PhaseFamily::Canonical),
        (
            "elementary_0_1".to_string(),
            PhaseFamily::elementary(0, 1, C64::new(0.6, 0.0)).expect("valid"),
        ),
        ("ground_state".to_string(), PhaseFamily::GroundState),
        (
            "mixture_canonical".to_string(),
            PhaseFamily::mixture(0.3, PhaseFamily::Canonical).expect("valid"),
        ),
    ];
    if panel.iter().all(|(_, f)| f != &cfg.family) {
        panel.push((family_label(&cfg.family), cfg.family.clone()));
    }
    panel
}

fn covariance_run(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let mut table = Table::new(
        "covariance_residuals",
        &["family", "trial", "measure", "shift", "residual"],
    );
    let mut worst = 0.0f64;
    for (label, family) in covariance_panel(cfg) {
        for trial in 0..cfg.trials {
            let x = random_arcset(rng);
            let shift = rng.gen::<f64>() * TAU;
            let residual = covariance_residual(&family, &x, shift, cfg.dim)?;
            worst = worst.max(residual);
            table.push(vec![
                Cell::Text(label.clone()),
                Cell::Int(trial as i64),
                Cell::Float(x.measure()),
                Cell::Float(shift),
                Cell::Float(residual),
            ]);
        }
    }
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "residuals_within_tol",
        worst <= cfg.tol,
        format!(
            "max residual {worst:.3e} over {} trials per family at dim {}",
            cfg.trials, cfg.dim
        ),
    ));
    Ok(out)
}

fn witness_off_mass(report: &ComReport) -> Option<f64> {
    let witness = report.witness.as_ref()?;
    let mut in_a = vec![false; witness.dim()];
    for &n in &report.a_set {
        if n < witness.dim() {
            in_a[n] = true;
        }
    }
    let a_mass: f64 = witness
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(n, _)| in_a[*n])
        .map(|(_, z)| z.norm_sqr())
        .sum();
    Some(1.0 - a_mass)
}

fn commute_run(cfg: &ExperimentConfig, rng: &mut ChaCha8Rng) -> Result<RunOutput, RunError> {
    let battery = default_battery(rng);

    let mut norms = Table::new(
        "commutator_norms",
        &["family", "pair", "x_measure", "y_measure", "norm"],
    );
    let mut trivial_worst = 0.0f64;
    for (label, family) in [
        ("trivial", PhaseFamily::Trivial),
        ("canonical", PhaseFamily::Canonical),
    ] {
        for (i, (x, y)) in battery.iter().enumerate() {
            let norm = pairwise_commutator_norm(&family, x, y, cfg.d_big)?;
            if label == "trivial" {
                trivial_worst = trivial_worst.max(norm);
            }
            norms.push(vec![
                Cell::Text(label.to_string()),
                Cell::Int(i as i64),
                Cell::Float(x.measure()),
                Cell::Float(y.measure()),
                Cell::Float(norm),
            ]);
        }
    }

    let two_step = PhaseFamily::two_step(C64::new(FRAC_1_SQRT_2, 0.0))?;
    let mut panel = vec![
        ("canonical".to_string(), PhaseFamily::Canonical),
        ("trivial".to_string(), PhaseFamily::Trivial),
        ("ground_state".to_string(), PhaseFamily::GroundState),
        ("two_step".to_string(), two_step.clone()),
    ];
    if panel.iter().all(|(_, f)| f != &cfg.family) {
        panel.push((family_label(&cfg.family), cfg.family.clone()));
    }
    let mut reports = Table::new(
        "com_reports",
        &[
            "family",
            "pa_dim",
            "com_estimate_dim",
            "borderline",
            "has_witness",
            "witness_off_mass",
        ],
    );
    let mut canonical_dim = usize::MAX;
    let mut strong_equal = true;
    let mut two_step_report = None;
    for (label, family) in &panel {
        let report = com_e_estimate(family, cfg.d_big, cfg.d_eval, &battery, cfg.tol)?;
        let off = witness_off_mass(&report);
        reports.push(vec![
            Cell::Text(label.clone()),
            Cell::Int(report.pa_dim as i64),
            Cell::Int(report.com_estimate_dim as i64),
            Cell::Int(report.borderline as i64),
            Cell::Bool(report.witness.is_some()),
            Cell::Float(off.unwrap_or(0.0)),
        ]);
        match label.as_str() {
            "canonical" => canonical_dim = report.com_estimate_dim,
            "trivial" | "ground_state" => {
                strong_equal &= report.pa_dim == report.com_estimate_dim;
            }
            "two_step" => two_step_report = Some(report),
            _ => {}
        }
    }
    strong_equal &= canonical_dim == 0;

    let mut joints = Table::new("joint_probs", &["family", "n", "measure", "prob"]);
    let half = phasekit_core::ArcSet::new([(0.0, PI)]);
    let quarter = phasekit_core::ArcSet::new([(0.0, PI / 2.0)]);
    let p_trivial = joint_prob(
        &PhaseFamily::Trivial,
        &StateVector::basis(cfg.d_eval, 5)?,
        5,
        &half,
        1e-10,
    )?;
    joints.push(vec![
        Cell::Text("trivial".into()),
        Cell::Int(5),
        Cell::Float(half.measure()),
        Cell::Float(p_trivial),
    ]);
    let elem = PhaseFamily::elementary(0, 2, C64::new(0.6, 0.0))?;
    let p_elem = joint_prob(&elem, &StateVector::basis(cfg.d_eval, 1)?, 1, &quarter, 1e-10)?;
    joints.push(vec![
        Cell::Text("elementary_0_2".into()),
        Cell::Int(1),
        Cell::Float(quarter.measure()),
        Cell::Float(p_elem),
    ]);

    let two_step_report = two_step_report.expect("panel contains two_step");
    let off = witness_off_mass(&two_step_report).unwrap_or(0.0);
    let proper = two_step_report.com_estimate_dim > two_step_report.pa_dim
        && two_step_report.witness.is_some()
        && off >= 0.9;

    let mut out = RunOutput::default();
    out.tables.push(norms);
    out.tables.push(reports);
    out.tables.push(joints);
    out.json_blobs.push((
        "com_report_two_step".into(),
        com_report_to_json(&two_step_report),
    ));
    out.verdicts.push(Verdict::check(
        "trivial_commutes",
        trivial_worst <= 1e-12,
        format!("max trivial commutator norm {trivial_worst:.3e}"),
    ));
    out.verdicts.push(Verdict::check(
        "canonical_totally_noncommutative",
        canonical_dim == 0,
        format!("canonical commutant estimate dimension {canonical_dim}"),
    ));
    out.verdicts.push(Verdict::check(
        "strong_estimate_matches_exact_set",
        strong_equal,
        "commutant estimate equals the exactly commuting span for canonical, trivial, ground_state"
            .to_string(),
    ));
    out.verdicts.push(Verdict::check(
        "proper_inclusion_witness",
        proper,
        format!(
            "two_step: pa_dim {} < estimate {}; witness off-span mass {off:.6}",
            two_step_report.pa_dim, two_step_report.com_estimate_dim
        ),
    ));
    Ok(out)
}

fn complementarity_run(
    cfg: &ExperimentConfig,
    rng: &mut ChaCha8Rng,
) -> Result<RunOutput, RunError> {
    let x = cfg.arc_set();
    let mut out = RunOutput::default();

    // infimum probe on the maximally coupled pair family
    let w = C64::new(1.0, 0.0);
    let probe_family = PhaseFamily::elementary(0, 1, w)?;
    let (e_minus, e_zero, e_plus) = elementary_spectrum_closed(0, 1, w, &x)?;
    let coupled_closed = if e_minus + e_plus > 0.0 {
        2.0 * e_minus * e_plus / (e_minus + e_plus)
    } else {
        0.0
    };
    let lam0 = complementarity_probe(&probe_family, &x, &[0], cfg.dim, DEFAULT_RANGE_TOL)?;
    let lam5 = complementarity_probe(&probe_family, &x, &[5], cfg.dim, DEFAULT_RANGE_TOL)?;
    let dev0 = (lam0 - coupled_closed).abs();
    let dev5 = (lam5 - e_zero).abs();
    let mut probe = Table::new("probe", &["index", "lambda", "closed", "deviation"]);
    probe.push(vec![
        Cell::Int(0),
        Cell::Float(lam0),
        Cell::Float(coupled_closed),
        Cell::Float(dev0),
    ]);
    probe.push(vec![
        Cell::Int(5),
        Cell::Float(lam5),
        Cell::Float(e_zero),
        Cell::Float(dev5),
    ]);
    out.tables.push(probe);
    out.verdicts.push(Verdict::check(
        "probe_coupled_pair",
        dev0 <= 1e-8,
        format!("lambda(P_0) = {lam0:.12}, closed {coupled_closed:.12}, dev {dev0:.3e}"),
    ));
    out.verdicts.push(Verdict::check(
        "probe_uncoupled_level",
        dev5 <= 1e-10,
        format!("lambda(P_5) = {lam5:.12}, closed {e_zero:.12}, dev {dev5:.3e}"),
    ));

    // random-state ceiling for the configured family
    let effect = build_effect(&cfg.family, &x, cfg.d_big)?;
    let mut states = Table::new("random_states", &["trial", "prob"]);
    let mut max_p = f64::NEG_INFINITY;
    let mut min_p = f64::INFINITY;
    for trial in 0..cfg.trials {
        let psi = random_unit_state(rng, cfg.d_big);
        let p = effect.expectation(&psi)?;
        max_p = max_p.max(p);
        min_p = min_p.min(p);
        states.push(vec![Cell::Int(trial as i64), Cell::Float(p)]);
    }
    out.tables.push(states);
    out.verdicts.push(Verdict::check(
        "no_sharp_phase_state",
        max_p <= 1.0 - 1e-6,
        format!(
            "probabilities in [{min_p:.9}, {max_p:.9}] over {} states at dim {}",
            cfg.trials, cfg.d_big
        ),
    ));

    // mixtures keep every number level reachable
    let mut mixtures = Table::new(
        "mixture_bounds",
        &["epsilon", "trial", "k", "measure", "lambda", "bound"],
    );
    let mut floor_holds = true;
    let mut worst_margin = f64::INFINITY;
    for &eps in &cfg.epsilons {
        for trial in 0..10 {
            let k = rng.gen_range(0..cfg.dim);
            let arcs = random_arcset(rng);
            let mb = mixture_bound_check(eps, &cfg.family, &arcs, k, cfg.dim, DEFAULT_RANGE_TOL)?;
            floor_holds &= mb.holds(1e-10);
            worst_margin = worst_margin.min(mb.lambda - mb.bound);
            mixtures.push(vec![
                Cell::Float(eps),
                Cell::Int(trial as i64),
                Cell::Int(k as i64),
                Cell::Float(arcs.measure()),
                Cell::Float(mb.lambda),
                Cell::Float(mb.bound),
            ]);
        }
    }
    out.tables.push(mixtures);
    out.verdicts.push(Verdict::check(
        "mixture_floor_holds",
        floor_holds,
        format!("worst infimum margin over the weight floor {worst_margin:.3e}"),
    ));
    Ok(out)
}

fn density_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let zero = PhaseSequence::zero();
    let mut out = RunOutput::default();

    let mut dump = Table::new("density_geometric", &["r", "theta", "g", "g_closed", "dev"]);
    let mut worst_poisson = 0.0f64;
    for &r in &cfg.rs {
        let dim = geometric_min_dim(r).max(cfg.dim);
        let grid = cfg.grid.max((2 * dim).next_power_of_two());
        let psi = geometric_state(r, &zero, dim)?;
        let dist = phase_density(&PhaseFamily::Canonical, &psi, grid)?;
        for j in 0..grid {
            let theta = dist.theta(j);
            let g = dist.density[j];
            let closed = density_canonical_geometric(r, theta)?;
            let dev = (g - closed).abs();
            worst_poisson = worst_poisson.max(dev);
            dump.push(vec![
                Cell::Float(r),
                Cell::Float(theta),
                Cell::Float(g),
                Cell::Float(closed),
                Cell::Float(dev),
            ]);
        }
    }
    out.tables.push(dump);
    out.verdicts.push(Verdict::check(
        "geometric_density_matches_closed_form",
        worst_poisson <= cfg.tol,
        format!("max deviation {worst_poisson:.3e}"),
    ));

    let mut coherent = Table::new("density_coherent", &["z", "theta", "g", "g_closed", "dev"]);
    let mut worst_coherent = 0.0f64;
    for &z in &cfg.zs {
        let dim = coherent_min_dim(z).max(cfg.dim);
        let grid = cfg.grid.max((2 * dim).next_power_of_two());
        let psi = coherent_state(z, dim)?;
        let dist = phase_density(&PhaseFamily::GroundState, &psi, grid)?;
        for j in 0..grid {
            let theta = dist.theta(j);
            let g = dist.density[j];
            let closed = density_groundstate_coherent(z, theta);
            let dev = (g - closed).abs();
            worst_coherent = worst_coherent.max(dev);
            coherent.push(vec![
                Cell::Float(z),
                Cell::Float(theta),
                Cell::Float(g),
                Cell::Float(closed),
                Cell::Float(dev),
            ]);
        }
    }
    out.tables.push(coherent);
    out.verdicts.push(Verdict::check(
        "coherent_density_matches_closed_form",
        worst_coherent <= cfg.tol,
        format!("max deviation {worst_coherent:.3e}"),
    ));

    let mut moments = Table::new("density_fourier", &["r", "k", "modulus", "closed", "dev"]);
    let mut worst_moment = 0.0f64;
    for &r in &cfg.rs {
        let dim = geometric_min_dim(r).max(cfg.dim);
        for k in 0..=8usize {
            let c = fourier_coeff(&PhaseFamily::Canonical, r, &zero, k, dim)?;
            let closed = r.powi(k as i32);
            let dev = (c.norm() - closed).abs().max(c.im.abs());
            worst_moment = worst_moment.max(dev);
            moments.push(vec![
                Cell::Float(r),
                Cell::Int(k as i64),
                Cell::Float(c.norm()),
                Cell::Float(closed),
                Cell::Float(dev),
            ]);
        }
    }
    out.tables.push(moments);
    out.verdicts.push(Verdict::check(
        "canonical_moments_are_powers",
        worst_moment <= 1e-10,
        format!("max deviation from r^k: {worst_moment:.3e}"),
    ));

    let trend_rs = [0.9, 0.99, 0.999];
    let mut trend = Table::new("density_fourier_trend", &["r", "k", "modulus", "gap"]);
    let mut moduli = Vec::new();
    for &r in &trend_rs {
        let dim = geometric_min_dim(r);
        let c1 = fourier_coeff(&PhaseFamily::GroundState, r, &zero, 1, dim)?;
        moduli.push(c1.norm());
        trend.push(vec![
            Cell::Float(r),
            Cell::Int(1),
            Cell::Float(c1.norm()),
            Cell::Float(1.0 - c1.norm()),
        ]);
    }
    let climbing = moduli.windows(2).all(|w| w[1] > w[0])
        && moduli.last().copied().unwrap_or(0.0) >= 0.99;
    out.tables.push(trend);
    out.verdicts.push(Verdict::check(
        "ground_state_moduli_climb_to_one",
        climbing,
        format!(
            "first-moment moduli {:?} along r in {:?}",
            moduli
                .iter()
                .map(|m| (m * 1e6).round() / 1e6)
                .collect::<Vec<_>>(),
            trend_rs
        ),
    ));
    Ok(out)
}

fn variance_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let zero = PhaseSequence::zero();
    let mut table = Table::new(
        "variance",
        &["r", "dim", "grid", "var", "alpha_star", "beta_star"],
    );
    let mut vars = Vec::new();
    for &r in &cfg.rs {
        let dim = geometric_min_dim(r).max(cfg.dim);
        let grid = cfg.grid.max((2 * dim).next_power_of_two());
        let psi = geometric_state(r, &zero, dim)?;
        let dist = phase_density(&cfg.family, &psi, grid)?;
        let mv = min_variance(&dist)?;
        vars.push(mv.var);
        table.push(vec![
            Cell::Float(r),
            Cell::Int(dim as i64),
            Cell::Int(grid as i64),
            Cell::Float(mv.var),
            Cell::Float(mv.alpha_star),
            Cell::Float(mv.beta_star),
        ]);
    }
    let uniform = PI * PI / 3.0;
    let bounded = vars.iter().all(|&v| v >= 0.0 && v <= uniform + 1e-9);
    let decreasing = vars.windows(2).all(|w| w[1] < w[0]);
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "variance_within_bounds",
        bounded,
        format!("all values inside [0, pi^2/3], max {:.6}", vars.iter().cloned().fold(0.0, f64::max)),
    ));
    out.verdicts.push(Verdict::check(
        "variance_decreasing_in_r",
        decreasing,
        format!("{} amplitudes, variances strictly falling", vars.len()),
    ));
    Ok(out)
}

fn uncertainty_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let mut table = Table::new("uncertainty", &["z", "VarN", "VAR", "product"]);
    let mut deviations = Vec::new();
    for &z in &cfg.zs {
        let dim = coherent_min_dim(z);
        if dim > cfg.dim {
            return Err(RunError::Guard(format!(
                "amplitude {z} needs dimension {dim}, cap is {}",
                cfg.dim
            )));
        }
        let grid = cfg.grid.max((2 * dim).next_power_of_two());
        let report = uncertainty_product(z, grid, dim)?;
        deviations.push((report.product - 0.25).abs());
        table.push(vec![
            Cell::Float(z),
            Cell::Float(report.number_var),
            Cell::Float(report.var),
            Cell::Float(report.product),
        ]);
    }
    let trend = deviations.windows(2).all(|w| w[1] < w[0]);
    let last_close = deviations.last().map(|&d| d <= 0.025).unwrap_or(false);
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "quarter_trend",
        trend && last_close,
        format!(
            "|product - 1/4| falls along z, final deviation {:.4e}",
            deviations.last().copied().unwrap_or(f64::NAN)
        ),
    ));
    Ok(out)
}

fn norm_scan_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let x = cfg.arc_set();
    let rows = norm_scan(&cfg.family, &x, &cfg.dims)?;
    let mut table = Table::new("norm_scan", &["dim", "norm", "gap"]);
    for row in &rows {
        table.push(vec![
            Cell::Int(row.dim as i64),
            Cell::Float(row.norm),
            Cell::Float(row.gap),
        ]);
    }
    let nondecreasing = rows.windows(2).all(|w| w[1].norm >= w[0].norm - 1e-12);
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "norm_nondecreasing",
        nondecreasing,
        format!("{} dimensions scanned", rows.len()),
    ));
    if cfg.family == PhaseFamily::Trivial {
        let mu = x.measure() / TAU;
        let constant = rows.iter().all(|row| row.norm == mu);
        out.verdicts.push(Verdict::check(
            "trivial_norm_constant",
            constant,
            format!("norm pinned at measure/2pi = {mu}"),
        ));
    } else {
        let last = rows.last().map(|row| row.norm).unwrap_or(0.0);
        out.verdicts.push(Verdict::check(
            "norm_approaches_one",
            last >= 0.99,
            format!(
                "norm {last:.9} at dim {}",
                rows.last().map(|row| row.dim).unwrap_or(0)
            ),
        ));
    }
    Ok(out)
}

fn value_scan_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let rows = value_comp_scan(&cfg.family, &cfg.rs, cfg.p, cfg.delta, cfg.dim)?;
    let mut table = Table::new(
        "value_scan",
        &["r", "dim", "head_mass", "head_mass_closed", "concentration"],
    );
    let mut worst_closed = 0.0f64;
    for row in &rows {
        worst_closed = worst_closed.max((row.head_mass - row.head_mass_closed).abs());
        table.push(vec![
            Cell::Float(row.r),
            Cell::Int(row.dim as i64),
            Cell::Float(row.head_mass),
            Cell::Float(row.head_mass_closed),
            Cell::Float(row.concentration),
        ]);
    }
    let head_falls = rows.windows(2).all(|w| w[1].head_mass < w[0].head_mass);
    let conc_climbs = rows
        .windows(2)
        .all(|w| w[1].concentration > w[0].concentration);
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "head_mass_matches_closed_form",
        worst_closed <= 1e-12,
        format!("max deviation {worst_closed:.3e}"),
    ));
    out.verdicts.push(Verdict::check(
        "number_localization_decays",
        head_falls,
        format!("head mass on 0..={} strictly falls along r", cfg.p),
    ));
    out.verdicts.push(Verdict::check(
        "phase_concentration_grows",
        conc_climbs,
        format!(
            "mass of the +-{} window strictly climbs, final {:.6}",
            cfg.delta,
            rows.last().map(|row| row.concentration).unwrap_or(0.0)
        ),
    ));
    Ok(out)
}

fn structure_run(cfg: &ExperimentConfig) -> Result<RunOutput, RunError> {
    let flags = cfg.family.structure_flags(cfg.dim, cfg.tol);
    let gram = cfg.family.validate_gram(cfg.dim);
    let a_set = com_ne_set(&cfg.family, cfg.dim, cfg.tol);
    let a_text = a_set
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let mut table = Table::new(
        "structure",
        &[
            "dim",
            "strong",
            "modulus_one",
            "extremal_certified",
            "max_chain_violation",
            "max_modulus_deviation",
            "gram_violation",
            "a_set_size",
            "a_set",
        ],
    );
    table.push(vec![
        Cell::Int(cfg.dim as i64),
        Cell::Bool(flags.is_strong),
        Cell::Bool(flags.is_modulus_one),
        Cell::Bool(flags.is_extremal_certified),
        Cell::Float(flags.max_chain_violation),
        Cell::Float(flags.max_modulus_deviation),
        Cell::Float(gram),
        Cell::Int(a_set.len() as i64),
        Cell::Text(a_text),
    ]);
    let mut out = RunOutput::default();
    out.tables.push(table);
    out.verdicts.push(Verdict::check(
        "leading_blocks_positive",
        gram <= GRAM_TOL,
        format!("worst negativity {gram:.3e} at dim {}", cfg.dim),
    ));
    Ok(out)
}
