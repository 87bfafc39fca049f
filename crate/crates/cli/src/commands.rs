//! Subcommand implementations.

use std::io::Write;
use std::path::Path;

use resonant::dynamics::{integrate, ApproxOptions, ResonantRhs};
use resonant::experiments::{
    run_approx_study, run_bounds_check, run_stationary_table, run_symmetry_suite, sci, Report, SymmetryOptions,
};
use resonant::io::{read_matrix, resolve_state, write_state};
use resonant::multilinear::{decompose_isometry, e_functional, FunctionalRoute, Normalization, ResonantConfig};
use serde_json::{json, Value};

use crate::config::FileConfig;
use crate::{Cli, CliError, Command, RouteArg};

/// Residual above which a stationary row counts as a failed check.
const STATIONARY_TOL: f64 = 1e-8;
const DEFAULT_BOUNDS_MODES: usize = 6;
const DEFAULT_STATE_MODES: usize = 8;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let flags = FileConfig {
        n_modes: g.n_modes,
        m_times: g.m_times,
        m_theta: g.m_theta,
        normalization: g.normalization,
        threads: g.threads,
    };
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let cfg = file.overridden_by(&flags);
    if let Some(t) = cfg.threads {
        if t == 0 {
            return Err(CliError::validation("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::validation(format!("cannot configure thread pool: {e}")))?;
    }
    let out = Output { json: g.json };

    match cli.command {
        Command::Stationary { k, n_max } => stationary(&cfg, &out, k, n_max),
        Command::Evolve { k, init, t_end, dt, out: csv, sample_every, final_state } => {
            evolve(&cfg, &out, k, &init, t_end, dt, csv.as_deref(), sample_every, final_state.as_deref())
        }
        Command::Approx { k, eps, s, out: csv, dt } => approx(&cfg, &out, k, &eps, s, dt, csv.as_deref()),
        Command::Symmetry { k, seed, draws } => symmetry(&cfg, &out, k, seed, draws),
        Command::Bounds { k, trials, seed } => bounds(&cfg, &out, k, trials, seed),
        Command::Functional { k, route, inputs } => functional(&cfg, &out, k, route, &inputs),
        Command::Decompose { matrix } => decompose(&out, &matrix),
    }
}

struct Output {
    json: bool,
}

impl Output {
    /// Resolved config line, printed before any work starts.
    fn echo(&self, config: &Value) {
        if !self.json {
            println!("resolved config: {config}");
        }
        let _ = std::io::stdout().flush();
    }

    fn report(&self, r: &Report) {
        if self.json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.to_text());
        }
    }
}

fn check_k(k: usize) -> Result<(), CliError> {
    if (1..=2).contains(&k) {
        Ok(())
    } else {
        Err(CliError::validation(format!("--k must be 1 (cubic) or 2 (quintic), got {k}")))
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
}

fn resonant_json(c: &ResonantConfig) -> Value {
    serde_json::to_value(c).expect("config serialises")
}

fn stationary(cfg: &FileConfig, out: &Output, k: usize, n_max: usize) -> Result<(), CliError> {
    check_k(k)?;
    let rc = cfg.resonant(k, n_max + 3)?;
    let table = run_stationary_table(&rc, n_max)?;
    let config = resonant_json(&table.config);
    out.echo(&config);
    let mut r = Report::new("stationary", config, None);
    r.columns = ["n", "omega", "omega_full", "omega_imag", "residual"].map(String::from).to_vec();
    let mut worst = 0.0f64;
    for w in &table.rows {
        worst = worst.max(w.residual);
        r.rows.push(vec![
            w.n.to_string(),
            format!("{:.7}", w.omega),
            format!("{:.15e}", w.omega),
            sci(w.omega_imag),
            sci(w.residual),
        ]);
    }
    r.summary.push(("max residual".into(), sci(worst)));
    let passed = worst < STATIONARY_TOL;
    r.passed = Some(passed);
    r.data = serde_json::to_value(&table).expect("table serialises");
    out.report(&r);
    if !passed {
        return Err(CliError::numerical(format!("stationary residual {} exceeds {STATIONARY_TOL:e}", sci(worst))));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn evolve(
    cfg: &FileConfig,
    out: &Output,
    k: usize,
    init: &str,
    t_end: f64,
    dt: f64,
    csv: Option<&Path>,
    sample_every: usize,
    final_state: Option<&Path>,
) -> Result<(), CliError> {
    check_k(k)?;
    let u0 = resolve_state(init, cfg.n_modes.unwrap_or(DEFAULT_STATE_MODES))?;
    let n = cfg.n_modes.unwrap_or(u0.n_modes());
    if u0.n_modes() > n {
        return Err(CliError::validation(format!(
            "initial state has {} modes but --n-modes is {n}; raise --n-modes",
            u0.n_modes()
        )));
    }
    let rc = cfg.resonant(k, n)?;
    let mut config = resonant_json(&rc);
    config["init"] = json!(init);
    config["t_end"] = json!(t_end);
    config["dt"] = json!(dt);
    config["sample_every"] = json!(sample_every);
    // With no --out the CSV goes to stdout, so keep the echo off it.
    if csv.is_some() {
        out.echo(&config);
    } else {
        eprintln!("resolved config: {config}");
    }
    let rhs = ResonantRhs::<f64>::new(rc)?;
    let traj = integrate(&rhs, &u0, t_end, dt, sample_every)?;
    let text = traj.to_csv();
    if let Some(fs) = final_state {
        write_state(fs, traj.final_state())?;
    }
    match csv {
        Some(path) => {
            write_file(path, &text)?;
            let mut r = Report::new("evolve", config, None);
            r.summary = vec![
                ("samples".into(), traj.invariants.len().to_string()),
                ("mass drift".into(), sci(traj.drift(|r| r.mass))),
                ("energy drift".into(), sci(traj.drift(|r| r.energy))),
                ("hamiltonian drift".into(), sci(traj.drift(|r| r.hamiltonian))),
                ("csv".into(), path.display().to_string()),
            ];
            out.report(&r);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn approx(
    cfg: &FileConfig,
    out: &Output,
    k: usize,
    eps: &[f64],
    s: f64,
    dt: f64,
    csv: Option<&Path>,
) -> Result<(), CliError> {
    check_k(k)?;
    if let Some(&bad) = eps.iter().find(|e| !(**e > 0.0 && **e <= 0.2)) {
        return Err(CliError::validation(format!("--eps values must lie in (0, 0.2], got {bad}")));
    }
    if !(s > 0.5 && s.is_finite()) {
        return Err(CliError::validation(format!("--s must exceed 1/2, got {s}")));
    }
    let mut opts = ApproxOptions { dt, ..ApproxOptions::default() };
    if let Some(n) = cfg.n_modes {
        opts.n_modes = n;
    }
    // Both flows use the time-average normalisation regardless of the flag.
    let rc = ResonantConfig::new(k, opts.n_modes)?.with_normalization(Normalization::TimeAverage);
    let mut config = resonant_json(&rc);
    config["eps"] = json!(eps);
    config["s"] = json!(s);
    config["dt"] = json!(dt);
    config["sample_every"] = json!(opts.sample_every);
    out.echo(&config);
    let study = run_approx_study(k, eps, s, &opts)?;
    if let Some(path) = csv {
        let mut text = String::from("epsilon,t,error\n");
        for c in &study.curves {
            for (t, e) in c.times.iter().zip(&c.errors) {
                text.push_str(&format!("{},{},{}\n", c.epsilon, t, e));
            }
        }
        write_file(path, &text)?;
    }
    let mut r = Report::new("approx", config, None);
    r.columns = ["epsilon", "horizon", "sup_error", "sup_error/eps^3"].map(String::from).to_vec();
    for c in &study.curves {
        r.rows.push(vec![c.epsilon.to_string(), sci(c.horizon), sci(c.sup_error), sci(c.fitted_constant)]);
    }
    if let Some(p) = study.fitted_exponent {
        r.summary.push(("fitted exponent".into(), format!("{p:.4}")));
    }
    r.data = serde_json::to_value(&study).expect("study serialises");
    out.report(&r);
    Ok(())
}

fn symmetry(cfg: &FileConfig, out: &Output, k: usize, seed: u64, draws: usize) -> Result<(), CliError> {
    check_k(k)?;
    if draws == 0 {
        return Err(CliError::validation("--draws must be at least 1"));
    }
    let mut opts = SymmetryOptions { draws, ..SymmetryOptions::default() };
    if let Some(n) = cfg.n_modes {
        opts.base_modes = n;
    }
    let config = json!({ "k": k, "options": opts });
    out.echo(&config);
    let rep = run_symmetry_suite(k, seed, &opts)?;
    let mut r = Report::new("symmetry", config, Some(seed));
    r.columns = ["symmetry", "max_deviation", "passed"].map(String::from).to_vec();
    for res in &rep.results {
        r.rows.push(vec![res.name.clone(), sci(res.max_deviation), res.passed.to_string()]);
    }
    r.passed = Some(rep.passed);
    r.data = serde_json::to_value(&rep).expect("report serialises");
    out.report(&r);
    if !rep.passed {
        return Err(CliError::numerical(format!("symmetry deviation above {:e}", opts.tolerance)));
    }
    Ok(())
}

fn bounds(cfg: &FileConfig, out: &Output, k: usize, trials: usize, seed: u64) -> Result<(), CliError> {
    check_k(k)?;
    if trials == 0 {
        return Err(CliError::validation("--trials must be at least 1"));
    }
    let n = cfg.n_modes.unwrap_or(DEFAULT_BOUNDS_MODES);
    let config = json!({ "k": k, "n_modes": n, "trials": trials });
    out.echo(&config);
    let rep = run_bounds_check(k, trials, seed, n)?;
    let mut r = Report::new("bounds", config, Some(seed));
    r.summary = vec![
        ("bound".into(), format!("{:.10}", rep.bound)),
        ("max ratio".into(), format!("{:.10}", rep.max_ratio)),
        ("violations".into(), rep.violations.to_string()),
    ];
    let passed = rep.violations == 0;
    r.passed = Some(passed);
    r.data = serde_json::to_value(&rep).expect("report serialises");
    out.report(&r);
    if !passed {
        return Err(CliError::numerical(format!("{} of {trials} draws exceed the bound", rep.violations)));
    }
    Ok(())
}

fn functional(cfg: &FileConfig, out: &Output, k: usize, route: RouteArg, inputs: &[String]) -> Result<(), CliError> {
    check_k(k)?;
    let arity = 2 * k + 2;
    if inputs.len() != arity {
        return Err(CliError::validation(format!("--inputs needs {arity} states for k = {k}, got {}", inputs.len())));
    }
    let n_tokens = cfg.n_modes.unwrap_or(DEFAULT_STATE_MODES);
    let states = inputs.iter().map(|t| resolve_state(t, n_tokens)).collect::<Result<Vec<_>, _>>()?;
    let n = states.iter().map(|s| s.n_modes()).max().unwrap_or(1);
    let states: Vec<_> = states.iter().map(|s| s.padded(n)).collect();
    let m_theta = cfg.m_theta.unwrap_or(resonant::multilinear::DEFAULT_M_THETA);
    let route = match route {
        RouteArg::Theta => FunctionalRoute::ThetaIntegral,
        RouteArg::Sum => FunctionalRoute::HermiteSum,
    };
    let config = json!({ "k": k, "n_modes": n, "m_theta": m_theta, "route": route, "inputs": inputs });
    out.echo(&config);
    let refs: Vec<_> = states.iter().collect();
    let e = e_functional(k, &refs, route, m_theta)?;
    let mut r = Report::new("functional", config, None);
    r.summary = vec![
        ("E".into(), format!("{:.7}", e.re)),
        ("re".into(), format!("{:.15e}", e.re)),
        ("im".into(), format!("{:.15e}", e.im)),
    ];
    r.data = json!({ "re": e.re, "im": e.im });
    out.report(&r);
    Ok(())
}

fn decompose(out: &Output, matrix: &Path) -> Result<(), CliError> {
    let a = read_matrix(matrix)?;
    let config = json!({ "matrix": matrix.display().to_string(), "dim": a.dim() });
    out.echo(&config);
    let d = decompose_isometry(&a)?;
    let rebuilt = d.reconstruct();
    let err = a
        .rows()
        .iter()
        .zip(&rebuilt)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .fold(0.0f64, f64::max);
    let mut r = Report::new("decompose", config, None);
    r.summary = vec![
        ("good pairs".into(), format!("{:?}", d.good_pairs)),
        ("bad pairs".into(), format!("{:?}", d.bad_pairs)),
        ("sigma1".into(), format!("{:?}", d.sigma1)),
        ("sigma2".into(), format!("{:?}", d.sigma2)),
        ("residual".into(), format!("{:?}", d.residual)),
        ("reconstruction error".into(), sci(err)),
    ];
    r.data = json!({
        "good_pairs": d.good_pairs,
        "bad_pairs": d.bad_pairs,
        "sigma1": d.sigma1,
        "sigma2": d.sigma2,
        "residual": d.residual,
        "reconstruction_error": err,
    });
    out.report(&r);
    Ok(())
}
