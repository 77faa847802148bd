use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Scenario, ScenarioConfig, SweepAxis};
use super::output::{flag, num, opt, sha256_hex, write_table, CsvTable, PointStatus, RunManifest};
use crate::counting::{self, g2_zero_plus, perturbative_n, solve_bcs_ground_state, CountingModel};
use crate::error::{Error, Result};
use crate::micromaser::{
    coherence_sweep, relative_phase_distribution, single_well_distribution, steady_state, theta_sweep, Well,
    EDGE_WARNING,
};
use crate::momentum::{default_grid, momentum_distribution, MomentumModel};
use crate::passage::{
    build_sector, effective_potential, evolve_population, passage_time_with, semiclassical_nb, time_grid,
    InitialState, DEGENERATE_LIMIT_NOTE,
};

/// Result of [`run`]: where the artifacts went and the manifest.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub manifest: RunManifest,
}

struct Collected {
    tables: Vec<CsvTable>,
    points: Vec<PointStatus>,
}

fn ok(point: String, converged: bool, notes: Vec<String>) -> PointStatus {
    PointStatus { point, converged, error: None, notes }
}

fn failed(point: String, e: &Error) -> PointStatus {
    PointStatus { point, converged: false, error: Some(e.to_string()), notes: Vec::new() }
}

fn edge_note(edge: f64) -> Vec<String> {
    if edge > EDGE_WARNING {
        vec![format!("truncation edge population {edge:.3e}")]
    } else {
        Vec::new()
    }
}

fn initial_tag(i: InitialState) -> &'static str {
    match i {
        InitialState::AllAtoms => "atoms",
        InitialState::AllMolecules => "molecules",
    }
}

/// Runs `config`, writes CSVs to `out_dir` and the manifest last.
///
/// `workers` overrides the config's worker count; the default is rayon's.
pub fn run(config: &ScenarioConfig, out_dir: &Path, workers: Option<usize>) -> Result<RunReport> {
    config.validate()?;
    let start = Instant::now();
    let workers = workers.or(config.workers).unwrap_or_else(rayon::current_num_threads).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numerical(format!("worker pool: {e}")))?;
    let collected = pool.install(|| execute(&config.scenario));
    std::fs::create_dir_all(out_dir)?;
    let config_json = serde_json::to_value(config).map_err(|e| Error::Numerical(e.to_string()))?;
    let parameters = serde_json::to_string(&config_json["scenario"]).map_err(|e| Error::Numerical(e.to_string()))?;
    let kind = config.scenario.kind();
    let outputs = collected
        .tables
        .iter()
        .map(|t| write_table(out_dir, t, kind, &config.name, &parameters))
        .collect::<Result<Vec<_>>>()?;
    let canonical = serde_json::to_string(&config_json).map_err(|e| Error::Numerical(e.to_string()))?;
    let failed_points = collected.points.iter().filter(|p| p.error.is_some()).count();
    let manifest = RunManifest {
        name: config.name.clone(),
        scenario: kind.to_string(),
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        config_format: config.format,
        config_hash: sha256_hex(canonical.as_bytes()),
        config: config_json,
        workers,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        outputs,
        points: collected.points,
        failed_points,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Numerical(e.to_string()))?;
    std::fs::write(out_dir.join("manifest.json"), json + "\n")?;
    Ok(RunReport { out_dir: out_dir.to_path_buf(), manifest })
}

fn execute(scenario: &Scenario) -> Collected {
    match scenario {
        Scenario::MicromaserSweep { params, axis, grid, method } => match axis {
            SweepAxis::ThetaOverPi => {
                let thetas: Vec<f64> = grid.values().iter().map(|x| x * std::f64::consts::PI).collect();
                let rows = theta_sweep(params, &thetas, *method);
                let mut t = CsvTable::new(
                    "sweep.csv",
                    &["theta_over_pi", "mean", "mandel_q", "converged", "residual", "edge_population"],
                    "theta in units of pi; mean is <n_i> per well",
                )
                .validity("converged = 0 marks points whose stationary residual or truncation is outside tolerance");
                let mut points = Vec::new();
                for r in &rows {
                    let label = format!("theta/pi={}", num(r.theta / std::f64::consts::PI));
                    match &r.error {
                        Some(e) => points.push(PointStatus { point: label, converged: false, error: Some(e.clone()), notes: vec![] }),
                        None => points.push(ok(label, r.converged, edge_note(r.edge_population))),
                    }
                    t.push(vec![
                        num(r.theta / std::f64::consts::PI),
                        num(r.mean),
                        opt(r.q),
                        flag(r.converged && r.edge_population <= EDGE_WARNING),
                        num(r.residual),
                        num(r.edge_population),
                    ]);
                }
                Collected { tables: vec![t], points }
            }
            SweepAxis::UbOverTj => {
                let rows = coherence_sweep(params, &grid.values(), *method);
                let mut t = CsvTable::new(
                    "coherence.csv",
                    &["u_b_over_t_j", "jx", "jy", "jz", "mean_per_well", "jx_over_n_j", "converged"],
                    "angular momenta in molecule numbers; u_b and t_J in units of the decay rate",
                );
                let mut points = Vec::new();
                for r in &rows {
                    let label = format!("u_b/t_J={}", num(r.ratio));
                    points.push(PointStatus { point: label, converged: r.converged, error: r.error.clone(), notes: vec![] });
                    t.push(vec![
                        num(r.ratio),
                        num(r.jx),
                        num(r.jy),
                        num(r.jz),
                        num(r.mean_per_well),
                        num(r.normalized),
                        flag(r.converged),
                    ]);
                }
                Collected { tables: vec![t], points }
            }
        },
        Scenario::MicromaserPhase { params, u_b_over_t_j, phase_points, method } => {
            let ratios = u_b_over_t_j.values();
            let results: Vec<_> = ratios
                .par_iter()
                .map(|&ratio| {
                    let p = crate::micromaser::MicromaserParams { u_b: ratio * params.t_j, ..params.clone() };
                    steady_state(&p, *method).map(|s| (relative_phase_distribution(&s.rho, *phase_points), s))
                })
                .collect();
            let mut t = CsvTable::new("phase.csv", &["u_b_over_t_j", "phi", "density"], "phi in radians on [-pi, pi); density per radian");
            let mut points = Vec::new();
            for (ratio, r) in ratios.iter().zip(results) {
                let label = format!("u_b/t_J={}", num(*ratio));
                match r {
                    Ok((dist, s)) => {
                        points.push(ok(label, s.converged, edge_note(s.edge_population)));
                        for (phi, d) in dist.phases.iter().zip(&dist.density) {
                            t.push(vec![num(*ratio), num(*phi), num(*d)]);
                        }
                    }
                    Err(e) => points.push(failed(label, &e)),
                }
            }
            Collected { tables: vec![t], points }
        }
        Scenario::MicromaserDistribution { params, method } => {
            let mut t = CsvTable::new("distribution.csv", &["n", "p_left", "p_right"], "molecule number per well");
            let point = format!("theta/pi={}", num(params.theta / std::f64::consts::PI));
            let status = match steady_state(params, *method) {
                Ok(s) => {
                    let l = single_well_distribution(&s.rho, Well::Left);
                    let r = single_well_distribution(&s.rho, Well::Right);
                    for (n, (a, b)) in l.iter().zip(&r).enumerate() {
                        t.push(vec![n.to_string(), num(*a), num(*b)]);
                    }
                    ok(point, s.converged, edge_note(s.edge_population))
                }
                Err(e) => failed(point, &e),
            };
            Collected { tables: vec![t], points: vec![status] }
        }
        Scenario::PassageTime { n, initial, fraction, delta, options, population_points } => {
            passage(n, initial, *fraction, *delta, options, *population_points)
        }
        Scenario::Counting { model, times, coupling_sweep } => {
            counting_run(model, &times.values(), coupling_sweep.as_ref().map(|g| g.values()))
        }
        Scenario::Momentum { models, p } => momentum_run(models, p.as_ref().map(|g| g.values())),
    }
}

fn passage(
    ns: &[usize],
    initials: &[InitialState],
    fraction: f64,
    delta: f64,
    options: &crate::passage::PassageOptions,
    population_points: usize,
) -> Collected {
    let jobs: Vec<(usize, InitialState)> = ns.iter().flat_map(|&n| initials.iter().map(move |&i| (n, i))).collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(n, init)| {
            let sector = build_sector(n, delta)?;
            let passage = passage_time_with(&sector, init, fraction, options)?;
            let times = time_grid(n, options.span, population_points);
            let history = evolve_population(&sector, init, &times)?;
            Ok((passage, history))
        })
        .collect::<Vec<Result<_>>>();
    let mut summary = CsvTable::new(
        "passage_summary.csv",
        &["n", "initial", "n_ref", "mean", "std_dev", "peak_time", "unimodal", "clipped_at"],
        "times in 1/chi",
    )
    .validity(DEGENERATE_LIMIT_NOTE);
    let mut tables = Vec::new();
    let mut points = Vec::new();
    for (&(n, init), r) in jobs.iter().zip(results) {
        let tag = initial_tag(init);
        let label = format!("N={n} initial={tag}");
        match r {
            Ok((p, h)) => {
                points.push(ok(label, p.warnings.is_empty(), p.warnings.clone()));
                summary.push(vec![
                    n.to_string(),
                    tag.into(),
                    p.n_ref.to_string(),
                    num(p.mean),
                    num(p.std_dev),
                    num(p.peak_time()),
                    flag(p.is_unimodal(0.05)),
                    opt(p.clipped_at),
                ]);
                let mut w = CsvTable::new(
                    format!("passage_N{n}_{tag}.csv"),
                    &["t", "chi_sqrt_n_t", "cumulative", "density"],
                    "t in 1/chi; density per 1/chi",
                );
                let scaled = p.scaled_times();
                for k in 0..p.times.len() {
                    w.push(vec![num(p.times[k]), num(scaled[k]), num(p.cumulative[k]), num(p.density[k])]);
                }
                tables.push(w);
                let mean = h.mean();
                let mut pop = CsvTable::new(
                    format!("population_N{n}_{tag}.csv"),
                    &["t", "chi_sqrt_n_t", "mean_nb", "sinh2", "linear_regime"],
                    "t in 1/chi; molecule numbers",
                )
                .validity("linear_regime = 1 where <n_b>/N <= 0.2; sinh2 refers to the all-atoms start");
                for (t, m) in h.times.iter().zip(&mean) {
                    pop.push(vec![
                        num(*t),
                        num(t * (n as f64).sqrt()),
                        num(*m),
                        num(semiclassical_nb(n, *t)),
                        flag(*m / n as f64 <= 0.2),
                    ]);
                }
                tables.push(pop);
            }
            Err(e) => points.push(failed(label, &e)),
        }
    }
    tables.insert(0, summary);
    for &n in ns {
        let mut u = CsvTable::new(format!("potential_N{n}.csv"), &["n_b", "potential", "physical"], "n_b in molecules; U in chi^2")
            .validity("physical = 0 for n_b < 0");
        let lo = -0.1 * n as f64;
        for k in 0..=220 {
            let nb = lo + (n as f64 - lo) * k as f64 / 220.0;
            u.push(vec![num(nb), num(effective_potential(n, nb)), flag(nb >= 0.0)]);
        }
        tables.push(u);
    }
    Collected { tables, points }
}

fn counting_run(model: &CountingModel, times: &[f64], sweep: Option<Vec<f64>>) -> Collected {
    let mut tables = Vec::new();
    let mut points = Vec::new();
    match counting::evolve(model, times) {
        Ok(stats) => {
            let mut dist = CsvTable::new("distribution.csv", &["t", "n", "p"], "t in 1/chi");
            let mut summary = CsvTable::new(
                "summary.csv",
                &["t", "mean", "g2", "thermal_mean", "thermal_residual", "quoted_short_time_n"],
                "t in 1/chi; residual is a total-variation distance",
            )
            .validity("quoted_short_time_n is the first-order law, meaningful where <n> < 0.1");
            let fits = stats.thermal_fits();
            for (k, &t) in stats.times.iter().enumerate() {
                for (n, p) in stats.distributions[k].iter().enumerate() {
                    dist.push(vec![num(t), n.to_string(), num(*p)]);
                }
                summary.push(vec![
                    num(t),
                    num(stats.mean[k]),
                    opt(stats.g2[k]),
                    num(fits[k].mean),
                    num(fits[k].residual),
                    opt(perturbative_n(model, t).ok()),
                ]);
            }
            tables.push(dist);
            tables.push(summary);
            points.push(ok("evolution".into(), stats.norm_error() < 1e-8, vec![]));
        }
        Err(e) => points.push(failed("evolution".into(), &e)),
    }
    if let (Some(vs), CountingModel::Bcs { pair_energies, delta, mu, .. }) = (sweep, model) {
        let rows: Vec<_> = vs
            .par_iter()
            .map(|&v| {
                let gs = solve_bcs_ground_state(pair_energies, v, *mu)?;
                let m = CountingModel::Bcs { pair_energies: pair_energies.clone(), delta: *delta, v, mu: *mu };
                Ok((gs, g2_zero_plus(&m)?))
            })
            .collect::<Vec<Result<_>>>();
        let mut t = CsvTable::new(
            "g2_vs_gap.csv",
            &["v", "gap", "atom_number", "pair_amplitude", "t0", "g2", "g2_doubled"],
            "energies in hbar*chi; t0 in 1/chi",
        );
        for (v, r) in vs.iter().zip(rows) {
            let label = format!("V={}", num(*v));
            match r {
                Ok((gs, g)) => {
                    points.push(ok(label, gs.gap_residual() < 1e-8, vec![]));
                    t.push(vec![
                        num(*v),
                        num(gs.gap),
                        num(gs.atom_number()),
                        num(gs.pair_amplitude()),
                        num(g.t0),
                        num(g.g2),
                        num(g.g2_doubled),
                    ]);
                }
                Err(e) => points.push(failed(label, &e)),
            }
        }
        tables.push(t);
    }
    Collected { tables, points }
}

fn momentum_run(models: &[MomentumModel], grid: Option<Vec<f64>>) -> Collected {
    let mut tables = Vec::new();
    let mut points = Vec::new();
    let mut summary = CsvTable::new(
        "nofp_summary.csv",
        &["model", "coherent_peak", "noise_peak_valid", "ratio"],
        "values are V n(p)/(gt)^2",
    )
    .validity("noise_peak_valid is the largest noise value among valid points");
    for m in models {
        let p = grid.clone().unwrap_or_else(|| default_grid(m));
        let label = format!("model={}", m.name());
        match momentum_distribution(m, &p) {
            Ok(d) => {
                let mut t = CsvTable::new(
                    format!("nofp_{}.csv", m.name()),
                    &["p", "coherent", "noise", "total", "valid", "relative_error", "units"],
                    format!("p in {}; values are V n(p)/(gt)^2", m.momentum_unit()),
                )
                .validity("valid = 0 where the local-density noise term is outside its range (p < 2 pi/xi for the BEC)");
                for i in 0..d.p.len() {
                    t.push(vec![
                        num(d.p[i]),
                        num(d.coherent[i]),
                        num(d.noise[i]),
                        num(d.total[i]),
                        flag(d.valid[i]),
                        num(d.relative_error[i]),
                        m.momentum_unit().into(),
                    ]);
                }
                tables.push(t);
                let coherent_peak = d.coherent.iter().copied().fold(0.0, f64::max);
                let noise_peak = d.noise_peak().map(|(_, n)| n);
                summary.push(vec![
                    m.name().into(),
                    num(coherent_peak),
                    opt(noise_peak),
                    opt(noise_peak.map(|n| coherent_peak / n)),
                ]);
                let notes = if d.converged { vec![] } else { vec!["half-step quadrature check failed on some points".into()] };
                points.push(ok(label, d.converged, notes));
            }
            Err(e) => points.push(failed(label, &e)),
        }
    }
    tables.insert(0, summary);
    Collected { tables, points }
}
