use rayon::prelude::*;
use serde::Serialize;

use super::generator::Well;
use super::observables::{angular_momentum, mandel_q, moments, single_well_distribution};
use super::params::MicromaserParams;
use super::steady::{steady_state, SteadyStateMethod};

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub mean: f64,
    /// Mandel parameter, `None` where `⟨n⟩ = 0`.
    pub q: Option<f64>,
    pub converged: bool,
    pub residual: f64,
    pub edge_population: f64,
    pub error: Option<String>,
}

/// Steady-state `⟨n_i⟩` and Mandel Q on a grid of pump parameters.
///
/// Points run in parallel; the result is sorted by Θ. Failing points keep a
/// row with `NaN` observables and the error message.
pub fn theta_sweep(template: &MicromaserParams, thetas: &[f64], method: SteadyStateMethod) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = thetas
        .par_iter()
        .map(|&theta| {
            let params = MicromaserParams { theta, ..template.clone() };
            match steady_state(&params, method) {
                Ok(s) => {
                    let p = single_well_distribution(&s.rho, Well::Left);
                    SweepRow {
                        theta,
                        mean: moments(&p).0,
                        q: mandel_q(&p),
                        converged: s.converged,
                        residual: s.residual,
                        edge_population: s.edge_population,
                        error: None,
                    }
                }
                Err(e) => SweepRow {
                    theta,
                    mean: f64::NAN,
                    q: None,
                    converged: false,
                    residual: f64::NAN,
                    edge_population: f64::NAN,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    rows.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    rows
}

#[derive(Debug, Clone, Serialize)]
pub struct CoherenceRow {
    /// `u_b / t_J`.
    pub ratio: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    /// `⟨N⟩/2`.
    pub mean_per_well: f64,
    pub normalized: f64,
    pub converged: bool,
    pub error: Option<String>,
}

/// Steady-state `⟨J_x⟩/⟨n_j⟩` against the collision-to-tunneling ratio at the
/// template's `t_J`.
pub fn coherence_sweep(template: &MicromaserParams, ratios: &[f64], method: SteadyStateMethod) -> Vec<CoherenceRow> {
    let mut rows: Vec<CoherenceRow> = ratios
        .par_iter()
        .map(|&ratio| {
            let params = MicromaserParams { u_b: ratio * template.t_j, ..template.clone() };
            let result = steady_state(&params, method).and_then(|s| Ok((angular_momentum(&s.rho)?, s.converged)));
            match result {
                Ok((j, converged)) => {
                    let per_well = 0.5 * j.total;
                    CoherenceRow {
                        ratio,
                        jx: j.jx,
                        jy: j.jy,
                        jz: j.jz,
                        mean_per_well: per_well,
                        normalized: if per_well > 0.0 { j.jx / per_well } else { f64::NAN },
                        converged,
                        error: None,
                    }
                }
                Err(e) => CoherenceRow {
                    ratio,
                    jx: f64::NAN,
                    jy: f64::NAN,
                    jz: f64::NAN,
                    mean_per_well: f64::NAN,
                    normalized: f64::NAN,
                    converged: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    rows.sort_by(|a, b| a.ratio.total_cmp(&b.ratio));
    rows
}
