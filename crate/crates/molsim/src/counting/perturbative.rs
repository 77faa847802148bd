use serde::Serialize;

use super::bcs::solve_bcs_ground_state;
use super::model::{evolve, CountingModel};
use crate::error::{Error, Result};

/// Mean molecule number at which "0⁺" quantities are read off.
pub const ZERO_PLUS_MEAN: f64 = 1e-3;

/// Quoted short-time laws: BEC `(χt)² 2N_max(2N_max−1)`, NFG `(χt)² 2N_a`,
/// BCS `(χt)² [(Δ/V)² + N_a]`.
pub fn perturbative_n(model: &CountingModel, t: f64) -> Result<f64> {
    model.validate()?;
    let t2 = t * t;
    Ok(match model {
        CountingModel::Bec { n_max, .. } => {
            let n = *n_max as f64;
            t2 * 2.0 * n * (2.0 * n - 1.0)
        }
        CountingModel::Nfg { .. } => t2 * 2.0 * model.atom_number()?,
        CountingModel::Bcs { pair_energies, v, mu, .. } => {
            let gs = solve_bcs_ground_state(pair_energies, *v, *mu)?;
            if gs.trivial {
                t2 * gs.atom_number()
            } else {
                t2 * ((gs.gap / gs.coupling).powi(2) + gs.atom_number())
            }
        }
    })
}

/// Exact `lim n(t)/t²` as `t → 0`: `‖V_c ψ₀‖²` for the conversion operator
/// `V_c = b†c²` or `b† Σ σ⁻_k`.
pub fn first_order_coefficient(model: &CountingModel) -> Result<f64> {
    model.validate()?;
    Ok(match model {
        CountingModel::Bec { n_max, .. } => {
            let a = 2.0 * *n_max as f64;
            a * (a - 1.0)
        }
        CountingModel::Nfg { .. } => 0.5 * model.atom_number()?,
        CountingModel::Bcs { pair_energies, v, mu, .. } => {
            let gs = solve_bcs_ground_state(pair_energies, *v, *mu)?;
            gs.pair_amplitude().powi(2) + gs.v.iter().map(|v| v.powi(4)).sum::<f64>()
        }
    })
}

/// `g²(t₀)` at the time where `⟨n⟩ = 1e−3`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct G2ZeroPlus {
    pub t0: f64,
    pub g2: f64,
    /// Same quantity at `2t₀`.
    pub g2_doubled: f64,
}

pub fn g2_zero_plus(model: &CountingModel) -> Result<G2ZeroPlus> {
    let c = first_order_coefficient(model)?;
    if !(c > 0.0) {
        return Err(Error::Numerical("no molecules are produced at first order".into()));
    }
    let guess = (ZERO_PLUS_MEAN / c).sqrt();
    let mut times: Vec<f64> = (0..=40).map(|j| guess * (0.8 + 0.01 * j as f64)).collect();
    times.push(2.0 * guess);
    let stats = evolve(model, &times)?;
    let g2_at = |k: usize| stats.g2[k].ok_or_else(|| Error::Numerical("g2 undefined at t0".into()));
    let last = times.len() - 1;
    let k = (0..40)
        .find(|&k| stats.mean[k] <= ZERO_PLUS_MEAN && stats.mean[k + 1] >= ZERO_PLUS_MEAN)
        .ok_or_else(|| Error::Numerical("<n> = 1e-3 not bracketed near the first-order estimate".into()))?;
    let s = (ZERO_PLUS_MEAN - stats.mean[k]) / (stats.mean[k + 1] - stats.mean[k]);
    let t0 = times[k] + s * (times[k + 1] - times[k]);
    let g2 = g2_at(k)? + s * (g2_at(k + 1)? - g2_at(k)?);
    Ok(G2ZeroPlus { t0, g2, g2_doubled: g2_at(last)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::caption_pair_energies;

    #[test]
    fn quoted_arithmetic() {
        let bec = CountingModel::Bec { n_max: 30, delta: 0.0 };
        assert!((perturbative_n(&bec, 0.01).unwrap() - 0.354).abs() < 1e-12);
        let nfg = CountingModel::Nfg { pair_energies: caption_pair_energies(10, 0.1), delta: 0.0, filled: None };
        assert!((perturbative_n(&nfg, 0.01).unwrap() - 0.004).abs() < 1e-15);
    }

    #[test]
    fn bec_first_order_matches_quoted_law() {
        let bec = CountingModel::Bec { n_max: 12, delta: 0.0 };
        assert_eq!(first_order_coefficient(&bec).unwrap(), perturbative_n(&bec, 1.0).unwrap());
    }
}
