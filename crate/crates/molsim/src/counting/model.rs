use serde::{Deserialize, Serialize};

use super::bcs::solve_bcs_ground_state;
use super::bec::evolve_bec;
use super::fermi::{evolve_bcs, evolve_nfg};
use super::stats::CountingStatistics;
use crate::error::{invalid, Result};

/// Largest number of fermion pair modes accepted.
pub const MAX_PAIR_MODES: usize = 14;

/// One of the three atomic sources.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CountingModel {
    Bec {
        n_max: usize,
        #[serde(default)]
        delta: f64,
    },
    Nfg {
        pair_energies: Vec<f64>,
        #[serde(default)]
        delta: f64,
        /// Initially occupied pair modes; all of them when absent.
        #[serde(default)]
        filled: Option<Vec<bool>>,
    },
    Bcs {
        pair_energies: Vec<f64>,
        #[serde(default)]
        delta: f64,
        v: f64,
        mu: f64,
    },
}

/// Pair energies `ω_i = μ (k_i/k_F)²` on `|k_i| = (i−1)·2k_F/(M−1)`.
pub fn caption_pair_energies(m: usize, mu: f64) -> Vec<f64> {
    if m == 1 {
        return vec![0.0];
    }
    (0..m).map(|i| mu * (2.0 * i as f64 / (m - 1) as f64).powi(2)).collect()
}

impl CountingModel {
    pub fn validate(&self) -> Result<()> {
        let check_modes = |e: &[f64]| {
            if e.is_empty() {
                return Err(invalid("pair_energies", "need at least one pair mode"));
            }
            if e.len() > MAX_PAIR_MODES {
                return Err(invalid("pair_energies", format!("{} modes exceed the limit of {MAX_PAIR_MODES}", e.len())));
            }
            if e.iter().any(|w| !w.is_finite()) {
                return Err(invalid("pair_energies", "must be finite"));
            }
            Ok(())
        };
        match self {
            CountingModel::Bec { n_max, delta } => {
                if *n_max == 0 {
                    return Err(invalid("n_max", "need at least one atom pair"));
                }
                if !delta.is_finite() {
                    return Err(invalid("delta", "must be finite"));
                }
            }
            CountingModel::Nfg { pair_energies, delta, filled } => {
                check_modes(pair_energies)?;
                if !delta.is_finite() {
                    return Err(invalid("delta", "must be finite"));
                }
                if let Some(f) = filled {
                    if f.len() != pair_energies.len() {
                        return Err(invalid("filled", "one flag per pair mode"));
                    }
                }
            }
            CountingModel::Bcs { pair_energies, delta, v, mu } => {
                check_modes(pair_energies)?;
                if !(delta.is_finite() && mu.is_finite() && v.is_finite() && *v >= 0.0) {
                    return Err(invalid("v", "need finite δ, μ and V ≥ 0"));
                }
            }
        }
        Ok(())
    }

    /// Total atom number at `t = 0` (expected value for BCS).
    pub fn atom_number(&self) -> Result<f64> {
        Ok(match self {
            CountingModel::Bec { n_max, .. } => 2.0 * *n_max as f64,
            CountingModel::Nfg { pair_energies, filled, .. } => {
                2.0 * filled.as_ref().map_or(pair_energies.len(), |f| f.iter().filter(|&&x| x).count()) as f64
            }
            CountingModel::Bcs { pair_energies, v, mu, .. } => {
                solve_bcs_ground_state(pair_energies, *v, *mu)?.atom_number()
            }
        })
    }
}

/// Exact evolution of `model` from the molecular vacuum.
pub fn evolve(model: &CountingModel, times: &[f64]) -> Result<CountingStatistics> {
    model.validate()?;
    match model {
        CountingModel::Bec { n_max, delta } => evolve_bec(*n_max, *delta, times),
        CountingModel::Nfg { pair_energies, delta, filled } => {
            let filled = filled.clone().unwrap_or_else(|| vec![true; pair_energies.len()]);
            evolve_nfg(pair_energies, *delta, &filled, times)
        }
        CountingModel::Bcs { pair_energies, delta, v, mu } => {
            let gs = solve_bcs_ground_state(pair_energies, *v, *mu)?;
            evolve_bcs(pair_energies, *delta, &gs, times)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caption_grid_spans_twice_fermi_momentum() {
        let w = caption_pair_energies(10, 0.1);
        assert_eq!(w.len(), 10);
        assert_eq!(w[0], 0.0);
        assert!((w[9] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_too_many_modes() {
        let m = CountingModel::Nfg { pair_energies: vec![0.0; 15], delta: 0.0, filled: None };
        assert!(m.validate().is_err());
        let m = CountingModel::Bec { n_max: 0, delta: 0.0 };
        assert!(m.validate().is_err());
    }

    #[test]
    fn parses_tagged_toml() {
        let m: CountingModel = toml::from_str("kind = \"bec\"\nn_max = 30\n").unwrap();
        assert_eq!(m, CountingModel::Bec { n_max: 30, delta: 0.0 });
    }
}
