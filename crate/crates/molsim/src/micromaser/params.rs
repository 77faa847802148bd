use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Dimensionless micromaser parameters. Rates and times are in units of the
/// molecular decay rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MicromaserParams {
    /// Photo-association cycles per molecular lifetime.
    pub n_ex: f64,
    /// Pump parameter, `√N_ex · |χ|τ`.
    pub theta: f64,
    /// Two-body collision strength.
    pub u_b: f64,
    /// Inter-well tunneling.
    pub t_j: f64,
    /// Linear detuning.
    pub eta: f64,
    /// Nonlinear detuning.
    pub beta: f64,
    /// Fock truncation per well.
    pub n_max: usize,
    /// RK4 step.
    pub dt: f64,
    /// Integration horizon.
    pub t_max: f64,
}

impl Default for MicromaserParams {
    fn default() -> Self {
        Self {
            n_ex: 10.0,
            theta: std::f64::consts::PI,
            u_b: 0.0,
            t_j: 0.0,
            eta: 0.0,
            beta: 0.0,
            n_max: 12,
            dt: 1e-3,
            t_max: 50.0,
        }
    }
}

impl MicromaserParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.n_ex > 0.0 && self.n_ex.is_finite()) {
            return Err(invalid("n_ex", "must be positive"));
        }
        if !(self.theta >= 0.0 && self.theta.is_finite()) {
            return Err(invalid("theta", "must be non-negative and finite"));
        }
        if self.n_max < 1 {
            return Err(invalid("n_max", "must be at least 1"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", "must be positive"));
        }
        if !(self.t_max > 0.0) {
            return Err(invalid("t_max", "must be positive"));
        }
        for (name, v) in [("u_b", self.u_b), ("t_j", self.t_j), ("eta", self.eta), ("beta", self.beta)] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        Ok(())
    }

    /// Dark interval between pulses, `γT = 1/N_ex`.
    pub fn gamma_t(&self) -> f64 {
        1.0 / self.n_ex
    }

    /// Pulse area per unit coupling, `|χ|τ = Θ/√N_ex`.
    pub fn chi_tau(&self) -> f64 {
        self.theta / self.n_ex.sqrt()
    }

    pub fn is_resonant(&self) -> bool {
        self.eta == 0.0 && self.beta == 0.0
    }
}
