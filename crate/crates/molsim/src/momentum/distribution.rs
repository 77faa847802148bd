use serde::{Deserialize, Serialize};

use super::quad::Quadrature;
use super::trap::{BecTrap, FermiTrap};

/// One quadrature-backed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub value: f64,
    /// Half-step (Richardson) estimate relative to `∫|integrand|`.
    pub relative_error: f64,
    pub converged: bool,
}

impl From<Quadrature> for Sample {
    fn from(q: Quadrature) -> Self {
        Self { value: q.value, relative_error: q.relative_error, converged: q.converged }
    }
}

impl Sample {
    pub(crate) fn exact(value: f64) -> Self {
        Self { value, relative_error: 0.0, converged: true }
    }
}

/// Trapped gas whose molecular momentum distribution is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MomentumModel {
    Bec(BecTrap),
    Nfg(FermiTrap),
    Bcs(FermiTrap),
}

impl MomentumModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Bec(_) => "bec",
            Self::Nfg(_) => "nfg",
            Self::Bcs(_) => "bcs",
        }
    }

    /// Momentum unit of the `p` column.
    pub fn momentum_unit(&self) -> &'static str {
        match self {
            Self::Bec(_) => "hbar/a_osc",
            Self::Nfg(_) | Self::Bcs(_) => "hbar*k_F(0)",
        }
    }
}

/// `V n(p)/(gt)²` on a radial momentum grid.
#[derive(Debug, Clone, Serialize)]
pub struct RadialMomentumDistribution {
    pub model: MomentumModel,
    pub p: Vec<f64>,
    pub coherent: Vec<f64>,
    pub noise: Vec<f64>,
    pub total: Vec<f64>,
    /// `false` where the noise term is outside its validity range.
    pub valid: Vec<bool>,
    /// Largest half-step estimate per point over both terms.
    pub relative_error: Vec<f64>,
    /// Every quadrature met the half-step tolerance.
    pub converged: bool,
}

impl RadialMomentumDistribution {
    pub(crate) fn assemble(model: MomentumModel, p: &[f64], coherent: Vec<Sample>, noise: Vec<Sample>, valid: Vec<bool>) -> Self {
        let total = coherent.iter().zip(&noise).map(|(c, n)| c.value + n.value).collect();
        let relative_error = coherent.iter().zip(&noise).map(|(c, n)| c.relative_error.max(n.relative_error)).collect();
        let converged = coherent.iter().chain(&noise).all(|s| s.converged);
        Self {
            model,
            p: p.to_vec(),
            coherent: coherent.iter().map(|s| s.value).collect(),
            noise: noise.iter().map(|s| s.value).collect(),
            total,
            valid,
            relative_error,
            converged,
        }
    }

    /// Largest noise value over valid points, with its momentum.
    pub fn noise_peak(&self) -> Option<(f64, f64)> {
        self.p
            .iter()
            .zip(&self.noise)
            .zip(&self.valid)
            .filter(|(_, &v)| v)
            .map(|((&p, &n), _)| (p, n))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}
