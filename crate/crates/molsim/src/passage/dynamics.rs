use qdyn_core::{HermitianOperator, Propagator, StateVector};
use serde::{Deserialize, Serialize};

use super::sector::TcSector;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialState {
    /// `|n_b = 0⟩`, a filled Fermi sea.
    AllAtoms,
    /// `|n_b = N⟩`, a molecular condensate.
    AllMolecules,
}

impl InitialState {
    pub fn molecules(self, n: usize) -> usize {
        match self {
            InitialState::AllAtoms => 0,
            InitialState::AllMolecules => n,
        }
    }

    /// Number of pairs converted away from the initial configuration.
    pub fn converted(self, n: usize, n_b: usize) -> usize {
        match self {
            InitialState::AllAtoms => n_b,
            InitialState::AllMolecules => n - n_b,
        }
    }
}

/// `P(n_b, t)` on a time grid; `probabilities[k][n_b]` belongs to `times[k]`.
#[derive(Debug, Clone)]
pub struct PopulationHistory {
    pub n: usize,
    pub initial: InitialState,
    pub times: Vec<f64>,
    pub probabilities: Vec<Vec<f64>>,
    pub energies: Vec<f64>,
}

impl PopulationHistory {
    pub fn mean(&self) -> Vec<f64> {
        self.probabilities.iter().map(|p| p.iter().enumerate().map(|(k, q)| k as f64 * q).sum()).collect()
    }

    /// Largest `|ΣP − 1|` over the grid.
    pub fn norm_error(&self) -> f64 {
        self.probabilities.iter().map(|p| (p.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Largest deviation of `⟨H⟩` from its initial value.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energies.first().copied().unwrap_or(0.0);
        self.energies.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max)
    }
}

/// `points` equally spaced times on `[0, span/√N]`.
pub fn time_grid(n: usize, span: f64, points: usize) -> Vec<f64> {
    let end = span / (n as f64).sqrt();
    let last = points.max(2) - 1;
    (0..=last).map(|k| end * k as f64 / last as f64).collect()
}

/// Exact evolution of the sector from `initial` through diagonalization.
pub fn evolve_population(sector: &TcSector, initial: InitialState, times: &[f64]) -> Result<PopulationHistory> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("times", "must be finite"));
    }
    let h: &HermitianOperator<usize> = sector.hamiltonian();
    let prop = Propagator::new(h)?;
    let psi0 = StateVector::basis_state(sector.basis().clone(), &initial.molecules(sector.n()))?;
    let spectral = prop.prepare(&psi0)?;
    let mut probabilities = Vec::with_capacity(times.len());
    let mut energies = Vec::with_capacity(times.len());
    for &t in times {
        let psi = spectral.at(t);
        energies.push(psi.expectation(h)?);
        probabilities.push(psi.block(0).iter().map(|a| a.norm_sqr()).collect());
    }
    Ok(PopulationHistory { n: sector.n(), initial, times: times.to_vec(), probabilities, energies })
}

/// Exact `⟨n_b(t)⟩` starting from the atomic Fermi sea.
pub fn mean_molecule_number(sector: &TcSector, times: &[f64]) -> Result<Vec<f64>> {
    Ok(evolve_population(sector, InitialState::AllAtoms, times)?.mean())
}

/// Linearized short-time solution `sinh²(√N t)`.
pub fn semiclassical_nb(n: usize, t: f64) -> f64 {
    ((n as f64).sqrt() * t).sinh().powi(2)
}
