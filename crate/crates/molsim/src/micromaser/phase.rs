use std::f64::consts::PI;

use serde::Serialize;

use super::density::TwoModeDensityMatrix;
use qdyn_core::C64;

pub const DEFAULT_GRID: usize = 64;
/// Left edge of the phase window.
pub const REFERENCE_PHASE: f64 = -PI;

/// Relative-phase probability density sampled on `[−π, π)`.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseDistribution {
    pub phases: Vec<f64>,
    pub density: Vec<f64>,
}

impl PhaseDistribution {
    pub fn step(&self) -> f64 {
        2.0 * PI / self.phases.len() as f64
    }

    /// `Σ P Δφ`.
    pub fn integral(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.step()
    }

    pub fn max(&self) -> f64 {
        self.density.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.density.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Indices of strict local maxima on the periodic grid.
    pub fn local_maxima(&self) -> Vec<usize> {
        let n = self.density.len();
        (0..n)
            .filter(|&i| {
                let p = self.density[i];
                let prev = self.density[(i + n - 1) % n];
                let next = self.density[(i + 1) % n];
                p > prev && p >= next
            })
            .collect()
    }
}

/// Projects each total-number block on the relative-phase states
/// `|φ, N⟩ = (N+1)^{−1/2} Σ_k e^{ikφ} |k, N−k⟩` and normalizes on the grid.
pub fn relative_phase_distribution(rho: &TwoModeDensityMatrix, grid: usize) -> PhaseDistribution {
    let grid = grid.max(1);
    let step = 2.0 * PI / grid as f64;
    let phases: Vec<f64> = (0..grid).map(|m| REFERENCE_PHASE + m as f64 * step).collect();
    let mut density = vec![0.0; grid];
    let space = rho.space();
    for (total, block) in rho.blocks().iter().enumerate() {
        let lo = space.left_offset(total);
        let d = block.nrows();
        let weight = 1.0 / grid as f64;
        for (m, &phi) in phases.iter().enumerate() {
            let amp: Vec<C64> = (0..d).map(|i| C64::from_polar(1.0, ((lo + i) as f64) * phi)).collect();
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..d {
                for i in 0..d {
                    acc += amp[i].conj() * block[(i, j)] * amp[j];
                }
            }
            // ⟨φ,N|ρ|φ,N⟩ · (N+1) with the projector normalization cancelled.
            density[m] += acc.re * weight;
        }
    }
    let norm: f64 = density.iter().sum::<f64>() * step;
    if norm > 0.0 {
        density.iter_mut().for_each(|p| *p /= norm);
    }
    PhaseDistribution { phases, density }
}
