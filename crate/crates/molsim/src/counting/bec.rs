use std::sync::Arc;

use qdyn_core::{BlockBasis, HermitianOperator, C64};

use super::fermi::spectral_statistics;
use super::stats::CountingStatistics;
use crate::error::{invalid, Result};

/// `H = δ b†b + b†c² + b c†²` on `|n_b, 2(N_max − n_b)⟩`, `n_b = 0..=N_max`.
pub fn bec_hamiltonian(n_max: usize, delta: f64) -> Result<HermitianOperator<usize>> {
    if n_max == 0 {
        return Err(invalid("n_max", "need at least one atom pair"));
    }
    let basis = Arc::new(BlockBasis::new(vec![(2 * n_max as i64, (0..=n_max).collect())])?);
    Ok(HermitianOperator::from_elements(basis, |_, &bra, &ket| {
        if bra == ket {
            C64::from(delta * bra as f64)
        } else if ket == bra + 1 {
            // ⟨n+1, a−2| b†c² |n, a⟩ = √(n+1)·√(a(a−1)), a = 2(N_max − n).
            let atoms = 2.0 * (n_max - bra) as f64;
            C64::from(((bra + 1) as f64 * atoms * (atoms - 1.0)).sqrt())
        } else {
            C64::from(0.0)
        }
    }))
}

/// Exact `P_n(t)` from `N_a = 2N_max` condensed atoms and no molecules.
pub fn evolve_bec(n_max: usize, delta: f64, times: &[f64]) -> Result<CountingStatistics> {
    let h = bec_hamiltonian(n_max, delta)?;
    spectral_statistics(&h, &[(0usize, C64::from(1.0))], times, n_max, |&n| n)
}
