use std::sync::Arc;

use qdyn_core::{BlockBasis, HermitianOperator, C64};

use crate::error::{invalid, Result};

/// Regime of validity attached to every result of this module.
pub const DEGENERATE_LIMIT_NOTE: &str =
    "degenerate limit: atomic kinetic energies neglected, valid for eps_F/(hbar chi) << 1";

/// `⟨n_b+1|b†S⁻|n_b⟩ = (n_b+1)·√(N−n_b)`.
pub fn coupling(n: usize, n_b: usize) -> f64 {
    debug_assert!(n_b < n);
    (n_b as f64 + 1.0) * ((n - n_b) as f64).sqrt()
}

/// One total-spin sector of the Tavis-Cummings Hamiltonian.
#[derive(Debug, Clone)]
pub struct TcSector {
    n: usize,
    delta: f64,
    hamiltonian: HermitianOperator<usize>,
}

impl TcSector {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn hamiltonian(&self) -> &HermitianOperator<usize> {
        &self.hamiltonian
    }

    pub fn basis(&self) -> &Arc<BlockBasis<usize>> {
        self.hamiltonian.basis()
    }
}

/// `H = δ n_b + b S⁺ + b† S⁻` on `|n_b⟩`, `n_b = 0..=N`, dropping the constant
/// `ω_F N/2`.
pub fn build_sector(n: usize, delta: f64) -> Result<TcSector> {
    if n == 0 {
        return Err(invalid("N", "need at least one atom pair"));
    }
    if !delta.is_finite() {
        return Err(invalid("delta", "must be finite"));
    }
    let basis = Arc::new(BlockBasis::new(vec![(n as i64, (0..=n).collect())])?);
    let hamiltonian = HermitianOperator::from_elements(basis, |_, &bra, &ket| {
        if bra == ket {
            C64::from(delta * bra as f64)
        } else if ket == bra + 1 {
            C64::from(coupling(n, bra))
        } else {
            C64::from(0.0)
        }
    });
    Ok(TcSector { n, delta, hamiltonian })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pair_is_jaynes_cummings() {
        let s = build_sector(1, 0.0).unwrap();
        let h = s.hamiltonian().block(0);
        assert_eq!(h[(0, 1)], C64::from(1.0));
        assert_eq!(h[(0, 0)], C64::from(0.0));
    }

    #[test]
    fn rejects_empty_sector() {
        assert!(build_sector(0, 0.0).is_err());
        assert!(build_sector(3, f64::NAN).is_err());
    }

    #[test]
    fn detuning_on_diagonal() {
        let s = build_sector(4, 0.3).unwrap();
        for k in 0..=4 {
            assert!((s.hamiltonian().block(0)[(k, k)].re - 0.3 * k as f64).abs() < 1e-15);
        }
    }
}
