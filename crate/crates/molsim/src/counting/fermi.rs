use std::sync::Arc;

use qdyn_core::{BasisState, BlockBasis, HermitianOperator, Propagator, StateVector, C64};
use rayon::prelude::*;

use super::bcs::BcsGroundState;
use super::model::MAX_PAIR_MODES;
use super::stats::CountingStatistics;
use crate::error::{invalid, Result};

/// Molecule number and pair occupation bitmask (bit `k` set: pair `k` present).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairState {
    pub molecules: usize,
    pub pairs: u32,
}

impl PairState {
    pub fn excitations(&self) -> usize {
        self.molecules + self.pairs.count_ones() as usize
    }
}

/// Blocks of fixed `n_b + Σ_k n_k = K` for the given `K`.
fn pair_basis(m: usize, totals: &[usize]) -> Result<Arc<BlockBasis<PairState>>> {
    let blocks = totals
        .iter()
        .map(|&k| {
            let mut states: Vec<PairState> = (0..1u32 << m)
                .filter(|p| p.count_ones() as usize <= k)
                .map(|pairs| PairState { molecules: k - pairs.count_ones() as usize, pairs })
                .collect();
            states.sort();
            (k as i64, states)
        })
        .collect();
    Ok(Arc::new(BlockBasis::new(blocks)?))
}

/// `H = Σ ω_k σᶻ_k + δ b†b + Σ (b†σ⁻_k + h.c.) − V Σ_{k,k'} σ⁺_k σ⁻_k'`
/// restricted to the blocks `K ∈ totals`.
pub fn pair_hamiltonian(
    pair_energies: &[f64],
    delta: f64,
    v: f64,
    totals: &[usize],
) -> Result<HermitianOperator<PairState>> {
    let m = pair_energies.len();
    if m == 0 || m > MAX_PAIR_MODES {
        return Err(invalid("pair_energies", format!("need 1..={MAX_PAIR_MODES} modes, got {m}")));
    }
    if totals.iter().any(|&k| k > m) {
        return Err(invalid("totals", "excitation number exceeds the mode count"));
    }
    let basis = pair_basis(m, totals)?;
    Ok(HermitianOperator::from_elements(basis, |_, bra, ket| {
        if bra == ket {
            let spins: f64 = (0..m)
                .map(|k| pair_energies[k] * if ket.pairs >> k & 1 == 1 { 0.5 } else { -0.5 })
                .sum();
            let occupied = ket.pairs.count_ones() as f64;
            return C64::from(spins + delta * ket.molecules as f64 - v * occupied);
        }
        let flipped = bra.pairs ^ ket.pairs;
        if flipped.count_ones() == 1 {
            // One pair converted into one molecule, in either direction.
            let (lo, hi) = if bra.molecules == ket.molecules + 1 { (ket, bra) } else { (bra, ket) };
            if hi.molecules == lo.molecules + 1 && lo.pairs & flipped != 0 {
                return C64::from((hi.molecules as f64).sqrt());
            }
        } else if flipped.count_ones() == 2 && bra.molecules == ket.molecules && bra.pairs.count_ones() == ket.pairs.count_ones() {
            // σ⁺_k σ⁻_k' moves a pair from k' to k.
            return C64::from(-v);
        }
        C64::from(0.0)
    }))
}

/// Evolves `initial` (amplitudes on basis states) and accumulates `P_n(t)`
/// over `n = 0..=n_top`. Blocks are diagonalized independently.
pub(crate) fn spectral_statistics<S, F>(
    h: &HermitianOperator<S>,
    initial: &[(S, C64)],
    times: &[f64],
    n_top: usize,
    molecules: F,
) -> Result<CountingStatistics>
where
    S: BasisState,
    F: Fn(&S) -> usize + Sync,
{
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("times", "must be finite"));
    }
    let psi0 = StateVector::from_amplitudes(h.basis().clone(), initial.iter().map(|(s, a)| (s, *a)))?;
    let prop = Propagator::new(h)?;
    let spectral = prop.prepare(&psi0)?;
    let distributions = times
        .par_iter()
        .map(|&t| {
            let mut p = vec![0.0; n_top + 1];
            for (s, w) in spectral.at(t).probabilities() {
                p[molecules(s)] += w;
            }
            p
        })
        .collect();
    Ok(CountingStatistics::from_distributions(times.to_vec(), distributions))
}

/// Exact `P_n(t)` from a filled set of pair modes and no molecules.
pub fn evolve_nfg(pair_energies: &[f64], delta: f64, filled: &[bool], times: &[f64]) -> Result<CountingStatistics> {
    if filled.len() != pair_energies.len() {
        return Err(invalid("filled", "one flag per pair mode"));
    }
    let pairs = filled.iter().enumerate().filter(|(_, &f)| f).fold(0u32, |acc, (k, _)| acc | 1 << k);
    let k = pairs.count_ones() as usize;
    let h = pair_hamiltonian(pair_energies, delta, 0.0, &[k])?;
    spectral_statistics(&h, &[(PairState { molecules: 0, pairs }, C64::from(1.0))], times, k, |s| s.molecules)
}

/// Exact `P_n(t)` from the BCS product state `Π(u_k + v_k σ⁺_k)|0⟩` and no
/// molecules, evolved under the pairing Hamiltonian with `V = gs.coupling`.
pub fn evolve_bcs(pair_energies: &[f64], delta: f64, gs: &BcsGroundState, times: &[f64]) -> Result<CountingStatistics> {
    let m = pair_energies.len();
    if gs.v.len() != m {
        return Err(invalid("pair_energies", "ground state was solved on a different mode grid"));
    }
    let amplitude = |pairs: u32| (0..m).map(|k| if pairs >> k & 1 == 1 { gs.v[k] } else { gs.u[k] }).product::<f64>();
    let initial: Vec<(PairState, C64)> = (0..1u32 << m)
        .map(|pairs| (PairState { molecules: 0, pairs }, C64::from(amplitude(pairs))))
        .filter(|(_, a)| a.norm_sqr() > 0.0)
        .collect();
    let mut totals: Vec<usize> = initial.iter().map(|(s, _)| s.excitations()).collect();
    totals.sort_unstable();
    totals.dedup();
    let h = pair_hamiltonian(pair_energies, delta, gs.coupling, &totals)?;
    spectral_statistics(&h, &initial, times, m, |s| s.molecules)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_is_detuned_jaynes_cummings() {
        // |pair, 0⟩ ↔ |empty, 1⟩ with splitting ω_b − ω = δ − ω.
        let (w, delta) = (0.4, 1.0);
        let times: Vec<f64> = (0..25).map(|k| 0.2 * k as f64).collect();
        let s = evolve_nfg(&[w], delta, &[true], &times).unwrap();
        let d = delta - w;
        let omega = (1.0 + d * d / 4.0).sqrt();
        for (t, p) in times.iter().zip(&s.distributions) {
            assert!((p[1] - (omega * t).sin().powi(2) / omega.powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn block_sizes() {
        let b = pair_basis(4, &[0, 2, 4]).unwrap();
        assert_eq!(b.block_dims(), vec![1, 1 + 4 + 6, 16]);
    }
}
