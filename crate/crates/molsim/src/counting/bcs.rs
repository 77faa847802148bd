use serde::Serialize;

use crate::error::{invalid, Result};

/// Residual bound on `Δ − V Σ u_k v_k`.
pub const GAP_TOLERANCE: f64 = 1e-10;

/// Mean-field BCS ground state on a discrete set of pair modes.
#[derive(Debug, Clone, Serialize)]
pub struct BcsGroundState {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub gap: f64,
    pub coupling: f64,
    pub mu: f64,
    /// Set when only the normal solution `Δ = 0` exists.
    pub trivial: bool,
}

impl BcsGroundState {
    /// `2 Σ v_k²`.
    pub fn atom_number(&self) -> f64 {
        2.0 * self.v.iter().map(|v| v * v).sum::<f64>()
    }

    /// `Σ u_k v_k`, the Cooper-pair amplitude `Δ/V`.
    pub fn pair_amplitude(&self) -> f64 {
        self.u.iter().zip(&self.v).map(|(u, v)| u * v).sum()
    }

    pub fn gap_residual(&self) -> f64 {
        (self.gap - self.coupling * self.pair_amplitude()).abs()
    }

    /// State with `Δ` imposed and the coupling that supports it.
    pub fn with_gap(pair_energies: &[f64], mu: f64, gap: f64) -> Result<Self> {
        if !(gap >= 0.0 && gap.is_finite()) {
            return Err(invalid("gap", "must be finite and non-negative"));
        }
        let (u, v) = amplitudes(&xi(pair_energies, mu), gap);
        let amp: f64 = u.iter().zip(&v).map(|(u, v)| u * v).sum();
        let coupling = if gap == 0.0 { 0.0 } else { gap / amp };
        Ok(Self { u, v, gap, coupling, mu, trivial: gap == 0.0 })
    }
}

/// `ξ_k = (ω_k − μ)/2`: the pseudo-spin energy is `ω_k σᶻ` with `σᶻ = ±½`.
fn xi(pair_energies: &[f64], mu: f64) -> Vec<f64> {
    pair_energies.iter().map(|w| 0.5 * (w - mu)).collect()
}

fn amplitudes(xi: &[f64], gap: f64) -> (Vec<f64>, Vec<f64>) {
    xi.iter()
        .map(|&x| {
            if gap == 0.0 {
                // Step filling; a mode exactly at μ is left half filled.
                let v2: f64 = if x < 0.0 { 1.0 } else if x > 0.0 { 0.0 } else { 0.5 };
                ((1.0 - v2).sqrt(), v2.sqrt())
            } else {
                let e = x.hypot(gap);
                let v2 = 0.5 * (1.0 - x / e);
                ((1.0 - v2).sqrt(), v2.sqrt())
            }
        })
        .unzip()
}

/// Solves `Δ = V Σ u_k v_k` with `v_k² = (1 − ξ_k/E_k)/2`, `E_k = √(ξ_k² + Δ²)`.
///
/// `F(Δ) = V Σ 1/(2E_k)` decreases monotonically, so the non-trivial root of
/// `F = 1` is bracketed and bisected.
pub fn solve_bcs_ground_state(pair_energies: &[f64], v: f64, mu: f64) -> Result<BcsGroundState> {
    if pair_energies.is_empty() {
        return Err(invalid("pair_energies", "need at least one pair mode"));
    }
    if !(v >= 0.0 && v.is_finite() && mu.is_finite()) {
        return Err(invalid("v", "need finite V ≥ 0 and finite μ"));
    }
    let xi = xi(pair_energies, mu);
    let f = |gap: f64| v * xi.iter().map(|x| 0.5 / x.hypot(gap)).sum::<f64>() - 1.0;
    let floor = 1e-300;
    if v == 0.0 || f(floor) <= 0.0 {
        let mut gs = BcsGroundState::with_gap(pair_energies, mu, 0.0)?;
        gs.coupling = v;
        return Ok(gs);
    }
    // Above Δ = V·M/2 every term is below 1/M.
    let (mut lo, mut hi) = (floor, 0.5 * v * xi.len() as f64 + 1.0);
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let gap = 0.5 * (lo + hi);
    let (u, vv) = amplitudes(&xi, gap);
    Ok(BcsGroundState { u, v: vv, gap, coupling: v, mu, trivial: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::caption_pair_energies;

    #[test]
    fn free_fermi_limit() {
        let w = caption_pair_energies(10, 0.1);
        let gs = solve_bcs_ground_state(&w, 0.0, 0.1).unwrap();
        assert_eq!(gs.gap, 0.0);
        assert!(gs.trivial);
        let filled: Vec<bool> = gs.v.iter().map(|&v| v == 1.0).collect();
        assert_eq!(filled, w.iter().map(|&e| e < 0.1).collect::<Vec<_>>());
    }

    #[test]
    fn normalized_and_self_consistent() {
        let w = caption_pair_energies(10, 0.1);
        let gs = solve_bcs_ground_state(&w, 0.03, 0.1).unwrap();
        assert!(gs.gap > 0.0);
        assert!(gs.gap_residual() < GAP_TOLERANCE);
        for (u, v) in gs.u.iter().zip(&gs.v) {
            assert!((u * u + v * v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn imposed_gap_round_trips() {
        let w = caption_pair_energies(8, 0.1);
        let a = solve_bcs_ground_state(&w, 0.05, 0.1).unwrap();
        let b = BcsGroundState::with_gap(&w, 0.1, a.gap).unwrap();
        assert!((b.coupling - 0.05).abs() < 1e-9);
    }
}
