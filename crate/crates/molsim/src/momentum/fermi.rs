use std::f64::consts::PI;

use rayon::prelude::*;

use super::distribution::{MomentumModel, RadialMomentumDistribution, Sample};
use super::quad::{integrate, integrate_tabulated, sinc, BASE_INTERVALS};
use super::trap::FermiTrap;
use crate::error::Result;

/// Radial nodes for the tabulated gap profile.
const PROFILE_INTERVALS: usize = BASE_INTERVALS << 2;
/// `Δ/μ` below which the local gap is set to zero.
const GAP_FLOOR: f64 = 1e-14;

/// Overlap volume of two Fermi spheres of radius `k` whose centres are `p` apart.
pub fn overlap_volume(p: f64, k: f64) -> f64 {
    if k <= 0.0 || p >= 2.0 * k {
        return 0.0;
    }
    let x = p / k;
    4.0 * PI / 3.0 * k.powi(3) * (1.0 - 0.75 * x + x.powi(3) / 16.0)
}

/// Normal-gas term `∫d³x Ω(p; k_F(x))/(2π)³`, equal to `N/2` at `p = 0`.
pub fn nfg_distribution(trap: &FermiTrap, p: &[f64]) -> Result<Vec<Sample>> {
    trap.validate()?;
    let r = trap.radius();
    Ok(p.par_iter()
        .map(|&p| {
            if p >= 2.0 {
                return Sample::exact(0.0);
            }
            // r = R sin θ keeps the integrand smooth at the cloud edge.
            let theta_max = if p > 0.0 { (0.5 * p).acos() } else { 0.5 * PI };
            integrate(
                |theta| {
                    let (s, c) = theta.sin_cos();
                    4.0 * PI * (r * s).powi(2) * overlap_volume(p, c) * r * c / (8.0 * PI.powi(3))
                },
                0.0,
                theta_max,
            )
            .into()
        })
        .collect())
}

/// `∫₀² x²/√((x²−1)² + d²) dx` via `x − 1 = (d/2) sinh u`.
fn gap_integral(d: f64) -> f64 {
    let h = 0.5 * d;
    integrate(
        |u| {
            let x = 1.0 + h * u.sinh();
            x * x * u.cosh() / ((u.sinh() * (x + 1.0)).powi(2) + 4.0).sqrt()
        },
        (-1.0 / h).asinh(),
        (1.0 / h).asinh(),
    )
    .value
}

/// Local gap `Δ/μ` at `η = k_F|a|` from the regularized contact gap equation
/// `1/(4π|a|) = ∫d³k/(2π)³ [1/(2E_k) − 1/k²]`, cut off at `2k_F`.
/// In reduced units this reads `I(Δ/μ) = 2 + π/(2η)`.
pub fn reduced_gap(eta: f64) -> f64 {
    if eta <= 0.0 {
        return 0.0;
    }
    let target = 2.0 + PI / (2.0 * eta);
    let (mut lo, mut hi) = (GAP_FLOOR.ln(), 10f64.ln());
    if gap_integral(GAP_FLOOR) < target {
        return 0.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if gap_integral(mid.exp()) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// Local gap `Δ(r)` in units of `ħ²k_F(0)²/m`.
pub fn local_gap(trap: &FermiTrap, r: f64) -> f64 {
    let kf = trap.local_fermi_momentum(r);
    0.5 * kf * kf * reduced_gap(kf * trap.kf_a)
}

/// Pair amplitude `φ(r) = Σ_k u_k v_k = Δ(r)/(4π|a|)`, tabulated on
/// `PROFILE_INTERVALS + 1` nodes over `[0, R]`.
pub fn pair_amplitude_profile(trap: &FermiTrap) -> Vec<f64> {
    let r = trap.radius();
    let a = trap.kf_a;
    (0..=PROFILE_INTERVALS)
        .into_par_iter()
        .map(|i| if a > 0.0 { local_gap(trap, r * i as f64 / PROFILE_INTERVALS as f64) / (4.0 * PI * a) } else { 0.0 })
        .collect()
}

/// Cooper pair number `∫d³x φ(x)`.
pub fn cooper_pairs(trap: &FermiTrap) -> Sample {
    let profile = pair_amplitude_profile(trap);
    pair_transform(trap, &profile, 0.0)
}

fn pair_transform(trap: &FermiTrap, profile: &[f64], p: f64) -> Sample {
    let r = trap.radius();
    let n = profile.len() - 1;
    let integrand: Vec<f64> = profile
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let x = r * i as f64 / n as f64;
            4.0 * PI * x * x * sinc(p * x) * phi
        })
        .collect();
    integrate_tabulated(&integrand, 0.0, r).into()
}

/// Coherent term `|∫d³x e^{−ip·x} φ(x)|²` of the paired gas.
pub fn bcs_coherent(trap: &FermiTrap, p: &[f64]) -> Result<Vec<Sample>> {
    trap.validate()?;
    let profile = pair_amplitude_profile(trap);
    Ok(p.par_iter()
        .map(|&p| {
            let f = pair_transform(trap, &profile, p);
            Sample { value: f.value * f.value, ..f }
        })
        .collect())
}

/// Cooper pair size `v_F/(πΔ)` at the trap centre, in `1/k_F(0)`.
pub fn pair_size_at_centre(trap: &FermiTrap) -> f64 {
    1.0 / (PI * local_gap(trap, 0.0))
}

/// 200 momenta evenly spaced on `[0, 2.5 ħk_F(0)]`.
pub fn fermi_default_grid() -> Vec<f64> {
    let n = super::P_POINTS;
    (0..n).map(|i| 2.5 * i as f64 / (n - 1) as f64).collect()
}

/// Normal gas: the whole signal is the non-collective term.
pub fn nfg_full(trap: &FermiTrap, p: &[f64]) -> Result<RadialMomentumDistribution> {
    let noise = nfg_distribution(trap, p)?;
    let coherent = vec![Sample::exact(0.0); p.len()];
    Ok(RadialMomentumDistribution::assemble(MomentumModel::Nfg(*trap), p, coherent, noise, vec![true; p.len()]))
}

/// Paired gas: pair-amplitude term plus the normal-gas term.
pub fn bcs_distribution(trap: &FermiTrap, p: &[f64]) -> Result<RadialMomentumDistribution> {
    let coherent = bcs_coherent(trap, p)?;
    let noise = nfg_distribution(trap, p)?;
    Ok(RadialMomentumDistribution::assemble(MomentumModel::Bcs(*trap), p, coherent, noise, vec![true; p.len()]))
}
