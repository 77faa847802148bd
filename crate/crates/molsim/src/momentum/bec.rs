use std::f64::consts::PI;

use rayon::prelude::*;

use super::distribution::{MomentumModel, RadialMomentumDistribution, Sample};
use super::quad::{integrate, sinc};
use super::trap::BecTrap;
use crate::error::{invalid, Result};

/// `∫d³x e^{−ip·x} ψ₀²(x)` for the unit-normalized Thomas-Fermi profile.
pub fn bec_form_factor(trap: &BecTrap, p: f64) -> Sample {
    let r_tf = trap.thomas_fermi_radius();
    let n = trap.atoms;
    integrate(|r| 4.0 * PI * r * r * sinc(p * r) * trap.density(r) / n, 0.0, r_tf).into()
}

/// Condensate term `N(N−1)|ψ̃₀²(p)|²`.
pub fn bec_coherent(trap: &BecTrap, p: &[f64]) -> Result<Vec<Sample>> {
    trap.validate()?;
    let prefactor = trap.atoms * (trap.atoms - 1.0);
    Ok(p.par_iter()
        .map(|&p| {
            let f = bec_form_factor(trap, p);
            Sample { value: prefactor * f.value * f.value, ..f }
        })
        .collect())
}

/// Bogoliubov occupation of mode `p` in a homogeneous gas with chemical
/// potential `mu` at temperature `t` (all in `ħω`).
pub fn bogoliubov_occupation(p: f64, mu: f64, t: f64) -> f64 {
    let eps = 0.5 * p * p;
    let e = (eps * (eps + 2.0 * mu)).sqrt();
    let depletion = mu * mu / (2.0 * e * (eps + mu + e));
    let thermal = if t > 0.0 { (eps + mu) / e / (e / t).exp_m1() } else { 0.0 };
    depletion + thermal
}

/// Lowest momentum at which the local-density noise term is trusted, `2π/ξ`.
pub fn bec_noise_cutoff(trap: &BecTrap) -> f64 {
    2.0 * PI / trap.healing_length()
}

/// Fluctuation term `4 ∫d³x n(x) n_p(x)` with local Bogoliubov occupations.
/// Returns the samples and the validity flag `p ≥ 2π/ξ` per point.
pub fn bec_noise_lda(trap: &BecTrap, p: &[f64]) -> Result<(Vec<Sample>, Vec<bool>)> {
    trap.validate()?;
    if let Some(bad) = p.iter().find(|&&p| !(p > 0.0)) {
        return Err(invalid("p", format!("noise term diverges at p = {bad}; grid must be positive")));
    }
    let r_tf = trap.thomas_fermi_radius();
    let t = trap.thermal_energy();
    let cutoff = bec_noise_cutoff(trap);
    let samples = p
        .par_iter()
        .map(|&p| {
            let q = integrate(
                |r| {
                    let n = trap.density(r);
                    if n <= 0.0 {
                        return 0.0;
                    }
                    16.0 * PI * r * r * n * bogoliubov_occupation(p, trap.local_chemical_potential(r), t)
                },
                0.0,
                r_tf,
            );
            Sample::from(q)
        })
        .collect();
    Ok((samples, p.iter().map(|&p| p >= cutoff).collect()))
}

/// First zero of the condensate form factor.
pub fn bec_coherent_width(trap: &BecTrap) -> f64 {
    let r_tf = trap.thomas_fermi_radius();
    let f = |q: f64| bec_form_factor(trap, q / r_tf).value;
    let step = 0.05;
    let mut lo = step;
    while f(lo + step) > 0.0 {
        lo += step;
    }
    let mut hi = lo + step;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) / r_tf
}

/// 200 log-spaced momenta from `0.02·2π/R_TF` to `4·2π/ξ`.
pub fn bec_default_grid(trap: &BecTrap) -> Vec<f64> {
    let lo = 0.02 * 2.0 * PI / trap.thomas_fermi_radius();
    let hi = 4.0 * bec_noise_cutoff(trap);
    let n = super::P_POINTS;
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Both terms on `p`.
pub fn bec_distribution(trap: &BecTrap, p: &[f64]) -> Result<RadialMomentumDistribution> {
    let coherent = bec_coherent(trap, p)?;
    let (noise, valid) = bec_noise_lda(trap, p)?;
    Ok(RadialMomentumDistribution::assemble(MomentumModel::Bec(*trap), p, coherent, noise, valid))
}

/// Peak of the condensate term, at `p = 0`.
pub fn bec_coherent_peak(trap: &BecTrap) -> f64 {
    let f = bec_form_factor(trap, 0.0).value;
    trap.atoms * (trap.atoms - 1.0) * f * f
}

