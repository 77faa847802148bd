//! Relative-phase distributions of the two wells in the Rabi, Josephson and
//! Fock regimes.

use std::f64::consts::PI;

use molsim::micromaser::{relative_phase_distribution, steady_state, MicromaserParams, SteadyStateMethod};

fn main() -> molsim::Result<()> {
    for (label, ratio) in [("Rabi", 0.0032), ("Josephson", 0.5623), ("Fock", 56.23)] {
        let params = MicromaserParams { theta: PI, t_j: 2.5, u_b: 2.5 * ratio, n_max: 16, ..Default::default() };
        let s = steady_state(&params, SteadyStateMethod::Direct)?;
        let p = relative_phase_distribution(&s.rho, 32);
        let peaks: Vec<String> = p.local_maxima().iter().map(|&i| format!("{:.2}", p.phases[i])).collect();
        println!(
            "{label:<10} u_b/t_J = {ratio:<7} max/min = {:>8.3}  peaks at φ = [{}]",
            p.max() / p.min(),
            peaks.join(", ")
        );
    }
    Ok(())
}
