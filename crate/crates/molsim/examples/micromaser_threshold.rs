//! Steady-state molecule number per well across the pump threshold, for an
//! isolated well and for wells coupled by tunneling.

use std::f64::consts::PI;

use molsim::micromaser::{theta_sweep, MicromaserParams, SteadyStateMethod};

fn main() {
    let thetas: Vec<f64> = (1..=12).map(|k| k as f64 * 0.25 * PI).collect();
    for t_j in [0.0, 5.0] {
        let template = MicromaserParams { n_ex: 10.0, t_j, n_max: 18, ..Default::default() };
        println!("t_J = {t_j}");
        println!("{:>8} {:>10} {:>10}", "Θ/π", "<n_i>", "Q");
        for row in theta_sweep(&template, &thetas, SteadyStateMethod::Direct) {
            println!("{:>8.2} {:>10.4} {:>10.4}", row.theta / PI, row.mean, row.q.unwrap_or(f64::NAN));
        }
    }
}
