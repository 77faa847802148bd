//! Variational BCS ground state on ten pair modes and the resulting g2(0+)
//! of the molecules.

use molsim::counting::{caption_pair_energies, g2_zero_plus, solve_bcs_ground_state, CountingModel};

fn main() -> molsim::Result<()> {
    let w = caption_pair_energies(10, 0.1);
    for v in [0.0, 0.01, 0.02, 0.03] {
        let gs = solve_bcs_ground_state(&w, v, 0.1)?;
        let g2 = g2_zero_plus(&CountingModel::Bcs { pair_energies: w.clone(), delta: 0.0, v, mu: 0.1 })?;
        println!("V = {v:<5} Δ = {:.4}  N_a = {:.3}  g2(0+) = {:.4}", gs.gap, gs.atom_number(), g2.g2);
    }
    Ok(())
}
