//! Passage-time statistics of molecule formation from a degenerate Fermi sea
//! and the reverse dissociation of a molecular condensate.

use molsim::passage::{build_sector, passage_time_distribution, stationary_points, InitialState};

fn main() -> molsim::Result<()> {
    let n = 200;
    let sector = build_sector(n, 0.0)?;
    for initial in [InitialState::AllAtoms, InitialState::AllMolecules] {
        let w = passage_time_distribution(&sector, initial, 0.05)?;
        println!(
            "{initial:?}: n_ref = {}, mean χt = {:.5}, std = {:.5}, unimodal = {}",
            w.n_ref,
            w.mean,
            w.std_dev,
            w.is_unimodal(0.05)
        );
    }
    let (lower, upper) = stationary_points(n);
    println!("stationary points of U(n_b): {lower:.3}, {upper:.3}");
    Ok(())
}
