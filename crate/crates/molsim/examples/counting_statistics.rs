//! Molecule number statistics from a condensate and from a normal Fermi gas,
//! with thermal fits of the latter.

use molsim::counting::{caption_pair_energies, evolve, CountingModel};

fn main() -> molsim::Result<()> {
    let bec = CountingModel::Bec { n_max: 30, delta: 0.0 };
    let nfg = CountingModel::Nfg { pair_energies: caption_pair_energies(10, 0.1), delta: 0.0, filled: None };
    let cases = [("BEC", bec, vec![0.002, 0.005, 0.01]), ("NFG", nfg, vec![0.1, 0.2, 0.3])];
    for (label, model, times) in cases {
        let stats = evolve(&model, &times)?;
        for (k, t) in times.iter().enumerate() {
            let fit = molsim::counting::thermal_fit(&stats.distributions[k]);
            println!(
                "{label} χt = {t:<6} <n> = {:.4}  g2 = {:.4}  thermal residual = {:.4}",
                stats.mean[k],
                stats.g2[k].unwrap_or(f64::NAN),
                fit.residual
            );
        }
    }
    Ok(())
}
