//! Molecular momentum distributions from trapped condensed, normal and paired
//! gases: coherent peaks against non-collective backgrounds.

use std::f64::consts::PI;

use molsim::momentum::{
    bec_coherent_peak, bec_coherent_width, bec_default_grid, bec_distribution, bcs_distribution, cooper_pairs,
    fermi_default_grid, BecTrap, FermiTrap,
};

fn main() -> molsim::Result<()> {
    let bec = BecTrap::caption();
    let d = bec_distribution(&bec, &bec_default_grid(&bec))?;
    let (p_noise, noise) = d.noise_peak().expect("valid noise points");
    println!("BEC: R_TF = {:.3} a_osc, coherent first zero {:.4} vs 2π/R_TF {:.4}", bec.thomas_fermi_radius(), bec_coherent_width(&bec), 2.0 * PI / bec.thomas_fermi_radius());
    println!("     coherent peak {:.3e}, largest valid noise {:.3e} at p = {:.1}", bec_coherent_peak(&bec), noise, p_noise);

    let fermi = FermiTrap::caption();
    let d = bcs_distribution(&fermi, &fermi_default_grid())?;
    println!("BCS: Cooper pairs {:.0} of {} atoms; p = 0 coherent {:.3e}, normal {:.3e}", cooper_pairs(&fermi).value, fermi.atoms, d.coherent[0], d.noise[0]);
    let edge = d.p.iter().zip(&d.noise).filter(|(_, n)| **n > 0.0).map(|(p, _)| *p).fold(0.0, f64::max);
    println!("     normal-gas support ends below p = 2 ħk_F(0): last nonzero at {edge:.3}");
    Ok(())
}
