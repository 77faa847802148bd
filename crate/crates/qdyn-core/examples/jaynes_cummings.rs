//! Vacuum Rabi oscillations of a two-level atom in a cavity, propagated
//! block by block in the excitation-number basis.

use std::sync::Arc;

use qdyn_core::{BlockBasis, HermitianOperator, Propagator, StateVector, C64};

fn main() -> Result<(), qdyn_core::CoreError> {
    let max_excitations = 6u32;
    // State (photons, atom excited); block label = photons + excited.
    let blocks = (0..=max_excitations)
        .map(|k| {
            let mut states = vec![(k, false)];
            if k > 0 {
                states.push((k - 1, true));
            }
            (k as i64, states)
        })
        .collect();
    let basis = Arc::new(BlockBasis::new(blocks)?);
    let g = 1.0;
    let h = HermitianOperator::from_elements(basis.clone(), |_, bra: &(u32, bool), ket: &(u32, bool)| {
        if bra == ket {
            C64::from(0.0)
        } else {
            // ⟨n, g| a†σ⁻ |n−1, e⟩ = √n
            let n = bra.0.max(ket.0) as f64;
            C64::from(g * n.sqrt())
        }
    });
    let prop = Propagator::new(&h)?;
    let psi0 = StateVector::basis_state(basis, &(0, true))?;
    let spectral = prop.prepare(&psi0)?;
    println!("{:>6} {:>12} {:>12}", "g t", "P(excited)", "cos²(g t)");
    for k in 0..=8 {
        let t = k as f64 * std::f64::consts::PI / 8.0;
        let psi = spectral.at(t);
        let p = psi.amplitude(&(0, true)).map_or(0.0, |a| a.norm_sqr());
        println!("{t:>6.3} {p:>12.8} {:>12.8}", (g * t).cos().powi(2));
    }
    Ok(())
}
