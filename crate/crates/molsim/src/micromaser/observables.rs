use qdyn_core::{HermitianOperator, C64};
use serde::Serialize;

use super::density::{Occupation, TwoModeDensityMatrix};
use super::generator::Well;
use crate::error::Result;

/// Marginal number distribution of one well.
pub fn single_well_distribution(rho: &TwoModeDensityMatrix, well: Well) -> Vec<f64> {
    let mut p = vec![0.0; rho.n_max() + 1];
    for (total, m) in rho.blocks().iter().enumerate() {
        let lo = rho.space().left_offset(total);
        for i in 0..m.nrows() {
            let l = lo + i;
            let n = match well {
                Well::Left => l,
                Well::Right => total - l,
            };
            p[n] += m[(i, i)].re;
        }
    }
    p
}

/// `⟨n_l⟩`.
pub fn mean_occupation(rho: &TwoModeDensityMatrix) -> f64 {
    moments(&single_well_distribution(rho, Well::Left)).0
}

/// Mean and second moment of a number distribution.
pub fn moments(p: &[f64]) -> (f64, f64) {
    p.iter().enumerate().fold((0.0, 0.0), |(m1, m2), (n, &x)| {
        let n = n as f64;
        (m1 + n * x, m2 + n * n * x)
    })
}

/// Mandel parameter `Var(n)/⟨n⟩ − 1`; `None` when `⟨n⟩ = 0`.
pub fn mandel_q(p: &[f64]) -> Option<f64> {
    let (m1, m2) = moments(p);
    (m1 > 0.0).then(|| (m2 - m1 * m1) / m1 - 1.0)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AngularMomentum {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub total: f64,
}

/// Tunneling amplitude `⟨l+1, r−1| b_l† b_r |l, r⟩` for `bra.left = ket.left + 1`.
fn hop(bra: &Occupation, ket: &Occupation) -> Option<f64> {
    (bra.left == ket.left + 1).then(|| (((ket.left + 1) * ket.right) as f64).sqrt())
}

pub fn jx_operator(rho: &TwoModeDensityMatrix) -> HermitianOperator<Occupation> {
    HermitianOperator::from_elements(rho.space().basis().clone(), |_, bra, ket| {
        let v = hop(bra, ket).or_else(|| hop(ket, bra)).unwrap_or(0.0);
        C64::from(0.5 * v)
    })
}

pub fn jy_operator(rho: &TwoModeDensityMatrix) -> HermitianOperator<Occupation> {
    HermitianOperator::from_elements(rho.space().basis().clone(), |_, bra, ket| {
        if let Some(v) = hop(bra, ket) {
            C64::new(0.0, -0.5 * v)
        } else if let Some(v) = hop(ket, bra) {
            C64::new(0.0, 0.5 * v)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩` and `⟨N⟩` for a unit-trace state.
pub fn angular_momentum(rho: &TwoModeDensityMatrix) -> Result<AngularMomentum> {
    let basis = rho.space().basis().clone();
    let d = rho.as_density();
    let jz = HermitianOperator::diagonal(basis.clone(), |s| 0.5 * (s.left as f64 - s.right as f64));
    let n = HermitianOperator::diagonal(basis, |s| (s.left + s.right) as f64);
    Ok(AngularMomentum {
        jx: d.expectation(&jx_operator(rho))?,
        jy: d.expectation(&jy_operator(rho))?,
        jz: d.expectation(&jz)?,
        total: d.expectation(&n)?,
    })
}

/// `⟨J_x⟩`, the first-order coherence between the wells.
pub fn jx_coherence(rho: &TwoModeDensityMatrix) -> Result<f64> {
    Ok(rho.as_density().expectation(&jx_operator(rho))?)
}
