//! Perturbative molecular momentum distributions from trapped gases in the
//! broad-resonance limit.
//!
//! Values are `V n(p)/(gt)²`. The condensate and pair-amplitude terms are
//! Fourier transforms of radial profiles; the non-collective terms are local
//! density integrals. Every emitted point carries a half-step quadrature error.

mod bec;
mod distribution;
mod fermi;
mod g2;
mod quad;
mod trap;

pub use bec::{
    bec_coherent, bec_coherent_peak, bec_coherent_width, bec_default_grid, bec_distribution, bec_form_factor,
    bec_noise_cutoff, bec_noise_lda, bogoliubov_occupation,
};
pub use distribution::{MomentumModel, RadialMomentumDistribution, Sample};
pub use fermi::{
    bcs_coherent, bcs_distribution, cooper_pairs, fermi_default_grid, local_gap, nfg_distribution, nfg_full,
    overlap_volume, pair_amplitude_profile, pair_size_at_centre, reduced_gap,
};
pub use g2::{effective_pair_number, g2_bec, g2_mixed, g2_nfg};
pub use quad::{BASE_INTERVALS, RICHARDSON_TOLERANCE};
pub use trap::{BecTrap, FermiTrap};

use crate::error::Result;

/// Points on the default momentum grids.
pub const P_POINTS: usize = 200;

/// Default grid for `model`.
pub fn default_grid(model: &MomentumModel) -> Vec<f64> {
    match model {
        MomentumModel::Bec(t) => bec_default_grid(t),
        MomentumModel::Nfg(_) | MomentumModel::Bcs(_) => fermi_default_grid(),
    }
}

/// Distribution for `model` on `p`.
pub fn momentum_distribution(model: &MomentumModel, p: &[f64]) -> Result<RadialMomentumDistribution> {
    match model {
        MomentumModel::Bec(t) => bec_distribution(t, p),
        MomentumModel::Nfg(t) => nfg_full(t, p),
        MomentumModel::Bcs(t) => bcs_distribution(t, p),
    }
}
