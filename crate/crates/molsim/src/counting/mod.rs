//! Molecule number statistics from condensed, normal and paired atomic gases.
//!
//! A single molecular mode `b` is fed by
//!
//! * a two-mode atomic condensate, `H = δ b†b + b†c² + b c†²`;
//! * `M` fermion pair modes in the pseudo-spin picture,
//!   `H = Σ ω_k σᶻ_k + δ b†b + Σ (b†σ⁻_k + b σ⁺_k) − V Σ σ⁺_k σ⁻_k'`,
//!   starting from a filled Fermi sea (`V = 0`) or a BCS product state.
//!
//! Energies are in units of `ħχ` and times in units of `1/χ`.

mod bcs;
mod bec;
mod fermi;
mod model;
mod perturbative;
mod stats;

pub use bcs::{solve_bcs_ground_state, BcsGroundState, GAP_TOLERANCE};
pub use bec::{bec_hamiltonian, evolve_bec};
pub use fermi::{evolve_bcs, evolve_nfg, pair_hamiltonian, PairState};
pub use model::{caption_pair_energies, evolve, CountingModel};
pub use perturbative::{first_order_coefficient, g2_zero_plus, perturbative_n, G2ZeroPlus, ZERO_PLUS_MEAN};
pub use stats::{g2_from_distribution, thermal_fit, CountingStatistics, ThermalFit};
