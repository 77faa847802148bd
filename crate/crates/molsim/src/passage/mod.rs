//! Degenerate Tavis-Cummings model of molecule association and dissociation.
//!
//! `N` fermion pairs share one collective pseudo-spin `S = N/2`; the sector is
//! spanned by `|n_b⟩`, `n_b = 0..=N` molecules. Energies are in units of `ħχ`
//! and times in units of `1/χ`.

mod dynamics;
mod passage_time;
mod potential;
mod sector;

pub use dynamics::{
    evolve_population, mean_molecule_number, semiclassical_nb, time_grid, InitialState, PopulationHistory,
};
pub use passage_time::{passage_time_distribution, passage_time_with, PassageOptions, PassageTimeResult};
pub use potential::{acceleration, effective_potential, effective_potential_samples, stationary_points};
pub use sector::{build_sector, coupling, TcSector, DEGENERATE_LIMIT_NOTE};
