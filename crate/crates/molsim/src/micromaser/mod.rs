//! Double-well molecular micromaser driven by trains of photo-association
//! pulses, with molecular decay, tunneling and collisions.

mod density;
mod generator;
mod observables;
mod params;
mod phase;
mod steady;
mod sweep;

pub use density::{Occupation, TwoModeDensityMatrix, TwoModeSpace};
pub use generator::{damping_superoperator, gain_map, hamiltonian_blocks, hb_commutator, GainCoefficients, Generator, Well};
pub use observables::{
    angular_momentum, jx_coherence, jx_operator, jy_operator, mandel_q, mean_occupation, moments,
    single_well_distribution, AngularMomentum,
};
pub use params::MicromaserParams;
pub use phase::{relative_phase_distribution, PhaseDistribution, DEFAULT_GRID, REFERENCE_PHASE};
pub use steady::{
    evolve_to_steady_state, evolve_with_sampling, integrate_master_equation, solve_steady_state, steady_state, steady_state_with_headroom, SteadyState,
    SteadyStateMethod, TrajectorySample, EDGE_WARNING, POSITIVITY_FLOOR, STEADY_TOLERANCE,
};
pub use sweep::{coherence_sweep, theta_sweep, CoherenceRow, SweepRow};
