//! Simulations of ultracold atom-molecule systems through their quantum-optics
//! analogues.
//!
//! * [`micromaser`]: pumped, damped double-well molecular field.
//! * [`passage`]: molecule formation in the degenerate Tavis-Cummings model.
//! * [`counting`]: molecule number statistics from BEC, normal Fermi gas and
//!   BCS initial states.
//! * [`momentum`]: perturbative molecular momentum distributions of trapped
//!   gases.
//! * [`scenario`]: configuration files, presets and CSV/JSON output.

pub mod error;
pub mod micromaser;
pub mod passage;
pub mod counting;
pub mod momentum;
pub mod scenario;

pub use error::{Error, Result};
