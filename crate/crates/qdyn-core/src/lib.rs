//! Numerical substrate shared by the molecular quantum-optics models.
//!
//! Everything here works on Hilbert spaces that split into blocks labelled by a
//! conserved quantum number (total molecule number, total excitation number,
//! ...). Operators and states are stored densely per block, which keeps the
//! linear algebra simple while still exploiting the conservation law.
//!
//! * [`BlockBasis`] indexes basis states within blocks.
//! * [`HermitianOperator`], [`StateVector`] and [`DensityMatrix`] carry
//!   per-block dense data tied to a shared basis.
//! * [`eig_decompose`] and [`Propagator`] give exact unitary time evolution.
//! * [`rk4_integrate`] / [`Rk4`] integrate autonomous linear ODEs such as
//!   master equations.

pub mod basis;
pub mod eigen;
pub mod error;
pub mod operator;
pub mod propagate;
pub mod rk4;
pub mod state;
pub mod tolerance;

pub use basis::{BasisState, BlockBasis};
pub use eigen::{eig_decompose, eig_decompose_matrix, eig_decompose_with, BlockEigen, Eigensystem};
pub use error::CoreError;
pub use operator::HermitianOperator;
pub use propagate::{propagate, Propagator};
pub use rk4::{rk4_integrate, OdeScalar, Rk4, Trajectory};
pub use state::{DensityMatrix, StateVector};
pub use tolerance::Tolerances;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

pub type Result<T> = std::result::Result<T, CoreError>;
