use std::sync::Arc;

use nalgebra::DMatrix;

use crate::basis::{BasisState, BlockBasis};
use crate::error::CoreError;
use crate::state::StateVector;
use crate::tolerance::Tolerances;
use crate::{Result, C64};

/// Relative Frobenius distance between a matrix and its adjoint.
pub(crate) fn hermiticity_residual(m: &DMatrix<C64>) -> f64 {
    let norm = m.norm();
    if norm == 0.0 {
        return 0.0;
    }
    (m - m.adjoint()).norm() / norm
}

/// A block-diagonal Hermitian operator on a [`BlockBasis`].
#[derive(Debug, Clone)]
pub struct HermitianOperator<S: BasisState> {
    basis: Arc<BlockBasis<S>>,
    blocks: Vec<DMatrix<C64>>,
}

impl<S: BasisState> HermitianOperator<S> {
    /// Wraps per-block matrices, checking shapes and Hermiticity with the
    /// default tolerance.
    pub fn new(basis: Arc<BlockBasis<S>>, blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        Self::with_tolerance(basis, blocks, Tolerances::default().hermiticity)
    }

    pub fn with_tolerance(
        basis: Arc<BlockBasis<S>>,
        blocks: Vec<DMatrix<C64>>,
        tolerance: f64,
    ) -> Result<Self> {
        check_shapes(&basis, &blocks)?;
        for (b, m) in blocks.iter().enumerate() {
            let residual = hermiticity_residual(m);
            if residual > tolerance {
                return Err(CoreError::NotHermitian { block: b, label: basis.label(b), residual });
            }
        }
        Ok(Self { basis, blocks })
    }

    /// Builds the operator from a matrix-element function
    /// `f(block, bra_state, ket_state)`; only the upper triangle is queried and
    /// the lower triangle is filled by conjugation.
    pub fn from_elements<F>(basis: Arc<BlockBasis<S>>, mut f: F) -> Self
    where
        F: FnMut(usize, &S, &S) -> C64,
    {
        let blocks = (0..basis.num_blocks())
            .map(|b| {
                let states = basis.states(b);
                let d = states.len();
                let mut m = DMatrix::<C64>::zeros(d, d);
                for i in 0..d {
                    m[(i, i)] = C64::new(f(b, &states[i], &states[i]).re, 0.0);
                    for j in (i + 1)..d {
                        let v = f(b, &states[i], &states[j]);
                        m[(i, j)] = v;
                        m[(j, i)] = v.conj();
                    }
                }
                m
            })
            .collect();
        Self { basis, blocks }
    }

    /// Operator diagonal in the basis.
    pub fn diagonal<F>(basis: Arc<BlockBasis<S>>, mut f: F) -> Self
    where
        F: FnMut(&S) -> f64,
    {
        let blocks = (0..basis.num_blocks())
            .map(|b| {
                let diag: Vec<C64> = basis.states(b).iter().map(|s| C64::new(f(s), 0.0)).collect();
                DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
            })
            .collect();
        Self { basis, blocks }
    }

    pub fn identity(basis: Arc<BlockBasis<S>>) -> Self {
        Self::diagonal(basis, |_| 1.0)
    }

    pub fn basis(&self) -> &Arc<BlockBasis<S>> {
        &self.basis
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &DMatrix<C64> {
        &self.blocks[b]
    }

    /// Largest per-block Hermiticity residual.
    pub fn hermiticity_residual(&self) -> f64 {
        self.blocks.iter().map(hermiticity_residual).fold(0.0, f64::max)
    }

    /// `a·self + b·other`.
    pub fn linear_combination(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(CoreError::BasisMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| x * C64::from(a) + y * C64::from(b))
            .collect();
        Ok(Self { basis: self.basis.clone(), blocks })
    }

    /// `H|ψ⟩`.
    pub fn apply(&self, state: &StateVector<S>) -> Result<StateVector<S>> {
        if !same_basis(&self.basis, state.basis()) {
            return Err(CoreError::BasisMismatch);
        }
        let blocks = self.blocks.iter().zip(state.blocks()).map(|(m, v)| m * v).collect();
        Ok(StateVector::from_blocks_unchecked(self.basis.clone(), blocks))
    }
}

pub(crate) fn check_shapes<S: BasisState>(
    basis: &BlockBasis<S>,
    blocks: &[DMatrix<C64>],
) -> Result<()> {
    if blocks.len() != basis.num_blocks() {
        return Err(CoreError::InvalidBasis(format!(
            "{} blocks supplied for a basis with {} blocks",
            blocks.len(),
            basis.num_blocks()
        )));
    }
    for (b, m) in blocks.iter().enumerate() {
        let d = basis.block_dim(b);
        if m.nrows() != d || m.ncols() != d {
            return Err(CoreError::DimensionMismatch { block: b, expected: d, found: m.nrows().max(m.ncols()) });
        }
    }
    Ok(())
}

/// Bases are interchangeable when they are the same allocation or equal.
pub(crate) fn same_basis<S: BasisState>(a: &Arc<BlockBasis<S>>, b: &Arc<BlockBasis<S>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
