use nalgebra::DVector;

use crate::basis::BasisState;
use crate::eigen::{eig_decompose, Eigensystem};
use crate::error::CoreError;
use crate::operator::{same_basis, HermitianOperator};
use crate::state::StateVector;
use crate::{Result, C64};

/// Exact time evolution `exp(−iHt)` (ħ = 1) through a cached eigensystem.
#[derive(Debug, Clone)]
pub struct Propagator<S: BasisState> {
    eig: Eigensystem<S>,
}

/// Initial state expressed in the eigenbasis, ready to be evolved to many times.
#[derive(Debug, Clone)]
pub struct SpectralState<'a, S: BasisState> {
    prop: &'a Propagator<S>,
    coefficients: Vec<DVector<C64>>,
}

impl<S: BasisState> Propagator<S> {
    pub fn new(op: &HermitianOperator<S>) -> Result<Self> {
        Ok(Self { eig: eig_decompose(op)? })
    }

    pub fn from_eigensystem(eig: Eigensystem<S>) -> Self {
        Self { eig }
    }

    pub fn eigensystem(&self) -> &Eigensystem<S> {
        &self.eig
    }

    /// Projects `state` onto the eigenbasis once.
    pub fn prepare<'a>(&'a self, state: &StateVector<S>) -> Result<SpectralState<'a, S>> {
        if !same_basis(self.eig.basis(), state.basis()) {
            return Err(CoreError::BasisMismatch);
        }
        let coefficients = self
            .eig
            .blocks()
            .iter()
            .zip(state.blocks())
            .map(|(e, v)| e.vectors.adjoint() * v)
            .collect();
        Ok(SpectralState { prop: self, coefficients })
    }

    /// `exp(−iHt)|ψ⟩`.
    pub fn evolve(&self, state: &StateVector<S>, t: f64) -> Result<StateVector<S>> {
        Ok(self.prepare(state)?.at(t))
    }
}

impl<S: BasisState> SpectralState<'_, S> {
    pub fn at(&self, t: f64) -> StateVector<S> {
        let blocks = self
            .prop
            .eig
            .blocks()
            .iter()
            .zip(&self.coefficients)
            .map(|(e, c)| {
                let phased = DVector::from_iterator(
                    c.len(),
                    c.iter().zip(&e.values).map(|(a, &l)| a * C64::from_polar(1.0, -l * t)),
                );
                &e.vectors * phased
            })
            .collect();
        StateVector::from_blocks_unchecked(self.prop.eig.basis().clone(), blocks)
    }
}

/// One-shot `exp(−iHt)|ψ⟩`; use [`Propagator`] when evolving repeatedly.
pub fn propagate<S: BasisState>(
    state: &StateVector<S>,
    op: &HermitianOperator<S>,
    t: f64,
) -> Result<StateVector<S>> {
    if !same_basis(state.basis(), op.basis()) {
        return Err(CoreError::BasisMismatch);
    }
    Propagator::new(op)?.evolve(state, t)
}
