use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::basis::{BasisState, BlockBasis};
use crate::error::CoreError;
use crate::operator::{check_shapes, hermiticity_residual, same_basis, HermitianOperator};
use crate::tolerance::Tolerances;
use crate::{Result, C64};

/// A pure state stored as one amplitude vector per block.
#[derive(Debug, Clone)]
pub struct StateVector<S: BasisState> {
    basis: Arc<BlockBasis<S>>,
    blocks: Vec<DVector<C64>>,
}

impl<S: BasisState> StateVector<S> {
    pub fn zeros(basis: Arc<BlockBasis<S>>) -> Self {
        let blocks = basis.block_dims().into_iter().map(DVector::zeros).collect();
        Self { basis, blocks }
    }

    /// The normalized basis state `|s⟩`.
    pub fn basis_state(basis: Arc<BlockBasis<S>>, state: &S) -> Result<Self> {
        let (b, i) = basis
            .locate(state)
            .ok_or_else(|| CoreError::UnknownState(format!("{state:?}")))?;
        let mut out = Self::zeros(basis);
        out.blocks[b][i] = C64::new(1.0, 0.0);
        Ok(out)
    }

    /// Builds a state from `(descriptor, amplitude)` pairs; amplitudes of
    /// repeated descriptors add up. No normalization is applied.
    pub fn from_amplitudes<'a, I>(basis: Arc<BlockBasis<S>>, amplitudes: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a S, C64)>,
        S: 'a,
    {
        let mut out = Self::zeros(basis);
        for (s, a) in amplitudes {
            let (b, i) = out
                .basis
                .locate(s)
                .ok_or_else(|| CoreError::UnknownState(format!("{s:?}")))?;
            out.blocks[b][i] += a;
        }
        Ok(out)
    }

    pub fn from_blocks(basis: Arc<BlockBasis<S>>, blocks: Vec<DVector<C64>>) -> Result<Self> {
        if blocks.len() != basis.num_blocks() {
            return Err(CoreError::InvalidBasis(format!(
                "{} blocks supplied for a basis with {} blocks",
                blocks.len(),
                basis.num_blocks()
            )));
        }
        for (b, v) in blocks.iter().enumerate() {
            if v.len() != basis.block_dim(b) {
                return Err(CoreError::DimensionMismatch { block: b, expected: basis.block_dim(b), found: v.len() });
            }
        }
        Ok(Self { basis, blocks })
    }

    pub(crate) fn from_blocks_unchecked(basis: Arc<BlockBasis<S>>, blocks: Vec<DVector<C64>>) -> Self {
        Self { basis, blocks }
    }

    pub fn basis(&self) -> &Arc<BlockBasis<S>> {
        &self.basis
    }

    pub fn blocks(&self) -> &[DVector<C64>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &DVector<C64> {
        &self.blocks[b]
    }

    pub fn amplitude(&self, state: &S) -> Option<C64> {
        self.basis.locate(state).map(|(b, i)| self.blocks[b][i])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.blocks.iter().map(|v| v.norm_squared()).sum()
    }

    /// Squared norm carried by each block.
    pub fn block_weights(&self) -> Vec<f64> {
        self.blocks.iter().map(|v| v.norm_squared()).collect()
    }

    /// Scales the state to unit norm; a zero state is left untouched.
    pub fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        if n > 0.0 {
            for v in &mut self.blocks {
                *v /= C64::from(n);
            }
        }
    }

    /// Iterates over `(state, |amplitude|²)`.
    pub fn probabilities(&self) -> impl Iterator<Item = (&S, f64)> + '_ {
        self.basis.iter().map(move |(b, i, s)| (s, self.blocks[b][i].norm_sqr()))
    }

    /// `⟨ψ|H|ψ⟩` for a normalized state.
    pub fn expectation(&self, op: &HermitianOperator<S>) -> Result<f64> {
        self.expectation_with(op, &Tolerances::default())
    }

    pub fn expectation_with(&self, op: &HermitianOperator<S>, tol: &Tolerances) -> Result<f64> {
        if !same_basis(&self.basis, op.basis()) {
            return Err(CoreError::BasisMismatch);
        }
        let n = self.norm_sqr();
        if (n - 1.0).abs() > tol.norm {
            return Err(CoreError::NormNotUnity(n));
        }
        let value: C64 = self
            .blocks
            .iter()
            .zip(op.blocks())
            .map(|(v, m)| v.dotc(&(m * v)))
            .sum();
        check_real(value, tol.imaginary)
    }
}

/// A density matrix that is block diagonal in the basis blocks.
#[derive(Debug, Clone)]
pub struct DensityMatrix<S: BasisState> {
    basis: Arc<BlockBasis<S>>,
    blocks: Vec<DMatrix<C64>>,
}

impl<S: BasisState> DensityMatrix<S> {
    pub fn zeros(basis: Arc<BlockBasis<S>>) -> Self {
        let blocks = basis.block_dims().into_iter().map(|d| DMatrix::zeros(d, d)).collect();
        Self { basis, blocks }
    }

    pub fn from_blocks(basis: Arc<BlockBasis<S>>, blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        check_shapes(&basis, &blocks)?;
        Ok(Self { basis, blocks })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &StateVector<S>) -> Self {
        let blocks = state.blocks().iter().map(|v| v * v.adjoint()).collect();
        Self { basis: state.basis().clone(), blocks }
    }

    pub fn basis(&self) -> &Arc<BlockBasis<S>> {
        &self.basis
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        &self.blocks
    }

    pub fn blocks_mut(&mut self) -> &mut [DMatrix<C64>] {
        &mut self.blocks
    }

    pub fn block(&self, b: usize) -> &DMatrix<C64> {
        &self.blocks[b]
    }

    pub fn element(&self, bra: &S, ket: &S) -> C64 {
        match (self.basis.locate(bra), self.basis.locate(ket)) {
            (Some((b1, i)), Some((b2, j))) if b1 == b2 => self.blocks[b1][(i, j)],
            _ => C64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> C64 {
        self.blocks.iter().map(|m| m.trace()).sum()
    }

    /// Largest per-block relative Hermiticity residual.
    pub fn hermiticity_residual(&self) -> f64 {
        self.blocks.iter().map(hermiticity_residual).fold(0.0, f64::max)
    }

    /// Smallest eigenvalue over all blocks of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .filter(|m| m.nrows() > 0)
            .map(|m| {
                let h = (m + m.adjoint()) * C64::from(0.5);
                h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Diagonal populations `(state, ρ_ss)`.
    pub fn populations(&self) -> impl Iterator<Item = (&S, f64)> + '_ {
        self.basis.iter().map(move |(b, i, s)| (s, self.blocks[b][(i, i)].re))
    }

    /// `Tr(ρ A)` for a unit-trace ρ.
    pub fn expectation(&self, op: &HermitianOperator<S>) -> Result<f64> {
        self.expectation_with(op, &Tolerances::default())
    }

    pub fn expectation_with(&self, op: &HermitianOperator<S>, tol: &Tolerances) -> Result<f64> {
        if !same_basis(&self.basis, op.basis()) {
            return Err(CoreError::BasisMismatch);
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(CoreError::TraceNotUnity(tr.re));
        }
        let value: C64 = self
            .blocks
            .iter()
            .zip(op.blocks())
            .map(|(rho, a)| (rho * a).trace())
            .sum();
        check_real(value, tol.imaginary)
    }
}

fn check_real(value: C64, tol: f64) -> Result<f64> {
    if value.im.abs() > tol * value.re.abs().max(1.0) {
        return Err(CoreError::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single bosonic mode truncated at `n_max`, one block per photon number.
    fn fock(n_max: u32) -> Arc<BlockBasis<u32>> {
        Arc::new(BlockBasis::new((0..=n_max).map(|n| (n as i64, vec![n])).collect()).unwrap())
    }

    /// A single block holding the whole Fock space, so coherences are allowed.
    fn fock_single_block(n_max: u32) -> Arc<BlockBasis<u32>> {
        Arc::new(BlockBasis::new(vec![(0, (0..=n_max).collect())]).unwrap())
    }

    #[test]
    fn identity_expectation_is_one() {
        let basis = fock(4);
        let psi = StateVector::basis_state(basis.clone(), &3).unwrap();
        let id = HermitianOperator::identity(basis);
        assert!((psi.expectation(&id).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn number_operator_on_vacuum_and_superposition() {
        let basis = fock_single_block(3);
        let n_op = HermitianOperator::diagonal(basis.clone(), |&n| n as f64);
        let vac = StateVector::basis_state(basis.clone(), &0).unwrap();
        assert_eq!(vac.expectation(&n_op).unwrap(), 0.0);

        let a = C64::from(std::f64::consts::FRAC_1_SQRT_2);
        let sup = StateVector::from_amplitudes(basis.clone(), [(&0, a), (&1, a)]).unwrap();
        assert!((sup.expectation(&n_op).unwrap() - 0.5).abs() < 1e-14);
        let rho = DensityMatrix::from_pure(&sup);
        assert!((rho.expectation(&n_op).unwrap() - 0.5).abs() < 1e-14);
        assert!(rho.min_eigenvalue() > -1e-14);
    }

    #[test]
    fn unnormalized_inputs_are_rejected() {
        let basis = fock(2);
        let id = HermitianOperator::identity(basis.clone());
        let two = StateVector::from_amplitudes(basis.clone(), [(&1, C64::from(2.0))]).unwrap();
        assert!(matches!(two.expectation(&id), Err(CoreError::NormNotUnity(_))));
        let rho = DensityMatrix::from_pure(&two);
        assert!(matches!(rho.expectation(&id), Err(CoreError::TraceNotUnity(_))));
    }

    #[test]
    fn expectation_is_linear_in_the_operator() {
        let basis = fock_single_block(3);
        let a = HermitianOperator::from_elements(basis.clone(), |_, i, j| {
            C64::new((*i + *j) as f64, if i < j { 0.3 } else { 0.0 })
        });
        let b = HermitianOperator::diagonal(basis.clone(), |&n| (n * n) as f64);
        let mut psi = StateVector::from_amplitudes(
            basis.clone(),
            [(&0, C64::new(0.2, 0.1)), (&2, C64::new(-0.5, 0.7)), (&3, C64::new(0.1, 0.0))],
        )
        .unwrap();
        psi.normalize();
        let ea = psi.expectation(&a).unwrap();
        let eb = psi.expectation(&b).unwrap();
        let ab = a.linear_combination(2.0, &b, -3.0).unwrap();
        assert!((psi.expectation(&ab).unwrap() - (2.0 * ea - 3.0 * eb)).abs() < 1e-12);
    }
}
