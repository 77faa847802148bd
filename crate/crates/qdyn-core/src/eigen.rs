use std::sync::Arc;

use nalgebra::DMatrix;

use crate::basis::{BasisState, BlockBasis};
use crate::error::CoreError;
use crate::operator::{hermiticity_residual, HermitianOperator};
use crate::tolerance::Tolerances;
use crate::{Result, C64};

/// Eigenpairs of one block, eigenvalues ascending, eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct BlockEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<C64>,
}

impl BlockEigen {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let mut scaled = self.vectors.clone();
        for (j, &l) in self.values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(l);
        }
        scaled * self.vectors.adjoint()
    }

    /// `‖V†V − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.values.len();
        (self.vectors.adjoint() * &self.vectors - DMatrix::<C64>::identity(d, d)).norm()
    }
}

/// Per-block eigendecomposition of a [`HermitianOperator`].
#[derive(Debug, Clone)]
pub struct Eigensystem<S: BasisState> {
    basis: Arc<BlockBasis<S>>,
    blocks: Vec<BlockEigen>,
}

impl<S: BasisState> Eigensystem<S> {
    pub fn basis(&self) -> &Arc<BlockBasis<S>> {
        &self.basis
    }

    pub fn blocks(&self) -> &[BlockEigen] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &BlockEigen {
        &self.blocks[b]
    }

    /// All eigenvalues, block by block.
    pub fn eigenvalues(&self) -> impl Iterator<Item = f64> + '_ {
        self.blocks.iter().flat_map(|b| b.values.iter().copied())
    }
}

/// Diagonalizes every block of `op` with default tolerances.
pub fn eig_decompose<S: BasisState>(op: &HermitianOperator<S>) -> Result<Eigensystem<S>> {
    eig_decompose_with(op, &Tolerances::default())
}

pub fn eig_decompose_with<S: BasisState>(
    op: &HermitianOperator<S>,
    tol: &Tolerances,
) -> Result<Eigensystem<S>> {
    let basis = op.basis().clone();
    let blocks = op
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, m)| {
            eig_decompose_matrix(m, tol).map_err(|e| match e {
                CoreError::NotHermitian { residual, .. } => {
                    CoreError::NotHermitian { block: b, label: basis.label(b), residual }
                }
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Eigensystem { basis, blocks })
}

/// Diagonalizes a single dense Hermitian matrix.
///
/// Real symmetric input takes the faster real path. Non-Hermitian input is
/// reported as block 0, label 0; [`eig_decompose`] rewrites that to the real
/// block coordinates.
pub fn eig_decompose_matrix(m: &DMatrix<C64>, tol: &Tolerances) -> Result<BlockEigen> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(CoreError::DimensionMismatch { block: 0, expected: d, found: m.ncols() });
    }
    let residual = hermiticity_residual(m);
    if residual > tol.hermiticity {
        return Err(CoreError::NotHermitian { block: 0, label: 0, residual });
    }
    if d == 0 {
        return Ok(BlockEigen { values: vec![], vectors: DMatrix::zeros(0, 0) });
    }

    let herm = (m + m.adjoint()) * C64::from(0.5);
    let (mut values, mut vectors) = if herm.iter().all(|z| z.im == 0.0) {
        let eig = herm.map(|z| z.re).symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors.map(C64::from))
    } else {
        let eig = herm.clone().symmetric_eigen();
        (eig.eigenvalues.iter().copied().collect::<Vec<_>>(), eig.eigenvectors)
    };
    // nalgebra's implicit QR occasionally breaks down on very sparse input.
    let finite = values.iter().all(|v| v.is_finite()) && vectors.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    if !finite {
        (values, vectors) = jacobi_eigen(&herm);
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = DMatrix::from_fn(d, d, |r, c| vectors[(r, order[c])]);
    Ok(BlockEigen { values: sorted_values, vectors: sorted_vectors })
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
pub(crate) fn jacobi_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|j| (0..n).filter(move |&i| i != j).map(move |i| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let abs_g = g.norm();
                if abs_g <= 1e-300 {
                    continue;
                }
                let phase = g / abs_g;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * abs_g);
                let t = if tau == 0.0 { 1.0 } else { tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U = diag(1, e^{−iφ}) · [[c, s], [−s, c]] on the (p, q) plane.
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c + akq * u_qp;
                    a[(k, q)] = akp * s + akq * u_qq;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c + vkq * u_qp;
                    v[(k, q)] = vkp * s + vkq * u_qq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c + aqk * u_qp.conj();
                    a[(q, k)] = apk * s + aqk * u_qq.conj();
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::from(a[(p, p)].re);
                a[(q, q)] = C64::from(a[(q, q)].re);
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}
