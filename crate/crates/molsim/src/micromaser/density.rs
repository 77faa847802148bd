use std::sync::Arc;

use nalgebra::DMatrix;
use qdyn_core::{BlockBasis, DensityMatrix, C64};

use crate::error::{Error, Result};

/// Occupations of the left and right wells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occupation {
    pub left: usize,
    pub right: usize,
}

/// Two-mode Fock space with at most `n_max` molecules per well, split into
/// blocks of fixed total number `N = 0..=2·n_max`. Within a block the states
/// are ordered by increasing left occupation.
#[derive(Debug, Clone)]
pub struct TwoModeSpace {
    n_max: usize,
    basis: Arc<BlockBasis<Occupation>>,
}

impl TwoModeSpace {
    pub fn new(n_max: usize) -> Self {
        let blocks = (0..=2 * n_max)
            .map(|n| {
                let (lo, hi) = left_range(n_max, n);
                let states = (lo..=hi).map(|l| Occupation { left: l, right: n - l }).collect();
                (n as i64, states)
            })
            .collect();
        let basis = Arc::new(BlockBasis::new(blocks).expect("two-mode blocks are disjoint"));
        Self { n_max, basis }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn basis(&self) -> &Arc<BlockBasis<Occupation>> {
        &self.basis
    }

    pub fn num_blocks(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn block_dim(&self, total: usize) -> usize {
        let (lo, hi) = left_range(self.n_max, total);
        hi + 1 - lo
    }

    /// Smallest left occupation present in block `total`.
    pub fn left_offset(&self, total: usize) -> usize {
        left_range(self.n_max, total).0
    }

    /// Position of `(left, total − left)` in block `total`, if it exists.
    pub fn index(&self, total: usize, left: usize) -> Option<usize> {
        let (lo, hi) = left_range(self.n_max, total);
        (lo..=hi).contains(&left).then(|| left - lo)
    }
}

fn left_range(n_max: usize, total: usize) -> (usize, usize) {
    (total.saturating_sub(n_max), total.min(n_max))
}

/// Two-mode molecular density matrix, block diagonal in the total number.
#[derive(Debug, Clone)]
pub struct TwoModeDensityMatrix {
    space: TwoModeSpace,
    rho: DensityMatrix<Occupation>,
}

impl TwoModeDensityMatrix {
    pub fn vacuum(n_max: usize) -> Self {
        let space = TwoModeSpace::new(n_max);
        let mut rho = DensityMatrix::zeros(space.basis().clone());
        rho.blocks_mut()[0][(0, 0)] = C64::new(1.0, 0.0);
        Self { space, rho }
    }

    /// Pure Fock state `|left, right⟩⟨left, right|`.
    pub fn number_state(n_max: usize, left: usize, right: usize) -> Result<Self> {
        let space = TwoModeSpace::new(n_max);
        let total = left + right;
        let i = (total <= 2 * n_max)
            .then(|| space.index(total, left))
            .flatten()
            .ok_or_else(|| Error::Numerical(format!("|{left},{right}⟩ outside truncation {n_max}")))?;
        let mut rho = DensityMatrix::zeros(space.basis().clone());
        rho.blocks_mut()[total][(i, i)] = C64::new(1.0, 0.0);
        Ok(Self { space, rho })
    }

    pub fn from_blocks(n_max: usize, blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        let space = TwoModeSpace::new(n_max);
        let rho = DensityMatrix::from_blocks(space.basis().clone(), blocks)?;
        Ok(Self { space, rho })
    }

    pub fn space(&self) -> &TwoModeSpace {
        &self.space
    }

    pub fn n_max(&self) -> usize {
        self.space.n_max
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        self.rho.blocks()
    }

    pub fn blocks_mut(&mut self) -> &mut [DMatrix<C64>] {
        self.rho.blocks_mut()
    }

    pub fn block(&self, total: usize) -> &DMatrix<C64> {
        self.rho.block(total)
    }

    pub fn as_density(&self) -> &DensityMatrix<Occupation> {
        &self.rho
    }

    pub fn element(&self, bra: Occupation, ket: Occupation) -> C64 {
        self.rho.element(&bra, &ket)
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.rho.hermiticity_residual()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.rho.min_eigenvalue()
    }

    /// Largest deviation from the left/right mirror image `ρ(n_l,n_r;m_l,m_r) = ρ(n_r,n_l;m_r,m_l)`.
    pub fn exchange_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in self.blocks() {
            let d = m.nrows();
            for i in 0..d {
                for j in 0..d {
                    worst = worst.max((m[(i, j)] - m[(d - 1 - i, d - 1 - j)]).norm());
                }
            }
        }
        worst
    }

    /// Entrywise L1 norm over all blocks.
    pub fn l1_norm(&self) -> f64 {
        l1_norm(self.blocks())
    }

    /// Probability that either well sits at the truncation edge.
    pub fn edge_population(&self) -> f64 {
        let n_max = self.n_max();
        self.blocks()
            .iter()
            .enumerate()
            .map(|(total, m)| {
                let lo = self.space.left_offset(total);
                (0..m.nrows())
                    .filter(|&i| {
                        let l = lo + i;
                        l == n_max || total - l == n_max
                    })
                    .map(|i| m[(i, i)].re)
                    .sum::<f64>()
            })
            .sum()
    }

    /// Replaces ρ by `(ρ + ρ†)/2` scaled to unit trace.
    pub fn symmetrize_and_normalize(&mut self) {
        let tr = self.trace();
        for m in self.blocks_mut() {
            let h = (&*m + m.adjoint()) * C64::from(0.5 / tr);
            *m = h;
        }
    }
}

pub(crate) fn l1_norm(blocks: &[DMatrix<C64>]) -> f64 {
    blocks.iter().flat_map(|m| m.iter()).map(|z| z.norm()).sum()
}
