//! Pieces of the coarse-grained master equation. Time is measured in units of
//! the molecular lifetime.

use nalgebra::DMatrix;
use qdyn_core::{eig_decompose_matrix, Tolerances, C64};

use super::density::{TwoModeDensityMatrix, TwoModeSpace};
use super::params::MicromaserParams;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Well {
    Left,
    Right,
}

impl Well {
    pub const BOTH: [Well; 2] = [Well::Left, Well::Right];

    fn occupation(self, left: usize, total: usize) -> usize {
        match self {
            Well::Left => left,
            Well::Right => total - left,
        }
    }
}

/// Amplitudes for one pulse acting on `|e⟩|n⟩`: `stay[n]` for `|e⟩|n⟩` and
/// `emit[n]` for `|g⟩|n+1⟩`. At the truncation edge the pulse acts trivially.
#[derive(Debug, Clone)]
pub struct GainCoefficients {
    pub stay: Vec<C64>,
    pub emit: Vec<C64>,
}

impl GainCoefficients {
    pub fn new(params: &MicromaserParams) -> Result<Self> {
        let n_max = params.n_max;
        let phi = params.chi_tau();
        let mut stay = Vec::with_capacity(n_max + 1);
        let mut emit = Vec::with_capacity(n_max + 1);
        for n in 0..n_max {
            let coupling = ((n + 1) as f64).sqrt();
            if params.is_resonant() {
                let theta = phi * coupling;
                stay.push(C64::new(theta.cos(), 0.0));
                emit.push(C64::new(0.0, -theta.sin()));
            } else {
                let (a, b) = manifold_amplitudes(params.eta + params.beta * n as f64, coupling, phi)?;
                stay.push(a);
                emit.push(b);
            }
        }
        stay.push(C64::new(1.0, 0.0));
        emit.push(C64::new(0.0, 0.0));
        Ok(Self { stay, emit })
    }
}

/// Exponentiates the two-level manifold `{|e,n⟩, |g,n+1⟩}` with half-splitting
/// `detuning` and coupling `coupling` (units of |χ|) for pulse area `phi`.
fn manifold_amplitudes(detuning: f64, coupling: f64, phi: f64) -> Result<(C64, C64)> {
    let h = DMatrix::from_row_slice(
        2,
        2,
        &[C64::from(detuning), C64::from(coupling), C64::from(coupling), C64::from(-detuning)],
    );
    let e = eig_decompose_matrix(&h, &Tolerances::default())?;
    let mut u = DMatrix::<C64>::zeros(2, 2);
    for (k, &l) in e.values.iter().enumerate() {
        let v = e.vectors.column(k);
        u += &v * v.adjoint() * C64::from_polar(1.0, -l * phi);
    }
    Ok((u[(0, 0)], u[(1, 0)]))
}

/// `out(i,j) = f_i f_j* src(s_i, s_j)` over the entries of `map` that exist.
fn transfer(map: &[Option<(usize, C64)>], src: &DMatrix<C64>) -> DMatrix<C64> {
    let d = map.len();
    let mut out = DMatrix::zeros(d, d);
    for (j, mj) in map.iter().enumerate() {
        let Some((sj, fj)) = *mj else { continue };
        let fj = fj.conj();
        for (i, mi) in map.iter().enumerate() {
            if let Some((si, fi)) = *mi {
                out[(i, j)] = fi * fj * src[(si, sj)];
            }
        }
    }
    out
}

/// Block-local Liouvillian data, shared by the RK4 integrator and the direct
/// steady-state solver.
#[derive(Debug, Clone)]
pub struct Generator {
    space: TwoModeSpace,
    n_ex: f64,
    coeffs: GainCoefficients,
    hamiltonian: Vec<DMatrix<C64>>,
    /// Per block and well: diagonal `stay` factors.
    stay_maps: Vec<[Vec<C64>; 2]>,
    /// Per target block and well: source in block `N−1` and `emit` factor.
    raise_maps: Vec<[Vec<Option<(usize, C64)>>; 2]>,
    /// Per target block and well: source in block `N+1` and `√(n+1)`.
    lower_maps: Vec<[Vec<Option<(usize, C64)>>; 2]>,
}

impl Generator {
    pub fn new(params: &MicromaserParams) -> Result<Self> {
        params.validate()?;
        let space = TwoModeSpace::new(params.n_max);
        let coeffs = GainCoefficients::new(params)?;
        let hamiltonian = hamiltonian_blocks(&space, params.u_b, params.t_j);
        let top = space.num_blocks() - 1;
        let mut stay_maps = Vec::new();
        let mut raise_maps = Vec::new();
        let mut lower_maps = Vec::new();
        for total in 0..=top {
            let lo = space.left_offset(total);
            let d = space.block_dim(total);
            let stay = Well::BOTH.map(|w| (0..d).map(|i| coeffs.stay[w.occupation(lo + i, total)]).collect());
            let raise = Well::BOTH.map(|w| {
                (0..d)
                    .map(|i| {
                        let l = lo + i;
                        let n = w.occupation(l, total);
                        if total == 0 || n == 0 {
                            return None;
                        }
                        let src_left = if w == Well::Left { l - 1 } else { l };
                        space.index(total - 1, src_left).map(|s| (s, coeffs.emit[n - 1]))
                    })
                    .collect()
            });
            let lower = Well::BOTH.map(|w| {
                (0..d)
                    .map(|i| {
                        let l = lo + i;
                        let n = w.occupation(l, total);
                        if total == top || n == space.n_max() {
                            return None;
                        }
                        let src_left = if w == Well::Left { l + 1 } else { l };
                        space.index(total + 1, src_left).map(|s| (s, C64::from(((n + 1) as f64).sqrt())))
                    })
                    .collect()
            });
            stay_maps.push(stay);
            raise_maps.push(raise);
            lower_maps.push(lower);
        }
        Ok(Self { space, n_ex: params.n_ex, coeffs, hamiltonian, stay_maps, raise_maps, lower_maps })
    }

    pub fn space(&self) -> &TwoModeSpace {
        &self.space
    }

    pub fn coefficients(&self) -> &GainCoefficients {
        &self.coeffs
    }

    pub fn hamiltonian(&self, total: usize) -> &DMatrix<C64> {
        &self.hamiltonian[total]
    }

    /// `A_i ρ_N A_i†` for the no-emission branch of one pulse.
    fn pulse_stay(&self, total: usize, well: Well, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let f = &self.stay_maps[total][well as usize];
        DMatrix::from_fn(rho.nrows(), rho.ncols(), |i, j| f[i] * f[j].conj() * rho[(i, j)])
    }

    /// `B_i ρ_{N−1} B_i†` landing in block `total`.
    fn pulse_emit(&self, total: usize, well: Well, below: &DMatrix<C64>) -> DMatrix<C64> {
        transfer(&self.raise_maps[total][well as usize], below)
    }

    /// `b_i ρ_{N+1} b_i†` landing in block `total`.
    fn jump_down(&self, total: usize, well: Well, above: &DMatrix<C64>) -> DMatrix<C64> {
        transfer(&self.lower_maps[total][well as usize], above)
    }

    /// Contribution to `dρ_N/dt` from `ρ_N` itself.
    pub fn local(&self, total: usize, rho: &DMatrix<C64>) -> DMatrix<C64> {
        let h = &self.hamiltonian[total];
        let mut out = (h * rho - rho * h) * C64::new(0.0, -1.0);
        out -= rho * C64::from(total as f64 + 2.0 * self.n_ex);
        for w in Well::BOTH {
            out += self.pulse_stay(total, w, rho) * C64::from(self.n_ex);
        }
        out
    }

    /// Contribution to `dρ_N/dt` from `ρ_{N−1}` (pump).
    pub fn from_below(&self, total: usize, below: &DMatrix<C64>) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(self.space.block_dim(total), self.space.block_dim(total));
        for w in Well::BOTH {
            out += self.pulse_emit(total, w, below) * C64::from(self.n_ex);
        }
        out
    }

    /// Contribution to `dρ_N/dt` from `ρ_{N+1}` (decay).
    pub fn from_above(&self, total: usize, above: &DMatrix<C64>) -> DMatrix<C64> {
        let mut out = DMatrix::zeros(self.space.block_dim(total), self.space.block_dim(total));
        for w in Well::BOTH {
            out += self.jump_down(total, w, above);
        }
        out
    }

    /// Full right-hand side `dρ/dt`.
    pub fn apply(&self, blocks: &[DMatrix<C64>]) -> Vec<DMatrix<C64>> {
        let top = blocks.len() - 1;
        (0..=top)
            .map(|n| {
                let mut out = self.local(n, &blocks[n]);
                if n > 0 {
                    out += self.from_below(n, &blocks[n - 1]);
                }
                if n < top {
                    out += self.from_above(n, &blocks[n + 1]);
                }
                out
            })
            .collect()
    }

    /// Largest `|λ|` of the block-local part, used to bound the RK4 step.
    pub fn spectral_bound(&self) -> f64 {
        let h_spread = self
            .hamiltonian
            .iter()
            .map(|h| {
                // Gershgorin bound on the spread of eigenvalues of H.
                let radius = (0..h.nrows())
                    .map(|i| h.row(i).iter().map(|z| z.norm()).sum::<f64>())
                    .fold(0.0, f64::max);
                2.0 * radius
            })
            .fold(0.0, f64::max);
        h_spread + 2.0 * self.space.n_max() as f64 + 4.0 * self.n_ex
    }
}

/// Tunneling plus collision Hamiltonian per block (units of the decay rate).
pub fn hamiltonian_blocks(space: &TwoModeSpace, u_b: f64, t_j: f64) -> Vec<DMatrix<C64>> {
    (0..space.num_blocks())
        .map(|total| {
            let lo = space.left_offset(total);
            let d = space.block_dim(total);
            let mut h = DMatrix::zeros(d, d);
            for i in 0..d {
                let l = lo + i;
                let r = total - l;
                let diff = l as f64 - r as f64;
                h[(i, i)] = C64::from(0.25 * u_b * diff * diff);
                if i + 1 < d {
                    // ⟨l+1, r−1| b_l† b_r |l, r⟩
                    let t = -t_j * (((l + 1) * r) as f64).sqrt();
                    h[(i + 1, i)] = C64::from(t);
                    h[(i, i + 1)] = C64::from(t);
                }
            }
            h
        })
        .collect()
}

/// One photo-association pulse in `well`, atoms traced out afterwards.
pub fn gain_map(rho: &TwoModeDensityMatrix, well: Well, params: &MicromaserParams) -> Result<TwoModeDensityMatrix> {
    let mut p = params.clone();
    p.n_max = rho.n_max();
    let g = Generator::new(&p)?;
    let blocks = rho.blocks();
    let out = (0..blocks.len())
        .map(|n| {
            let mut m = g.pulse_stay(n, well, &blocks[n]);
            if n > 0 {
                m += g.pulse_emit(n, well, &blocks[n - 1]);
            }
            m
        })
        .collect();
    TwoModeDensityMatrix::from_blocks(rho.n_max(), out)
}

/// Zero-temperature damping of both wells at rate `gamma`, returned as `dρ/dt`.
pub fn damping_superoperator(rho: &TwoModeDensityMatrix, gamma: f64) -> Vec<DMatrix<C64>> {
    let space = rho.space();
    let blocks = rho.blocks();
    let top = blocks.len() - 1;
    (0..=top)
        .map(|n| {
            let lo = space.left_offset(n);
            let mut out = &blocks[n] * C64::from(-gamma * n as f64);
            if n < top {
                for w in Well::BOTH {
                    let map: Vec<_> = (0..space.block_dim(n))
                        .map(|i| {
                            let l = lo + i;
                            let k = w.occupation(l, n);
                            if k == space.n_max() {
                                return None;
                            }
                            let src = if w == Well::Left { l + 1 } else { l };
                            space.index(n + 1, src).map(|s| (s, C64::from((gamma * (k + 1) as f64).sqrt())))
                        })
                        .collect();
                    out += transfer(&map, &blocks[n + 1]);
                }
            }
            out
        })
        .collect()
}

/// `−i[H_b, ρ]`.
pub fn hb_commutator(rho: &TwoModeDensityMatrix, u_b: f64, t_j: f64) -> Vec<DMatrix<C64>> {
    let h = hamiltonian_blocks(rho.space(), u_b, t_j);
    rho.blocks()
        .iter()
        .zip(&h)
        .map(|(r, h)| (h * r - r * h) * C64::new(0.0, -1.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::micromaser::density::Occupation;

    fn params(theta: f64, n_max: usize) -> MicromaserParams {
        MicromaserParams { theta, n_max, ..Default::default() }
    }

    fn trace(blocks: &[DMatrix<C64>]) -> C64 {
        blocks.iter().map(|m| m.trace()).sum()
    }

    #[test]
    fn zero_pulse_is_identity() {
        let rho = TwoModeDensityMatrix::number_state(3, 1, 2).unwrap();
        let out = gain_map(&rho, Well::Left, &params(0.0, 3)).unwrap();
        for (a, b) in out.blocks().iter().zip(rho.blocks()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn vacuum_pulse_rabi_cycle() {
        let p = params(1.3, 4);
        let out = gain_map(&TwoModeDensityMatrix::vacuum(4), Well::Left, &p).unwrap();
        let p1 = out.element(Occupation { left: 1, right: 0 }, Occupation { left: 1, right: 0 }).re;
        assert!((p1 - p.chi_tau().sin().powi(2)).abs() < 1e-14);
        assert!((out.trace() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn trapping_angle_blocks_second_molecule() {
        let theta = 5f64.sqrt() * std::f64::consts::PI;
        let p = params(theta, 4);
        let rho = TwoModeDensityMatrix::number_state(4, 1, 0).unwrap();
        let out = gain_map(&rho, Well::Left, &p).unwrap();
        let p2 = out.element(Occupation { left: 2, right: 0 }, Occupation { left: 2, right: 0 }).re;
        assert!(p2 < 1e-28, "{p2}");
    }

    #[test]
    fn damping_of_single_molecule() {
        let rho = TwoModeDensityMatrix::number_state(3, 1, 0).unwrap();
        let d = damping_superoperator(&rho, 1.0);
        assert!(trace(&d).norm() < 1e-14);
        let space = TwoModeSpace::new(3);
        let i = space.index(1, 1).unwrap();
        assert!((d[1][(i, i)].re + 1.0).abs() < 1e-15);
        assert!((d[0][(0, 0)].re - 1.0).abs() < 1e-15);
        let vac = damping_superoperator(&TwoModeDensityMatrix::vacuum(3), 1.0);
        assert!(vac.iter().all(|m| m.norm() == 0.0));
    }

    #[test]
    fn collisions_vanish_on_balanced_diagonal_state() {
        let rho = TwoModeDensityMatrix::number_state(3, 2, 2).unwrap();
        let d = hb_commutator(&rho, 7.0, 0.0);
        assert!(d.iter().all(|m| m.norm() == 0.0));
    }

    #[test]
    fn off_resonant_amplitudes_match_closed_form() {
        let (eta, beta, phi) = (0.4, 0.1, 0.9);
        let p = MicromaserParams { eta, beta, theta: phi * 10f64.sqrt(), n_max: 5, ..Default::default() };
        let c = GainCoefficients::new(&p).unwrap();
        for n in 0..5 {
            let d = eta + beta * n as f64;
            let s = ((n + 1) as f64).sqrt();
            let w = (d * d + s * s).sqrt();
            let a = C64::new((phi * w).cos(), -d * (phi * w).sin() / w);
            let b = C64::new(0.0, -s * (phi * w).sin() / w);
            assert!((c.stay[n] - a).norm() < 1e-12);
            assert!((c.emit[n] - b).norm() < 1e-12);
            assert!((c.stay[n].norm_sqr() + c.emit[n].norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generator_is_trace_free() {
        let p = MicromaserParams { theta: 2.0, t_j: 1.5, u_b: 0.7, n_max: 4, ..Default::default() };
        let g = Generator::new(&p).unwrap();
        // Random Hermitian unit-trace-ish input.
        let space = g.space().clone();
        let blocks: Vec<DMatrix<C64>> = (0..space.num_blocks())
            .map(|n| {
                let d = space.block_dim(n);
                let a = DMatrix::from_fn(d, d, |i, j| C64::new((i * 3 + j + n) as f64 * 0.1, (i as f64 - j as f64) * 0.05));
                &a * a.adjoint()
            })
            .collect();
        let d = g.apply(&blocks);
        assert!(trace(&d).norm() < 1e-12);
        for m in &d {
            assert!((m - m.adjoint()).norm() < 1e-12);
        }
    }
}
