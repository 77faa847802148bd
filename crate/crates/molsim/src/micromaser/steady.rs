use std::cmp::Ordering;
use nalgebra::{DMatrix, DVector};
use qdyn_core::{Rk4, C64};
use serde::{Deserialize, Serialize};

use super::density::{l1_norm, TwoModeDensityMatrix, TwoModeSpace};
use super::generator::Generator;
use super::params::MicromaserParams;
use crate::error::{Error, Result};

/// Convergence threshold on the entrywise L1 norm of `dρ/dt`.
pub const STEADY_TOLERANCE: f64 = 1e-8;
/// Most negative eigenvalue tolerated along a trajectory.
pub const POSITIVITY_FLOOR: f64 = -1e-6;
/// Population at the truncation edge above which a result is flagged.
pub const EDGE_WARNING: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SteadyStateMethod {
    /// Block recursion on the stationary equations.
    #[default]
    Direct,
    /// RK4 from the vacuum until `dρ/dt` vanishes.
    Integrate,
}

/// Invariant checks recorded along a trajectory.
#[derive(Debug, Clone, Serialize)]
pub struct TrajectorySample {
    pub time: f64,
    pub trace: f64,
    pub hermiticity: f64,
    pub min_eigenvalue: f64,
    pub exchange_asymmetry: f64,
    pub mean_left: f64,
    pub derivative_l1: f64,
}

#[derive(Debug, Clone)]
pub struct SteadyState {
    pub rho: TwoModeDensityMatrix,
    pub converged: bool,
    /// `‖dρ/dt‖₁` at the returned state.
    pub residual: f64,
    /// Time reached (zero for the direct solver).
    pub time: f64,
    /// Step actually used by the integrator.
    pub dt: f64,
    pub edge_population: f64,
    pub samples: Vec<TrajectorySample>,
    pub warnings: Vec<String>,
}

impl SteadyState {
    fn finish(rho: TwoModeDensityMatrix, residual: f64, time: f64, dt: f64, samples: Vec<TrajectorySample>) -> Self {
        let edge = rho.edge_population();
        let mut warnings = Vec::new();
        if edge > EDGE_WARNING {
            warnings.push(format!("population {edge:.3e} at the truncation edge; increase n_max"));
        }
        Self { converged: residual < STEADY_TOLERANCE, rho, residual, time, dt, edge_population: edge, samples, warnings }
    }
}

pub fn steady_state(params: &MicromaserParams, method: SteadyStateMethod) -> Result<SteadyState> {
    match method {
        SteadyStateMethod::Direct => solve_steady_state(params),
        SteadyStateMethod::Integrate => evolve_to_steady_state(params),
    }
}

/// Solves with `params.n_max`, then grows the truncation in steps of two until
/// the edge population drops below [`EDGE_WARNING`] or `limit` is reached.
pub fn steady_state_with_headroom(
    params: &MicromaserParams,
    method: SteadyStateMethod,
    limit: usize,
) -> Result<SteadyState> {
    let mut p = params.clone();
    loop {
        let s = steady_state(&p, method)?;
        if s.edge_population <= EDGE_WARNING || p.n_max + 2 > limit {
            return Ok(s);
        }
        p.n_max += 2;
    }
}

// Hermitian blocks are stored as d² real coordinates: position i + j·d holds
// Re ρ_ii on the diagonal, Re ρ_ij above it and Im ρ_ji below it.
fn hermitian_basis(d: usize, k: usize) -> DMatrix<C64> {
    let (i, j) = (k % d, k / d);
    let mut m = DMatrix::zeros(d, d);
    match i.cmp(&j) {
        Ordering::Equal => m[(i, i)] = C64::new(1.0, 0.0),
        Ordering::Less => {
            m[(i, j)] = C64::new(1.0, 0.0);
            m[(j, i)] = C64::new(1.0, 0.0);
        }
        Ordering::Greater => {
            m[(j, i)] = C64::new(0.0, 1.0);
            m[(i, j)] = C64::new(0.0, -1.0);
        }
    }
    m
}

fn to_coordinates(m: &DMatrix<C64>) -> DVector<f64> {
    let d = m.nrows();
    DVector::from_fn(d * d, |k, _| {
        let (i, j) = (k % d, k / d);
        if i <= j {
            m[(i, j)].re
        } else {
            m[(j, i)].im
        }
    })
}

fn from_coordinates(c: &[f64], d: usize) -> DMatrix<C64> {
    DMatrix::from_fn(d, d, |i, j| match i.cmp(&j) {
        Ordering::Equal => C64::new(c[i + i * d], 0.0),
        Ordering::Less => C64::new(c[i + j * d], c[j + i * d]),
        Ordering::Greater => C64::new(c[j + i * d], -c[i + j * d]),
    })
}

/// Real matrix of a Hermiticity-preserving map from `d_src × d_src` to
/// `d_tgt × d_tgt` blocks in Hermitian coordinates.
fn superoperator<F>(d_src: usize, d_tgt: usize, f: F) -> DMatrix<f64>
where
    F: Fn(&DMatrix<C64>) -> DMatrix<C64>,
{
    let mut out = DMatrix::zeros(d_tgt * d_tgt, d_src * d_src);
    for k in 0..d_src * d_src {
        out.set_column(k, &to_coordinates(&f(&hermitian_basis(d_src, k))));
    }
    out
}

/// Solves `dρ/dt = 0` exactly by eliminating blocks from the top down.
///
/// The stationary equations couple block `N` only to `N ± 1`, so each block is
/// a linear function of the one below it: `ρ_N = X_N ρ_{N−1}`.
pub fn solve_steady_state(params: &MicromaserParams) -> Result<SteadyState> {
    let gen = Generator::new(params)?;
    let space = gen.space().clone();
    let top = space.num_blocks() - 1;
    let dim = |n: usize| space.block_dim(n);

    let mut transfer: Vec<DMatrix<f64>> = vec![DMatrix::zeros(0, 0); top + 1];
    for n in (1..=top).rev() {
        let mut local = superoperator(dim(n), dim(n), |m| gen.local(n, m));
        if n < top {
            let down = superoperator(dim(n + 1), dim(n), |m| gen.from_above(n, m));
            local.gemm(1.0, &down, &transfer[n + 1], 1.0);
        }
        let pump = superoperator(dim(n - 1), dim(n), |m| gen.from_below(n, m));
        let x = local.lu().solve(&pump).ok_or(Error::Singular { block: n })?;
        transfer[n] = -x;
    }

    let mut blocks = Vec::with_capacity(top + 1);
    let mut current = DVector::from_element(1, 1.0);
    blocks.push(DMatrix::from_element(1, 1, C64::new(1.0, 0.0)));
    for n in 1..=top {
        current = &transfer[n] * current;
        blocks.push(from_coordinates(current.as_slice(), dim(n)));
    }
    let mut rho = TwoModeDensityMatrix::from_blocks(params.n_max, blocks)?;
    rho.symmetrize_and_normalize();
    let residual = l1_norm(&gen.apply(rho.blocks()));
    Ok(SteadyState::finish(rho, residual, 0.0, 0.0, Vec::new()))
}

struct Layout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    len: usize,
}

impl Layout {
    fn new(space: &TwoModeSpace) -> Self {
        let dims: Vec<usize> = (0..space.num_blocks()).map(|n| space.block_dim(n)).collect();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut len = 0;
        for d in &dims {
            offsets.push(len);
            len += d * d;
        }
        Self { dims, offsets, len }
    }

    fn unflatten(&self, y: &[C64]) -> Vec<DMatrix<C64>> {
        self.dims
            .iter()
            .zip(&self.offsets)
            .map(|(&d, &o)| DMatrix::from_column_slice(d, d, &y[o..o + d * d]))
            .collect()
    }

    fn flatten_into(&self, blocks: &[DMatrix<C64>], out: &mut [C64]) {
        for (m, &o) in blocks.iter().zip(&self.offsets) {
            out[o..o + m.len()].copy_from_slice(m.as_slice());
        }
    }
}

/// Integrates the master equation with RK4 from the vacuum until
/// `‖dρ/dt‖₁ < 1e−8` or `t_max` is reached.
///
/// The step is capped so that every block-local eigenvalue stays inside the
/// RK4 stability region. Invariants are sampled once per unit time.
pub fn evolve_to_steady_state(params: &MicromaserParams) -> Result<SteadyState> {
    evolve_with_sampling(params, 1.0)
}

pub fn evolve_with_sampling(params: &MicromaserParams, sample_interval: f64) -> Result<SteadyState> {
    let gen = Generator::new(params)?;
    let layout = Layout::new(gen.space());
    let dt = params.dt.min(2.5 / gen.spectral_bound());
    let steps_per_sample = ((sample_interval / dt).round() as usize).max(1);

    let vacuum = TwoModeDensityMatrix::vacuum(params.n_max);
    let mut y = vec![C64::new(0.0, 0.0); layout.len];
    layout.flatten_into(vacuum.blocks(), &mut y);
    let mut deriv = |state: &[C64], out: &mut [C64]| {
        let d = gen.apply(&layout.unflatten(state));
        layout.flatten_into(&d, out);
    };

    let mut stepper = Rk4::new(layout.len);
    let mut samples = vec![sample(&vacuum, 0.0, f64::NAN)];
    let mut step = 0usize;
    let mut t;
    loop {
        stepper.step(&mut deriv, &mut y, dt);
        step += 1;
        t = step as f64 * dt;
        if y.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Numerical(format!("non-finite density matrix at step {step}")));
        }
        // Derivative at the start of this step.
        let residual = stepper.last_derivative().iter().map(|z| z.norm()).sum::<f64>();
        if residual < STEADY_TOLERANCE || t >= params.t_max {
            break;
        }
        if step % steps_per_sample == 0 {
            let rho = TwoModeDensityMatrix::from_blocks(params.n_max, layout.unflatten(&y))?;
            let s = sample(&rho, t, residual);
            if s.min_eigenvalue < POSITIVITY_FLOOR {
                return Err(Error::Positivity { time: t, eigenvalue: s.min_eigenvalue });
            }
            samples.push(s);
        }
    }
    let rho = TwoModeDensityMatrix::from_blocks(params.n_max, layout.unflatten(&y))?;
    let residual = l1_norm(&gen.apply(rho.blocks()));
    let last = sample(&rho, t, residual);
    if last.min_eigenvalue < POSITIVITY_FLOOR {
        return Err(Error::Positivity { time: t, eigenvalue: last.min_eigenvalue });
    }
    samples.push(last);
    Ok(SteadyState::finish(rho, residual, t, dt, samples))
}

/// Integrates the master equation from `initial` to `t_end` with the
/// parameters' step (capped for stability), returning states every
/// `sample_interval` plus the final one. Positivity is checked at each sample.
pub fn integrate_master_equation(
    params: &MicromaserParams,
    initial: &TwoModeDensityMatrix,
    t_end: f64,
    sample_interval: f64,
) -> Result<Vec<(f64, TwoModeDensityMatrix)>> {
    let gen = Generator::new(params)?;
    if initial.n_max() != params.n_max {
        return Err(crate::error::invalid("n_max", "initial state truncation differs from parameters"));
    }
    let layout = Layout::new(gen.space());
    let dt = params.dt.min(2.5 / gen.spectral_bound());
    let steps = (t_end / dt).ceil().max(0.0) as usize;
    let dt = if steps > 0 { t_end / steps as f64 } else { dt };
    let every = ((sample_interval / dt).round() as usize).max(1);

    let mut y = vec![C64::new(0.0, 0.0); layout.len];
    layout.flatten_into(initial.blocks(), &mut y);
    let mut deriv = |state: &[C64], out: &mut [C64]| {
        let d = gen.apply(&layout.unflatten(state));
        layout.flatten_into(&d, out);
    };
    let mut stepper = Rk4::new(layout.len);
    let mut out = vec![(0.0, initial.clone())];
    for step in 1..=steps {
        stepper.step(&mut deriv, &mut y, dt);
        if step % every == 0 || step == steps {
            let t = step as f64 * dt;
            let rho = TwoModeDensityMatrix::from_blocks(params.n_max, layout.unflatten(&y))?;
            let min = rho.min_eigenvalue();
            if !min.is_finite() || min < POSITIVITY_FLOOR {
                return Err(Error::Positivity { time: t, eigenvalue: min });
            }
            out.push((t, rho));
        }
    }
    Ok(out)
}

fn sample(rho: &TwoModeDensityMatrix, time: f64, derivative_l1: f64) -> TrajectorySample {
    TrajectorySample {
        time,
        trace: rho.trace(),
        hermiticity: rho.hermiticity_residual(),
        min_eigenvalue: rho.min_eigenvalue(),
        exchange_asymmetry: rho.exchange_asymmetry(),
        mean_left: super::observables::mean_occupation(rho),
        derivative_l1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_pump_gives_vacuum() {
        let p = MicromaserParams { theta: 0.0, n_max: 4, t_j: 1.0, ..Default::default() };
        let s = solve_steady_state(&p).unwrap();
        assert!((s.rho.block(0)[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(s.converged);
    }

    #[test]
    fn superoperator_matches_direct_application() {
        let p = MicromaserParams { theta: 1.7, t_j: 0.8, u_b: 0.3, n_max: 3, ..Default::default() };
        let gen = Generator::new(&p).unwrap();
        let d = gen.space().block_dim(2);
        let m = DMatrix::from_fn(d, d, |i, j| C64::new((i + j) as f64 + 0.3, 0.1 * (i as f64 - j as f64)));
        assert!((from_coordinates(to_coordinates(&m).as_slice(), d) - &m).norm() < 1e-15);
        let s = superoperator(d, d, |x| gen.local(2, x));
        let via = from_coordinates((&s * to_coordinates(&m)).as_slice(), d);
        assert!((via - gen.local(2, &m)).norm() < 1e-12);
    }
}
