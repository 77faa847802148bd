//! Classical fourth-order Runge-Kutta for autonomous first-order systems.

use std::ops::{Add, Mul};

use crate::error::CoreError;
use crate::{Result, C64};

/// Scalar types the integrator can work on.
pub trait OdeScalar:
    Copy + Default + Send + Sync + Add<Output = Self> + Mul<f64, Output = Self> + 'static
{
    fn is_finite(self) -> bool;
    fn modulus(self) -> f64;
}

impl OdeScalar for f64 {
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl OdeScalar for C64 {
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Reusable RK4 stepper holding its stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4<T: OdeScalar> {
    k1: Vec<T>,
    k2: Vec<T>,
    k3: Vec<T>,
    k4: Vec<T>,
    tmp: Vec<T>,
}

impl<T: OdeScalar> Rk4<T> {
    pub fn new(len: usize) -> Self {
        let z = vec![T::default(); len];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    /// Advances `y` by `dt` under `ẏ = f(y)`.
    pub fn step<F>(&mut self, f: &mut F, y: &mut [T], dt: f64)
    where
        F: FnMut(&[T], &mut [T]),
    {
        let n = y.len();
        debug_assert_eq!(n, self.k1.len());
        f(y, &mut self.k1);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k1[i] * (0.5 * dt);
        }
        f(&self.tmp, &mut self.k2);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k2[i] * (0.5 * dt);
        }
        f(&self.tmp, &mut self.k3);
        for i in 0..n {
            self.tmp[i] = y[i] + self.k3[i] * dt;
        }
        f(&self.tmp, &mut self.k4);
        let w = dt / 6.0;
        for i in 0..n {
            y[i] = y[i] + (self.k1[i] + self.k2[i] * 2.0 + self.k3[i] * 2.0 + self.k4[i]) * w;
        }
    }

    /// Derivative at the start of the last step.
    pub fn last_derivative(&self) -> &[T] {
        &self.k1
    }
}

/// Sampled solution of an initial-value problem.
#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<f64>,
    pub states: Vec<Vec<T>>,
}

/// Integrates `ẏ = f(y)` from `y0` at `t = 0` to `t_end`.
///
/// Every `sample_every`-th step is recorded together with the initial and the
/// final state. The last step is shortened to land exactly on `t_end`.
pub fn rk4_integrate<T, F>(
    mut deriv: F,
    y0: &[T],
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory<T>>
where
    T: OdeScalar,
    F: FnMut(&[T], &mut [T]),
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(CoreError::InvalidStep(dt));
    }
    let sample_every = sample_every.max(1);
    let mut y = y0.to_vec();
    let mut stepper = Rk4::new(y.len());
    let mut traj = Trajectory { times: vec![0.0], states: vec![y.clone()] };
    let mut t = 0.0;
    let mut step = 0usize;
    while t < t_end {
        let h = dt.min(t_end - t);
        stepper.step(&mut deriv, &mut y, h);
        step += 1;
        // Accumulating `t += h` drifts; recompute from the step count instead.
        t = if h < dt { t_end } else { (step as f64 * dt).min(t_end) };
        if y.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::NonFinite { step });
        }
        if step % sample_every == 0 || t >= t_end {
            traj.times.push(t);
            traj.states.push(y.clone());
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_derivative_is_constant() {
        let traj = rk4_integrate(|_: &[f64], d: &mut [f64]| d.fill(0.0), &[1.5, -2.0], 1.0, 0.1, 1).unwrap();
        assert!(traj.states.iter().all(|s| s == &vec![1.5, -2.0]));
        assert!((traj.times.last().unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(traj.times.len(), 11);
    }

    #[test]
    fn exponential_decay() {
        let gamma = 2.0;
        let dt = 1e-3 / gamma;
        let traj = rk4_integrate(
            |y: &[f64], d: &mut [f64]| d[0] = -gamma * y[0],
            &[1.0],
            3.0,
            dt,
            100,
        )
        .unwrap();
        for (t, y) in traj.times.iter().zip(&traj.states) {
            assert!((y[0] - (-gamma * t).exp()).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_step() {
        let r = rk4_integrate(|_: &[f64], d: &mut [f64]| d.fill(0.0), &[0.0], 1.0, 0.0, 1);
        assert!(matches!(r, Err(CoreError::InvalidStep(_))));
    }

    #[test]
    fn reports_non_finite_step() {
        // ẏ = y² blows up at t = 1 for y0 = 1.
        let r = rk4_integrate(|y: &[f64], d: &mut [f64]| d[0] = y[0] * y[0] * 1e200, &[1.0], 1.0, 0.25, 1);
        match r {
            Err(CoreError::NonFinite { step }) => assert!(step >= 1),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }
}
