/// Starting number of Simpson intervals.
pub const BASE_INTERVALS: usize = 400;
/// Required half-step consistency, relative to `∫|f|`.
pub const RICHARDSON_TOLERANCE: f64 = 1e-6;
const MAX_INTERVALS: usize = 400 << 7;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Quadrature {
    pub value: f64,
    /// Richardson estimate `|S_h − S_2h|/15` relative to `∫|f|`.
    pub relative_error: f64,
    pub converged: bool,
}

/// Composite Simpson on `[a, b]`, doubled until the half-step estimate meets
/// [`RICHARDSON_TOLERANCE`].
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Quadrature {
    if b <= a {
        return Quadrature { value: 0.0, relative_error: 0.0, converged: true };
    }
    let mut n = BASE_INTERVALS;
    let mut samples: Vec<f64> = (0..=n).map(|i| f(a + (b - a) * i as f64 / n as f64)).collect();
    loop {
        let h = (b - a) / n as f64;
        let fine = simpson(&samples, h);
        let coarse: Vec<f64> = samples.iter().step_by(2).copied().collect();
        let coarse = simpson(&coarse, 2.0 * h);
        let abs: Vec<f64> = samples.iter().map(|v| v.abs()).collect();
        let scale = simpson(&abs, h);
        let relative_error = if scale > 0.0 { (fine - coarse).abs() / 15.0 / scale } else { 0.0 };
        let converged = relative_error <= RICHARDSON_TOLERANCE;
        if converged || n >= MAX_INTERVALS {
            return Quadrature { value: fine + (fine - coarse) / 15.0, relative_error, converged };
        }
        let mut refined = Vec::with_capacity(2 * n + 1);
        for (i, &v) in samples.iter().enumerate() {
            refined.push(v);
            if i < n {
                refined.push(f(a + (b - a) * (2 * i + 1) as f64 / (2 * n) as f64));
            }
        }
        samples = refined;
        n *= 2;
    }
}

/// Half-step test on pre-tabulated samples: `samples.len() − 1` must be
/// `BASE_INTERVALS · 2^k`. Uses the coarsest level that passes.
pub(crate) fn integrate_tabulated(samples: &[f64], a: f64, b: f64) -> Quadrature {
    let total = samples.len() - 1;
    let mut stride = total / BASE_INTERVALS;
    let mut last = None;
    while stride >= 1 {
        let fine: Vec<f64> = samples.iter().step_by(stride).copied().collect();
        let coarse: Vec<f64> = fine.iter().step_by(2).copied().collect();
        let h = (b - a) / (fine.len() - 1) as f64;
        let (f, c) = (simpson(&fine, h), simpson(&coarse, 2.0 * h));
        let abs: Vec<f64> = fine.iter().map(|v| v.abs()).collect();
        let scale = simpson(&abs, h);
        let relative_error = if scale > 0.0 { (f - c).abs() / 15.0 / scale } else { 0.0 };
        let q = Quadrature { value: f + (f - c) / 15.0, relative_error, converged: relative_error <= RICHARDSON_TOLERANCE };
        if q.converged {
            return q;
        }
        last = Some(q);
        stride /= 2;
    }
    last.expect("table holds at least BASE_INTERVALS intervals")
}

fn simpson(samples: &[f64], h: f64) -> f64 {
    let n = samples.len() - 1;
    let inner: f64 = samples[1..n].iter().enumerate().map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v }).sum();
    (samples[0] + samples[n] + inner) * h / 3.0
}

/// `sin x / x`.
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = integrate(|x| x * x * x - x, 0.0, 2.0);
        assert!((q.value - 2.0).abs() < 1e-12);
        assert!(q.converged);
    }

    #[test]
    fn refines_oscillatory() {
        let q = integrate(|x| (200.0 * x).cos(), 0.0, 1.0);
        assert!(q.converged);
        let err = (q.value - (200.0f64).sin() / 200.0).abs();
        let scale = 2.0 / std::f64::consts::PI;
        assert!(err <= RICHARDSON_TOLERANCE * scale);
        assert!(err <= q.relative_error * scale);
    }
}
