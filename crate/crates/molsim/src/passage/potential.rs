//! Semiclassical Newtonian picture of `n_b(t)` at zero detuning.

/// `d²n_b/dt² = 2(−3n_b² + (2N−1)n_b + N)`.
pub fn acceleration(n: usize, n_b: f64) -> f64 {
    let n = n as f64;
    2.0 * (-3.0 * n_b * n_b + (2.0 * n - 1.0) * n_b + n)
}

/// Cubic potential with `U(0) = 0` whose negative slope is [`acceleration`].
pub fn effective_potential(n: usize, n_b: f64) -> f64 {
    let n = n as f64;
    2.0 * (n_b.powi(3) - 0.5 * (2.0 * n - 1.0) * n_b * n_b - n * n_b)
}

pub fn effective_potential_samples(n: usize, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter().map(|&x| (x, effective_potential(n, x))).collect()
}

/// Roots of `U'`, ascending. Only the larger one lies in `(0, N]`.
pub fn stationary_points(n: usize) -> (f64, f64) {
    let b = 2.0 * n as f64 - 1.0;
    let root = (b * b + 12.0 * n as f64).sqrt();
    // The smaller root suffers cancellation; take it from the product c/a.
    let upper = (b + root) / 6.0;
    (-(n as f64) / (3.0 * upper), upper)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_and_initial_push() {
        assert_eq!(effective_potential(40, 0.0), 0.0);
        assert_eq!(acceleration(40, 0.0), 80.0);
    }

    #[test]
    fn minimum_approaches_two_thirds() {
        let (_, x) = stationary_points(10_000);
        assert!((x / 10_000.0 - 2.0 / 3.0).abs() < 1e-3);
    }
}
