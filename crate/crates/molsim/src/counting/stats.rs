use serde::Serialize;

/// `P_n(t)` with derived moments.
#[derive(Debug, Clone, Serialize)]
pub struct CountingStatistics {
    pub times: Vec<f64>,
    /// `distributions[k][n]` is `P_n(times[k])`.
    pub distributions: Vec<Vec<f64>>,
    pub mean: Vec<f64>,
    /// `None` where `⟨n⟩ < 1e−12`.
    pub g2: Vec<Option<f64>>,
}

impl CountingStatistics {
    pub(crate) fn from_distributions(times: Vec<f64>, distributions: Vec<Vec<f64>>) -> Self {
        let mean = distributions.iter().map(|p| moment(p, 1)).collect();
        let g2 = distributions.iter().map(|p| g2_from_distribution(p)).collect();
        Self { times, distributions, mean, g2 }
    }

    /// Largest `|ΣP_n − 1|`.
    pub fn norm_error(&self) -> f64 {
        self.distributions.iter().map(|p| (p.iter().sum::<f64>() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Thermal fit at every time step.
    pub fn thermal_fits(&self) -> Vec<ThermalFit> {
        self.distributions.iter().map(|p| thermal_fit(p)).collect()
    }
}

fn moment(p: &[f64], order: u32) -> f64 {
    p.iter()
        .enumerate()
        .map(|(n, q)| (0..order).map(|j| n as f64 - j as f64).product::<f64>() * q)
        .sum()
}

/// `⟨n(n−1)⟩/⟨n⟩²` of a number distribution.
pub fn g2_from_distribution(p: &[f64]) -> Option<f64> {
    let n = moment(p, 1);
    (n >= 1e-12).then(|| moment(p, 2) / (n * n))
}

/// Truncated geometric fit `P_n ∝ e^{−n/⟨n⟩}` on the support of the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalFit {
    /// Pseudo-temperature `⟨n⟩` of the fitted family.
    pub mean: f64,
    /// Total-variation distance between data and fit.
    pub residual: f64,
}

fn truncated_geometric(x: f64, len: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..len).map(|n| x.powi(n as i32)).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|v| v / z).collect()
}

/// Maximum-likelihood thermal fit.
///
/// For the exponential family the likelihood is maximal where the model mean
/// equals the data mean, which is monotone in the ratio `x = e^{−1/⟨n⟩}`; the
/// ratio is found by bisection.
pub fn thermal_fit(p: &[f64]) -> ThermalFit {
    let len = p.len();
    let target = moment(p, 1);
    if len < 2 || target <= 0.0 {
        return ThermalFit { mean: 0.0, residual: if len == 0 { 0.0 } else { (1.0 - p[0]).abs() } };
    }
    let model_mean = |x: f64| moment(&truncated_geometric(x, len), 1);
    // Means at or above the midpoint of the support need x ≥ 1, outside the family.
    let (mut lo, mut hi) = (0.0, 1.0 - 1e-15);
    if model_mean(hi) <= target {
        lo = hi;
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if model_mean(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let x = 0.5 * (lo + hi);
    let fit = truncated_geometric(x, len);
    let residual = 0.5 * fit.iter().zip(p).map(|(a, b)| (a - b).abs()).sum::<f64>();
    ThermalFit { mean: -1.0 / x.ln(), residual }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_state_two() {
        assert_eq!(g2_from_distribution(&[0.0, 0.0, 1.0]), Some(0.5));
        assert_eq!(g2_from_distribution(&[1.0, 0.0]), None);
    }

    #[test]
    fn self_fit_recovers_parameter() {
        let x = (-1.0f64 / 2.0).exp();
        let p = truncated_geometric(x, 40);
        let f = thermal_fit(&p);
        assert!((f.mean - 2.0).abs() < 1e-6);
        assert!(f.residual < 1e-9);
    }

    #[test]
    fn vacuum_fits_to_zero() {
        let f = thermal_fit(&[1.0, 0.0, 0.0]);
        assert_eq!(f.mean, 0.0);
        assert_eq!(f.residual, 0.0);
    }
}
