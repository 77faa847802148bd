use serde::{Deserialize, Serialize};

use super::dynamics::{evolve_population, time_grid, InitialState};
use super::sector::TcSector;
use crate::error::{invalid, Result};

/// Time grid controls for [`passage_time_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PassageOptions {
    /// Initial number of grid points.
    pub points: usize,
    /// Window length in units of `1/(χ√N)`.
    pub span: f64,
    /// Largest allowed change of `C(t)` between neighbouring points.
    pub max_increment: f64,
    /// Refinement stops at this many points.
    pub max_points: usize,
}

impl Default for PassageOptions {
    fn default() -> Self {
        Self { points: 2000, span: 5.0, max_increment: 0.01, max_points: 64_000 }
    }
}

/// Distribution of the time needed to convert `n_ref` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct PassageTimeResult {
    pub n: usize,
    pub initial: InitialState,
    pub fraction: f64,
    pub n_ref: usize,
    /// Retained window, units of `1/χ`.
    pub times: Vec<f64>,
    /// `C(t)`: probability that at least `n_ref` pairs have converted.
    pub cumulative: Vec<f64>,
    /// `W(t) = dC/dt`, clipped at zero and normalized on the window.
    pub density: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
    /// Time of the first local maximum of `C`, if one occurs on the grid.
    pub clipped_at: Option<f64>,
    pub warnings: Vec<String>,
}

impl PassageTimeResult {
    pub fn peak_time(&self) -> f64 {
        let k = (0..self.density.len()).max_by(|&a, &b| self.density[a].total_cmp(&self.density[b])).unwrap_or(0);
        self.times[k]
    }

    /// Interior local maxima of `W` higher than `rel` times the global maximum.
    pub fn local_maxima(&self, rel: f64) -> Vec<usize> {
        let w = &self.density;
        let top = w.iter().copied().fold(0.0, f64::max);
        let mut out = Vec::new();
        let mut k = 1;
        while k + 1 < w.len() {
            // Step over flat runs so a plateau counts once.
            let mut end = k;
            while end + 1 < w.len() && w[end + 1] == w[k] {
                end += 1;
            }
            if end + 1 < w.len() && w[k] > w[k - 1] && w[k] > w[end + 1] && w[k] >= rel * top {
                out.push(k);
            }
            k = end + 1;
        }
        out
    }

    pub fn is_unimodal(&self, rel: f64) -> bool {
        self.local_maxima(rel).len() <= 1
    }

    /// Times rescaled to units of `1/(χ√N)`.
    pub fn scaled_times(&self) -> Vec<f64> {
        let s = (self.n as f64).sqrt();
        self.times.iter().map(|t| t * s).collect()
    }
}

/// [`passage_time_with`] on the default grid.
pub fn passage_time_distribution(
    sector: &TcSector,
    initial: InitialState,
    fraction: f64,
) -> Result<PassageTimeResult> {
    passage_time_with(sector, initial, fraction, &PassageOptions::default())
}

pub fn passage_time_with(
    sector: &TcSector,
    initial: InitialState,
    fraction: f64,
    opts: &PassageOptions,
) -> Result<PassageTimeResult> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(invalid("fraction", format!("{fraction} not in (0, 1]")));
    }
    if opts.points < 3 || !(opts.span > 0.0) || !(opts.max_increment > 0.0) {
        return Err(invalid("passage", "need points ≥ 3, span > 0 and max_increment > 0"));
    }
    let n = sector.n();
    let n_ref = ((fraction * n as f64) - 1e-9).ceil().max(1.0) as usize;

    let mut points = opts.points;
    let mut warnings = Vec::new();
    let (times, cumulative, end) = loop {
        let times = time_grid(n, opts.span, points);
        let hist = evolve_population(sector, initial, &times)?;
        let cumulative: Vec<f64> = hist
            .probabilities
            .iter()
            .map(|p| p.iter().enumerate().filter(|(k, _)| initial.converted(n, *k) >= n_ref).map(|(_, q)| q).sum())
            .collect();
        let end = first_maximum(&cumulative);
        let steepest = cumulative[..=end].windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
        if steepest <= opts.max_increment {
            break (times, cumulative, end);
        }
        if points * 2 > opts.max_points {
            warnings.push(format!("C(t) changes by {steepest:.3e} per step at the finest grid"));
            break (times, cumulative, end);
        }
        points *= 2;
    };

    let clipped_at = (end + 1 < times.len()).then(|| times[end]);
    let times = times[..=end].to_vec();
    let cumulative = cumulative[..=end].to_vec();
    if cumulative[end] < 0.99 {
        warnings.push(format!("C(t) reaches only {:.4} before the clip point", cumulative[end]));
    }

    let mut density: Vec<f64> = derivative(&times, &cumulative).into_iter().map(|w| w.max(0.0)).collect();
    let total = trapezoid(&times, &density);
    if !(total > 0.0) {
        return Err(invalid("fraction", format!("no probability reaches {n_ref} converted pairs in the window")));
    }
    density.iter_mut().for_each(|w| *w /= total);
    let tw: Vec<f64> = times.iter().zip(&density).map(|(t, w)| t * w).collect();
    let mean = trapezoid(&times, &tw);
    let var: Vec<f64> = times.iter().zip(&density).map(|(t, w)| (t - mean).powi(2) * w).collect();
    let std_dev = trapezoid(&times, &var).sqrt();

    Ok(PassageTimeResult {
        n,
        initial,
        fraction,
        n_ref,
        times,
        cumulative,
        density,
        mean,
        std_dev,
        clipped_at,
        warnings,
    })
}

/// Index of the first local maximum of `c`, or its last index.
fn first_maximum(c: &[f64]) -> usize {
    (0..c.len() - 1).find(|&k| c[k + 1] < c[k] - 1e-12).unwrap_or(c.len() - 1)
}

/// Centered differences, one-sided at the ends.
fn derivative(t: &[f64], y: &[f64]) -> Vec<f64> {
    let n = y.len();
    if n < 2 {
        return vec![0.0; n];
    }
    (0..n)
        .map(|k| {
            let (a, b) = (k.saturating_sub(1), (k + 1).min(n - 1));
            (y[b] - y[a]) / (t[b] - t[a])
        })
        .collect()
}

fn trapezoid(t: &[f64], y: &[f64]) -> f64 {
    t.windows(2).zip(y.windows(2)).map(|(t, y)| 0.5 * (t[1] - t[0]) * (y[0] + y[1])).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::passage::build_sector;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn single_pair_clips_at_full_conversion() {
        let s = build_sector(1, 0.0).unwrap();
        let r = passage_time_distribution(&s, InitialState::AllAtoms, 1.0).unwrap();
        assert_eq!(r.n_ref, 1);
        assert!((r.clipped_at.unwrap() - FRAC_PI_2).abs() < 5.0 / 2000.0);
        assert!((r.mean - FRAC_PI_2 / 2.0).abs() < 1e-3);
        assert!((r.peak_time() - FRAC_PI_2 / 2.0).abs() < 5e-3);
        assert!((trapezoid(&r.times, &r.density) - 1.0).abs() < 1e-12);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn reference_count_rounds_up() {
        let s = build_sector(10, 0.0).unwrap();
        let r = passage_time_distribution(&s, InitialState::AllMolecules, 0.05).unwrap();
        assert_eq!(r.n_ref, 1);
        let r = passage_time_distribution(&s, InitialState::AllMolecules, 0.3).unwrap();
        assert_eq!(r.n_ref, 3);
    }

    #[test]
    fn rejects_bad_fraction() {
        let s = build_sector(4, 0.0).unwrap();
        assert!(passage_time_distribution(&s, InitialState::AllAtoms, 0.0).is_err());
        assert!(passage_time_distribution(&s, InitialState::AllAtoms, 1.5).is_err());
    }

    #[test]
    fn derivative_of_quadratic() {
        let t: Vec<f64> = (0..11).map(|k| k as f64 * 0.1).collect();
        let y: Vec<f64> = t.iter().map(|t| t * t).collect();
        let d = derivative(&t, &y);
        for k in 1..10 {
            assert!((d[k] - 2.0 * t[k]).abs() < 1e-12);
        }
    }
}
