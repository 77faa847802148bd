use std::f64::consts::PI;

use super::fermi::overlap_volume;

/// `1 − 6/N`; the flag is `false` for `N ≤ 6`.
pub fn g2_bec(atoms: f64) -> (f64, bool) {
    (1.0 - 6.0 / atoms, atoms > 6.0)
}

/// `2(1 − 1/N_eff)`.
pub fn g2_nfg(n_eff: f64) -> f64 {
    2.0 * (1.0 - 1.0 / n_eff)
}

/// Pair states inside the Fermi-sphere overlap for a cell of volume `cell`.
pub fn effective_pair_number(p: f64, kf: f64, cell: f64) -> f64 {
    overlap_volume(p, kf) * cell / (2.0 * PI).powi(3)
}

/// `g²` of a coherent amplitude on a thermal background,
/// `1 + (2 n_c n_th + n_th²)/(n_c + n_th)²`.
pub fn g2_mixed(coherent: f64, noise: f64) -> f64 {
    let total = coherent + noise;
    if total <= 0.0 {
        return 2.0;
    }
    1.0 + (2.0 * coherent * noise + noise * noise) / (total * total)
}
