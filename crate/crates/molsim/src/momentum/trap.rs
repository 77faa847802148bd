use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `ζ(3)`, fixes the ideal-gas transition temperature in a harmonic trap.
const ZETA_3: f64 = 1.202_056_903_159_594;

/// Condensate in an isotropic harmonic trap, in oscillator units
/// (`ħ = m = ω = 1`, lengths in `a_osc`, momenta in `ħ/a_osc`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BecTrap {
    pub atoms: f64,
    /// Scattering length in units of `a_osc`.
    pub scattering_length: f64,
    /// Temperature in units of the ideal-gas `T_c`.
    #[serde(default)]
    pub temperature: f64,
}

impl BecTrap {
    pub fn caption() -> Self {
        Self { atoms: 1e5, scattering_length: 0.1, temperature: 0.1 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.atoms > 1.0) {
            return Err(invalid("atoms", format!("need N > 1, got {}", self.atoms)));
        }
        if !(self.scattering_length > 0.0) {
            return Err(invalid("scattering_length", "must be positive"));
        }
        if !(self.temperature >= 0.0) {
            return Err(invalid("temperature", "must be non-negative"));
        }
        Ok(())
    }

    /// `R_TF = (15 N a)^{1/5}`.
    pub fn thomas_fermi_radius(&self) -> f64 {
        (15.0 * self.atoms * self.scattering_length).powf(0.2)
    }

    pub fn central_density(&self) -> f64 {
        let r = self.thomas_fermi_radius();
        15.0 * self.atoms / (8.0 * std::f64::consts::PI * r.powi(3))
    }

    /// `n(r)`, zero outside the cloud.
    pub fn density(&self, r: f64) -> f64 {
        let s = r / self.thomas_fermi_radius();
        if s >= 1.0 {
            0.0
        } else {
            self.central_density() * (1.0 - s * s)
        }
    }

    /// `μ(r) = 4πa n(r)`.
    pub fn local_chemical_potential(&self, r: f64) -> f64 {
        4.0 * std::f64::consts::PI * self.scattering_length * self.density(r)
    }

    /// Healing length `(8πa n₀)^{−1/2}` at the trap centre.
    pub fn healing_length(&self) -> f64 {
        (8.0 * std::f64::consts::PI * self.scattering_length * self.central_density()).sqrt().recip()
    }

    /// Temperature in units of `ħω`.
    pub fn thermal_energy(&self) -> f64 {
        self.temperature * (self.atoms / ZETA_3).cbrt()
    }
}

/// Two-component Fermi gas in local density approximation, in units
/// `ħ = m = k_F(0) = 1` (momenta in `ħk_F(0)`).
///
/// The cloud radius follows from the atom number at fixed `k_F(0)`:
/// `N = 2 · k_F(0)³ R³ / 48`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FermiTrap {
    /// Total atom number, both spin states.
    pub atoms: f64,
    /// `k_F(0)|a|`; zero for the normal gas.
    #[serde(default)]
    pub kf_a: f64,
}

impl FermiTrap {
    pub fn caption() -> Self {
        Self { atoms: 1e5, kf_a: 0.5 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.atoms >= 2.0) {
            return Err(invalid("atoms", format!("need N ≥ 2, got {}", self.atoms)));
        }
        if !(self.kf_a >= 0.0) {
            return Err(invalid("kf_a", "must be non-negative"));
        }
        Ok(())
    }

    pub fn radius(&self) -> f64 {
        (24.0 * self.atoms).cbrt()
    }

    /// Oscillator length implied by the radius, `a_osc = √(R/k_F(0))`.
    pub fn oscillator_length(&self) -> f64 {
        self.radius().sqrt()
    }

    /// Local Fermi momentum `k_F(r) = √(1 − r²/R²)`.
    pub fn local_fermi_momentum(&self, r: f64) -> f64 {
        let s = r / self.radius();
        (1.0 - s * s).max(0.0).sqrt()
    }
}
