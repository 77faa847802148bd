/// Numerical tolerances used by validating operations.
///
/// The defaults are the contract values; callers may loosen or tighten them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative Frobenius residual `‖A − A†‖ / ‖A‖` accepted as Hermitian.
    pub hermiticity: f64,
    /// Relative reconstruction error `‖V Λ V† − H‖ / ‖H‖` of an eigendecomposition.
    pub reconstruction: f64,
    /// Deviation of `⟨ψ|ψ⟩` from one.
    pub norm: f64,
    /// Deviation of `Tr ρ` from one.
    pub trace: f64,
    /// Imaginary residue accepted in an expectation value of a Hermitian operator.
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-12,
            reconstruction: 1e-10,
            norm: 1e-10,
            trace: 1e-8,
            imaginary: 1e-10,
        }
    }
}
