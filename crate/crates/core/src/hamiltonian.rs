//! Assembly of the stochastic generator and the Ito/Stratonovich dictionary.
//!
//! The Ito-form generator increment is `[Ĥ_S + i(Π̂_R + Π̂_D)] dt + dM̂`.
//! Midpoint (Stratonovich) products relate to non-anticipating ones through
//! `X ∘ dY = X dY + ½ dX dY`, so rewriting the evolution in Stratonovich form
//! shifts the drift by `½ dM̂ dM̂`, evaluated by noise contraction. When the
//! martingale satisfies the fluctuation-dissipation identity
//! `dM̂ dM̂ = -2 Π̂_D dt`, the diffusive part cancels from the Stratonovich
//! drift — which is exactly how the noise strength is fixed from the damping
//! operator. Products of drift terms are `O(dt²)` and are dropped by
//! construction: contraction keeps only the `dt`-linear pair moments.

use num_complex::Complex64;

use crate::error::Result;
use crate::quadratic::{multiply_contract, MixedBilinearOp, QuadraticOp};
use crate::noise::NoiseTables;

/// Additive parts of the Ito-form stochastic generator increment.
#[derive(Debug, Clone)]
pub struct HatHamiltonianParts {
    /// Doubled system Hamiltonian `Ĥ_S = H_S - H̃_S`.
    pub h_s: QuadraticOp,
    /// Relaxational part of the damping operator.
    pub pi_r: QuadraticOp,
    /// Diffusive part of the damping operator.
    pub pi_d: QuadraticOp,
    /// Noise-linear martingale at one step.
    pub martingale: MixedBilinearOp,
}

/// Drift (coefficient of `dt`) plus martingale of a generator increment.
#[derive(Debug, Clone)]
pub struct GeneratorForm {
    pub drift: QuadraticOp,
    pub martingale: MixedBilinearOp,
}

impl HatHamiltonianParts {
    /// Ito-form drift `Ĥ_S + i(Π̂_R + Π̂_D)`.
    pub fn ito_drift(&self) -> QuadraticOp {
        let i = Complex64::new(0.0, 1.0);
        let mut drift = self.h_s.clone();
        drift.add_scaled(&self.pi_r, i);
        drift.add_scaled(&self.pi_d, i);
        drift
    }
}

/// Rewrites the Ito generator in Stratonovich form:
/// drift `Ĥ_S + i(Π̂ + ½ dM̂dM̂/dt)`, martingale unchanged.
pub fn ito_to_stratonovich(
    parts: &HatHamiltonianParts,
    tables: &NoiseTables,
) -> Result<GeneratorForm> {
    let i = Complex64::new(0.0, 1.0);
    let mm = multiply_contract(&parts.martingale, &parts.martingale, tables)?;
    let mut drift = parts.ito_drift();
    drift.add_scaled(&mm, i * Complex64::new(0.5 / tables.dt(), 0.0));
    Ok(GeneratorForm { drift, martingale: parts.martingale.clone() })
}

/// Generator of the inverse evolution in Ito form:
/// drift `Ĥ_S + i(Π̂ + dM̂dM̂/dt)`.
pub fn hat_h_minus(parts: &HatHamiltonianParts, tables: &NoiseTables) -> Result<GeneratorForm> {
    let i = Complex64::new(0.0, 1.0);
    let mm = multiply_contract(&parts.martingale, &parts.martingale, tables)?;
    let mut drift = parts.ito_drift();
    drift.add_scaled(&mm, i * Complex64::new(1.0 / tables.dt(), 0.0));
    Ok(GeneratorForm { drift, martingale: parts.martingale.clone() })
}

/// Residual of the formal self-adjointness check `Ĥ dt + dM̂ = (Ĥ dt + dM̂)†`
/// for a generator increment; zero iff the increment is Hermitian.
pub fn adjoint_residual(form: &GeneratorForm, dt: f64) -> f64 {
    let mut drift_diff = form.drift.clone();
    drift_diff.add_scaled(&form.drift.adjoint(), Complex64::new(-1.0, 0.0));
    let mart_diff = crate::quadratic::MixedBilinearOp::max_abs_diff_collapsed(
        &form.martingale,
        &form.martingale.adjoint(),
    );
    (drift_diff.max_abs() * dt).max(mart_diff)
}
