//! Exact per-frequency solution operator of the linearised system and the
//! quadratures built on it.
//!
//! At frequency `ξ` the linear system for `(b̂, Ω̂)` is
//! `d/dt (b̂, Ω̂) = -E(iμ)(b̂, Ω̂)` with `μ = ξ₁/|ξ|` and
//! `E(iμ) = [[0, -iNμ], [-iNμ, α]]`.

mod eigen;
mod evolve;
mod expansion;
mod polar;
mod propagator;
pub mod reference;

pub use eigen::{eigen_data, eigenvalues, EigenData, ModeGenerator};
pub use evolve::linear_evolve_lattice;
pub use expansion::{eigen_expansion_slow, kernel_slow, projector_expansion};
pub use polar::{linear_norm_quadrature, Component, NormSpec, PolarQuadGrid, Weight};
pub use propagator::{exact_mode_propagator, PropagatorMatrix, DEGENERACY_TOL};

use crate::error::{Error, Result};

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if !(mu.is_finite() && mu.abs() <= 1.0 + 1e-12) {
        return Err(Error::param("mu", format!("|mu| must be <= 1, got {mu}")));
    }
    Ok(())
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}
