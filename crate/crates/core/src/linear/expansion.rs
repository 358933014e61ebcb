//! Small-angle expansions around the `ξ₁ = 0` line, where the slow eigenvalue
//! vanishes. These are approximations; [`super::exact_mode_propagator`] is
//! the reference in every regime.

use num_complex::Complex64;

use super::check_time;
use crate::error::{Error, Result};
use crate::mat2::Mat2;
use crate::spectral::PhysParams;

fn check_slow(params: &PhysParams, mu: f64) -> Result<()> {
    let limit = params.slow_threshold();
    if !(mu.abs() < limit) {
        return Err(Error::OutOfRegime { mu, limit });
    }
    Ok(())
}

/// Taylor approximations `(α - N²μ²/α, N²μ²/α)` of `(λ₊, λ₋)`.
pub fn eigen_expansion_slow(params: &PhysParams, mu: f64) -> Result<(f64, f64)> {
    check_slow(params, mu)?;
    let slow = (params.brunt_n() * mu).powi(2) / params.alpha();
    Ok((params.alpha() - slow, slow))
}

/// Truncation of `ℙ(iμ) = Q₀ + iμP₁ + (iμ)²P₂`, the projector onto the
/// vanishing eigenvalue, at `order` 0, 1 or 2.
pub fn projector_expansion(params: &PhysParams, mu: f64, order: u8) -> Result<Mat2> {
    check_slow(params, mu)?;
    if order > 2 {
        return Err(Error::param("order", format!("must be 0, 1 or 2, got {order}")));
    }
    let ratio = params.brunt_n() / params.alpha();
    let mut m = Mat2::from_real(1.0, 0.0, 0.0, 0.0);
    if order >= 1 {
        let p1 = Mat2::from_real(0.0, ratio, ratio, 0.0);
        m = m + p1.scale(Complex64::new(0.0, mu));
    }
    if order >= 2 {
        let p2 = Mat2::from_real(-ratio * ratio, 0.0, 0.0, ratio * ratio);
        m = m + p2.scale(Complex64::new(-mu * mu, 0.0));
    }
    Ok(m)
}

/// Two-term slow kernel at angle `θ` (`μ = cos θ`):
///
/// ```text
/// [[1 + c²N²/α², icN/α], [icN/α, -c²N²/α²]]·e^{-(N²/α)c²t}
///   + [[-c²N²/α², -icN/α], [-icN/α, c²N²/α²]]·e^{-αt/2}
/// ```
///
/// This is the literal two-term form. Its second matrix is not `I - ℙ` (the
/// `(2,2)` identity slot is absent) and it decays at `α/2` rather than at
/// `λ₊ ≈ α`, so it differs from the exact kernel by `e^{-λ₊t}` in the `(2,2)`
/// entry and by `O(|c|·e^{-αt/2})` off the diagonal.
pub fn kernel_slow(params: &PhysParams, theta: f64, t: f64) -> Result<Mat2> {
    check_time(t)?;
    let c = theta.cos();
    check_slow(params, c)?;
    let (a, n) = (params.alpha(), params.brunt_n());
    let q = (n * c / a).powi(2);
    let off = Complex64::new(0.0, n * c / a);
    let slow = Mat2::new((1.0 + q).into(), off, off, (-q).into());
    let fast = Mat2::new((-q).into(), -off, -off, q.into());
    let slow_decay = (-(n * n / a) * c * c * t).exp();
    let fast_decay = (-0.5 * a * t).exp();
    Ok(slow.scale(slow_decay.into()) + fast.scale(fast_decay.into()))
}
