use crate::error::{Error, Result};
use crate::spectral::AnalyticProfile;

/// `sup_ρ |ĝ(ρ)|(1+ρ^m)` over a fine grid on `[0, 64]` and dyadic radii up
/// to `2^40`. A product still increasing over the last dyadic samples means
/// the profile does not decay like `ρ^{-m}`.
pub fn fourier_decay_envelope(profile: &AnalyticProfile, m: f64) -> Result<f64> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::param("m", format!("must be > 0, got {m}")));
    }
    profile.validate()?;
    let h = |rho: f64| profile.radial(rho).abs() * (1.0 + rho.powf(m));
    let mut sup = (0..=6400).map(|i| h(i as f64 * 0.01)).fold(0.0, f64::max);
    let dyadic: Vec<f64> = (6..=40).map(|j| h(2f64.powi(j))).collect();
    sup = dyadic.iter().fold(sup, |a, b| a.max(*b));
    let tail = &dyadic[dyadic.len() - 5..];
    if tail.windows(2).all(|w| w[1] > w[0] * (1.0 + 1e-9)) {
        return Err(Error::Envelope { m });
    }
    Ok(sup)
}
