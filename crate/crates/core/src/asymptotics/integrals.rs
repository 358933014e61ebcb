use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::quad::{adaptive, graded_breaks};

const ANGULAR_TOL: f64 = 1e-10;
const BHN_TOL: f64 = 1e-8;

/// `∫₀^{2π} |cos θ|^k exp(-t cos²θ) dθ`.
pub fn angular_integral(k: u32, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::NegativeTime(t));
    }
    let f = |th: f64| {
        let c = th.cos();
        c.abs().powi(k as i32) * (-t * c * c).exp()
    };
    let finest = if t > 0.0 { (0.25 / t.sqrt()).min(0.1) } else { 0.1 };
    let mut breaks = graded_breaks(0.0, 2.0 * PI, &[FRAC_PI_2, 3.0 * FRAC_PI_2], finest);
    breaks.push(PI);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    adaptive(&f, &breaks, ANGULAR_TOL, "angular integral")
}

/// Limit of `t^{(1+k)/2}·angular_integral(k, t)` as `t → ∞`: `2Γ((k+1)/2)`.
pub fn angular_limit_constant(k: u32) -> f64 {
    // Γ((k+1)/2) by the half-integer recursion
    let mut g = if k % 2 == 0 { PI.sqrt() } else { 1.0 };
    let mut x = if k % 2 == 0 { 0.5 } else { 1.0 };
    while x < 0.5 * (k as f64 + 1.0) - 1e-12 {
        g *= x;
        x += 1.0;
    }
    2.0 * g
}

/// `∫₀^t min{1, (t-τ)^{-γ}}·min{1, τ^{-κ}} dτ`.
pub fn bhn_integral(gamma: f64, kappa: f64, t: f64) -> Result<f64> {
    for (name, v) in [("gamma", gamma), ("kappa", kappa)] {
        if !(0.0..1.0).contains(&v) {
            return Err(Error::param(name, format!("must lie in [0, 1), got {v}")));
        }
    }
    if !(t >= 2.0 && t.is_finite()) {
        return Err(Error::param("t", format!("must be >= 2, got {t}")));
    }
    let f = |tau: f64| {
        let a = (t - tau).max(0.0);
        let left = if a <= 1.0 { 1.0 } else { a.powf(-gamma) };
        let right = if tau <= 1.0 { 1.0 } else { tau.powf(-kappa) };
        left * right
    };
    let mut breaks = vec![0.0, 1.0, 0.5 * t, t - 1.0, t];
    // geometric panels keep the algebraic factors resolved for large t
    let mut x = 2.0;
    while x < 0.5 * t {
        breaks.push(x);
        breaks.push(t - x);
        x *= 2.0;
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    adaptive(&f, &breaks, BHN_TOL, "bhn integral")
}

/// `min{γ, κ, γ+κ-1}`.
pub fn bhn_exponent(gamma: f64, kappa: f64) -> f64 {
    gamma.min(kappa).min(gamma + kappa - 1.0)
}
