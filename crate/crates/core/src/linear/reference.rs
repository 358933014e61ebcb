//! Reference integration of `dΓ/dt = -E(iμ)Γ` with classical RK4.
//!
//! This path never touches eigenvalues or projectors; it only uses the
//! generator matrix, so it can certify the closed-form propagator.

use crate::linear::ModeGenerator;
use crate::mat2::Mat2;
use crate::spectral::PhysParams;
use num_complex::Complex64;

/// One RK4 step of `Y' = K·Y` for constant `K`, written as the stage map
/// applied to the identity (the amplification matrix).
fn rk4_step_matrix(k: Mat2, h: f64) -> Mat2 {
    let id = Mat2::identity();
    let hc = Complex64::new(h, 0.0);
    let k1 = k;
    let k2 = k * (id + k1.scale(hc * 0.5));
    let k3 = k * (id + k2.scale(hc * 0.5));
    let k4 = k * (id + k3.scale(hc));
    id + (k1 + k2.scale(2.0.into()) + k3.scale(2.0.into()) + k4).scale(hc / 6.0)
}

fn power(mut m: Mat2, mut n: u64) -> Mat2 {
    let mut acc = Mat2::identity();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * m;
        }
        m = m * m;
        n >>= 1;
    }
    acc
}

/// RK4 from 0 to `t` with step `h` (last step shortened). Repeated steps of
/// the autonomous linear system are composed by binary powering.
pub fn rk4_propagator(params: &PhysParams, mu: f64, t: f64, h: f64) -> Mat2 {
    let k = ModeGenerator::new(params, mu).matrix().scale((-1.0).into());
    let steps = (t / h).floor();
    let rest = t - steps * h;
    let full = power(rk4_step_matrix(k, h), steps as u64);
    if rest > 1e-15 * t.max(1.0) {
        rk4_step_matrix(k, rest) * full
    } else {
        full
    }
}

/// Step-doubled RK4: Richardson combination `(16·Y_{h/2} - Y_h)/15`.
pub fn step_doubled_propagator(params: &PhysParams, mu: f64, t: f64, h: f64) -> Mat2 {
    let coarse = rk4_propagator(params, mu, t, h);
    let fine = rk4_propagator(params, mu, t, 0.5 * h);
    (fine.scale(16.0.into()) - coarse).scale((1.0 / 15.0).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decoupled_line_matches_exponential() {
        let params = PhysParams::new(1.0, 1.0).unwrap();
        let g = step_doubled_propagator(&params, 0.0, 2.0, 1e-3);
        assert!((g.get(1, 1).re - (-2.0f64).exp()).abs() < 1e-13);
        assert!((g.get(0, 0).re - 1.0).abs() < 1e-15);
    }
}
