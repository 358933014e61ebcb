use num_complex::Complex64;

use super::{check_mu, check_time, eigen_data, ModeGenerator};
use crate::error::Result;
use crate::mat2::Mat2;
use crate::spectral::PhysParams;

/// Relative width of the Jordan branch: `|α² - 4N²μ²| ≤ DEGENERACY_TOL·α²`.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// `Γ̂(t, ξ) = e^{-E(iμ)t}` acting on `(b̂, Ω̂)` at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorMatrix {
    pub matrix: Mat2,
    pub mu: f64,
    pub t: f64,
}

impl PropagatorMatrix {
    pub fn apply(&self, b: Complex64, omega: Complex64) -> (Complex64, Complex64) {
        let [x, y] = self.matrix.apply([b, omega]);
        (x, y)
    }
}

/// Closed-form matrix exponential.
///
/// Distinct eigenvalues: `e^{-λ₋t}P₋ + e^{-λ₊t}P₊`. Inside the degeneracy band
/// the Jordan form `e^{-λt}(I - t(E - λI))` with `λ = α/2` is used.
pub fn exact_mode_propagator(params: &PhysParams, mu: f64, t: f64) -> Result<PropagatorMatrix> {
    check_mu(mu)?;
    check_time(t)?;
    let mu = mu.clamp(-1.0, 1.0);
    let data = eigen_data(params, mu);
    let matrix = match data.projectors {
        Some((p_plus, p_minus)) => {
            p_minus.scale((-data.lambda_minus * t).exp()) + p_plus.scale((-data.lambda_plus * t).exp())
        }
        None => {
            let lambda = Complex64::new(0.5 * params.alpha(), 0.0);
            let e = ModeGenerator::new(params, mu).matrix();
            let nil = e - Mat2::identity().scale(lambda);
            (Mat2::identity() - nil.scale(t.into())).scale((-lambda * t).exp())
        }
    };
    Ok(PropagatorMatrix { matrix, mu, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn identity_at_time_zero() {
        for (a, n) in [(1.0, 1.0), (0.5, 2.0), (2.0, 0.5)] {
            let params = PhysParams::new(a, n).unwrap();
            for mu in [-1.0, -0.3, 0.0, 0.125, 0.6, 1.0] {
                let g = exact_mode_propagator(&params, mu, 0.0).unwrap();
                assert!(g.matrix.dist_max(&Mat2::identity()) < 1e-14);
            }
        }
    }

    #[test]
    fn horizontal_line_is_diagonal() {
        let params = PhysParams::new(1.5, 0.7).unwrap();
        for t in [0.1, 1.0, 7.0] {
            let g = exact_mode_propagator(&params, 0.0, t).unwrap();
            let expect = Mat2::from_real(1.0, 0.0, 0.0, (-1.5 * t).exp());
            assert!(g.matrix.dist_max(&expect) < 1e-15);
        }
    }

    #[test]
    fn negative_frequency_is_conjugate() {
        let params = PhysParams::new(1.0, 1.0).unwrap();
        for mu in [0.05, 0.3, 0.5, 0.9] {
            let a = exact_mode_propagator(&params, mu, 3.0).unwrap().matrix;
            let b = exact_mode_propagator(&params, -mu, 3.0).unwrap().matrix;
            assert!(a.conj().dist_max(&b) < 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        let params = PhysParams::new(1.0, 1.0).unwrap();
        assert_eq!(
            exact_mode_propagator(&params, 0.3, -1.0).unwrap_err(),
            Error::NegativeTime(-1.0)
        );
        assert!(exact_mode_propagator(&params, 1.5, 1.0).is_err());
    }

    #[test]
    fn degenerate_branch_is_continuous() {
        // alpha = 2N*mu* at mu* = 0.5
        let params = PhysParams::new(1.0, 1.0).unwrap();
        let mu_star = 0.5;
        for t in [0.5, 2.0, 10.0] {
            let inside = exact_mode_propagator(&params, mu_star, t).unwrap().matrix;
            // just outside the degeneracy band on both sides
            for side in [-1.0, 1.0] {
                let mu = mu_star * (1.0 + side * 1.0e-9);
                let outside = exact_mode_propagator(&params, mu, t).unwrap().matrix;
                assert!(inside.dist_max(&outside) <= 1e-8, "t={t} side={side}");
            }
        }
    }
}
