use num_complex::Complex64;

use super::propagator::DEGENERACY_TOL;
use crate::mat2::Mat2;
use crate::spectral::PhysParams;

/// `E(iμ) = B + iμA = [[0, -iNμ], [-iNμ, α]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeGenerator {
    matrix: Mat2,
}

impl ModeGenerator {
    pub fn new(params: &PhysParams, mu: f64) -> Self {
        let off = Complex64::new(0.0, -params.brunt_n() * mu);
        ModeGenerator {
            matrix: Mat2::new(Complex64::new(0.0, 0.0), off, off, params.alpha().into()),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn det(&self) -> Complex64 {
        self.matrix.det()
    }
}

/// Roots of `λ² - αλ + N²μ²`: `λ± = α/2 ± ½√(α² - 4N²μ²)`.
///
/// For a real discriminant the small root is formed as `N²μ²/λ₊`, which
/// avoids cancellation as `μ → 0`.
pub fn eigenvalues(params: &PhysParams, mu: f64) -> (Complex64, Complex64) {
    let alpha = params.alpha();
    let nm2 = (params.brunt_n() * mu).powi(2);
    let disc = alpha * alpha - 4.0 * nm2;
    if disc >= 0.0 {
        let plus = 0.5 * (alpha + disc.sqrt());
        let minus = if plus > 0.0 { nm2 / plus } else { 0.5 * (alpha - disc.sqrt()) };
        (plus.into(), minus.into())
    } else {
        let im = 0.5 * (-disc).sqrt();
        (
            Complex64::new(0.5 * alpha, im),
            Complex64::new(0.5 * alpha, -im),
        )
    }
}

/// Eigenvalues together with the spectral projectors of `E(iμ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    /// `(P₊, P₋)`; `None` on the Jordan (degenerate) branch.
    pub projectors: Option<(Mat2, Mat2)>,
    pub degenerate: bool,
}

impl EigenData {
    pub fn proj_plus(&self) -> Option<Mat2> {
        self.projectors.map(|p| p.0)
    }

    pub fn proj_minus(&self) -> Option<Mat2> {
        self.projectors.map(|p| p.1)
    }
}

pub fn eigen_data(params: &PhysParams, mu: f64) -> EigenData {
    let alpha = params.alpha();
    let disc = alpha * alpha - 4.0 * (params.brunt_n() * mu).powi(2);
    let (lp, lm) = eigenvalues(params, mu);
    let degenerate = disc.abs() <= DEGENERACY_TOL * alpha * alpha;
    let projectors = (!degenerate).then(|| {
        let e = ModeGenerator::new(params, mu).matrix();
        let id = Mat2::identity();
        let p_minus = (e - id.scale(lp)).scale(1.0 / (lm - lp));
        let p_plus = (e - id.scale(lm)).scale(1.0 / (lp - lm));
        (p_plus, p_minus)
    });
    EigenData {
        lambda_plus: lp,
        lambda_minus: lm,
        projectors,
        degenerate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, n: f64) -> PhysParams {
        PhysParams::new(a, n).unwrap()
    }

    fn residual(params: &PhysParams, mu: f64, l: Complex64) -> f64 {
        (l * l - l * params.alpha() + (params.brunt_n() * mu).powi(2)).norm()
    }

    #[test]
    fn eigenvalue_examples() {
        let (lp, lm) = eigenvalues(&p(1.0, 1.0), 0.0);
        assert_eq!((lp, lm), (1.0.into(), 0.0.into()));

        let (lp, lm) = eigenvalues(&p(2.0, 1.0), 1.0);
        assert_eq!((lp, lm), (1.0.into(), 1.0.into()));
        assert!(eigen_data(&p(2.0, 1.0), 1.0).degenerate);

        let params = p(1.0, 1.0);
        let (lp, lm) = eigenvalues(&params, 1.0);
        let h = 3f64.sqrt() / 2.0;
        assert!((lp - Complex64::new(0.5, h)).norm() < 1e-15);
        assert!((lm - Complex64::new(0.5, -h)).norm() < 1e-15);
        assert!(residual(&params, 1.0, lp) < 1e-15);
        assert!(residual(&params, 1.0, lm) < 1e-15);
    }

    #[test]
    fn generator_trace_and_det() {
        let params = p(0.7, 1.3);
        for mu in [-1.0, -0.2, 0.0, 0.4, 1.0] {
            let g = ModeGenerator::new(&params, mu);
            assert!((g.trace() - Complex64::new(0.7, 0.0)).norm() < 1e-15);
            assert!((g.det() - Complex64::new((1.3 * mu).powi(2), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn projectors_resolve_identity() {
        let params = p(1.0, 1.0);
        for mu in [0.0, 0.1, 0.3, 0.49, 0.51, 0.8, 1.0] {
            let d = eigen_data(&params, mu);
            let (pp, pm) = d.projectors.unwrap();
            assert!((pp + pm).dist_max(&Mat2::identity()) < 1e-12);
            assert!((pp * pm).max_abs() < 1e-12);
            assert!((pp * pp).dist_max(&pp) < 1e-12);
            assert!((pm * pm).dist_max(&pm) < 1e-12);
            let e = ModeGenerator::new(&params, mu).matrix();
            let recon = pp.scale(d.lambda_plus) + pm.scale(d.lambda_minus);
            assert!(recon.dist_max(&e) < 1e-12);
        }
    }
}
