use num_complex::Complex64;

use super::{Fft2, Lattice, GAUGE_TOLERANCE};
use crate::error::{Error, Result};

/// Fourier coefficients of a scalar field on a periodic lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    lattice: Lattice,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(lattice: Lattice) -> Self {
        SpectralField {
            lattice,
            coeffs: vec![Complex64::new(0.0, 0.0); lattice.len()],
        }
    }

    pub fn from_coeffs(lattice: Lattice, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != lattice.len() {
            return Err(Error::param(
                "coeffs",
                format!("expected {} coefficients, got {}", lattice.len(), coeffs.len()),
            ));
        }
        Ok(SpectralField { lattice, coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(lattice: Lattice, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), lattice.len());
        SpectralField { lattice, coeffs }
    }

    /// Samples `f(x, y)` on the grid and transforms it.
    pub fn from_fn(lattice: Lattice, f: impl Fn(f64, f64) -> f64) -> Self {
        let values: Vec<f64> = (0..lattice.len())
            .map(|idx| {
                let (x, y) = lattice.point(idx);
                f(x, y)
            })
            .collect();
        Fft2::new(lattice).from_physical(&values)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, k: i64, l: i64) -> Result<Complex64> {
        Ok(self.coeffs[self.lattice.index_of(k, l)?])
    }

    pub fn set_coeff(&mut self, k: i64, l: i64, value: Complex64) -> Result<()> {
        let idx = self.lattice.index_of(k, l)?;
        self.coeffs[idx] = value;
        Ok(())
    }

    /// Sets the `(k, l)` and `(-k, -l)` coefficients of a real field
    /// `amplitude·cos(ξ·x) ` (or `sin` when `sine` is true).
    pub fn add_real_mode(&mut self, k: i64, l: i64, amplitude: f64, sine: bool) -> Result<()> {
        let half = if sine {
            Complex64::new(0.0, -0.5 * amplitude)
        } else {
            Complex64::new(0.5 * amplitude, 0.0)
        };
        let a = self.lattice.index_of(k, l)?;
        let b = self.lattice.index_of(-k, -l)?;
        if a == b {
            self.coeffs[a] += half + half.conj();
        } else {
            self.coeffs[a] += half;
            self.coeffs[b] += half.conj();
        }
        Ok(())
    }

    pub fn zero_mode(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `max |ĉ(-k) - conj(ĉ(k))|`; zero for the transform of a real function.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|idx| (self.coeffs[self.lattice.mirror(idx)] - self.coeffs[idx].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Zeros every mode outside the 2/3-rule band.
    pub fn dealias(&mut self) {
        let (kx, ky) = self.lattice.dealias_cutoff();
        let lat = self.lattice;
        for (idx, z) in self.coeffs.iter_mut().enumerate() {
            let (k, l) = lat.mode(idx);
            if k.abs() > kx || l.abs() > ky {
                *z = Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn is_dealiased(&self) -> bool {
        let (kx, ky) = self.lattice.dealias_cutoff();
        self.coeffs.iter().enumerate().all(|(idx, z)| {
            let (k, l) = self.lattice.mode(idx);
            (k.abs() <= kx && l.abs() <= ky) || (z.re == 0.0 && z.im == 0.0)
        })
    }

    pub fn scaled(&self, s: f64) -> SpectralField {
        SpectralField {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|z| z * s).collect(),
        }
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &SpectralField) -> Result<SpectralField> {
        self.check_same(other)?;
        Ok(SpectralField {
            lattice: self.lattice,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b * s)
                .collect(),
        })
    }

    pub fn check_same(&self, other: &SpectralField) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &SpectralField) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sobolev norm with the Fourier-series Parseval factor `lx·ly`.
    ///
    /// Homogeneous: weight `|ξ|^{2s}` (the zero mode is dropped for `s > 0`
    /// and must vanish for `s < 0`). Non-homogeneous: weight `(1+|ξ|²)^s`.
    /// The sum runs in storage (row-major) order.
    pub fn sobolev_norm(&self, s: f64, homogeneous: bool) -> Result<f64> {
        self.weighted_norm(s, homogeneous, |_| 1.0)
    }

    /// Sobolev norm of `∂_x`-, `∂_y`- or otherwise weighted data: `extra(ξ)`
    /// multiplies the squared weight.
    pub fn weighted_norm(
        &self,
        s: f64,
        homogeneous: bool,
        extra: impl Fn([f64; 2]) -> f64,
    ) -> Result<f64> {
        if homogeneous && s < 0.0 {
            let m = self.zero_mode().norm();
            if m > GAUGE_TOLERANCE {
                return Err(Error::GaugeViolation { magnitude: m });
            }
        }
        let mut acc = 0.0;
        for (idx, z) in self.coeffs.iter().enumerate() {
            let xi = self.lattice.xi(idx);
            let r2 = xi[0] * xi[0] + xi[1] * xi[1];
            let w = if homogeneous {
                if r2 == 0.0 {
                    if s == 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    r2.powf(s)
                }
            } else {
                (1.0 + r2).powf(s)
            };
            acc += w * extra(xi) * z.norm_sqr();
        }
        Ok((self.lattice.area() * acc).sqrt())
    }

    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() * self.lattice.area().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn torus() -> Lattice {
        Lattice::unit_torus(16).unwrap()
    }

    #[test]
    fn cosine_norms() {
        let g = SpectralField::from_fn(torus(), |x, _| x.cos());
        let expected = PI * 2f64.sqrt();
        assert!((g.sobolev_norm(0.0, true).unwrap() - expected).abs() < 1e-12);
        for s in [-1.0, 0.5, 1.0, 3.0] {
            assert!((g.sobolev_norm(s, true).unwrap() - expected).abs() < 1e-12);
        }
        let g2 = SpectralField::from_fn(torus(), |x, _| (2.0 * x).cos());
        assert!((g2.sobolev_norm(1.0, true).unwrap() - 2.0 * expected).abs() < 1e-12);
    }

    #[test]
    fn negative_homogeneous_needs_zero_mean() {
        let g = SpectralField::from_fn(torus(), |x, _| 1.0 + x.cos());
        assert!(matches!(
            g.sobolev_norm(-1.0, true),
            Err(Error::GaugeViolation { .. })
        ));
        assert!(g.sobolev_norm(-1.0, false).is_ok());
    }

    #[test]
    fn real_mode_builder_matches_samples() {
        let mut f = SpectralField::zeros(torus());
        f.add_real_mode(2, -1, 3.0, true).unwrap();
        let g = SpectralField::from_fn(torus(), |x, y| 3.0 * (2.0 * x - y).sin());
        assert!(f.max_abs_diff(&g).unwrap() < 1e-14);
        assert!(f.hermitian_defect() < 1e-15);
    }
}
