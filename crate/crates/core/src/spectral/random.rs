use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Lattice, SpectralField};

/// Band-limited random real field with a Gaussian spectral envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomFieldSpec {
    /// Root-mean-square value of the physical field.
    pub amplitude: f64,
    /// Envelope scale: coefficients are drawn with standard deviation
    /// `exp(-|ξ|²/(2·k0²))`.
    pub k0: f64,
    /// Modes with `max(|k|, |l|) > band` are left at zero (the 2/3-rule band
    /// is always enforced as well).
    pub band: i64,
    /// Leave the `ξ₁ = 0` line empty.
    pub vanish_on_vertical_line: bool,
}

impl Default for RandomFieldSpec {
    fn default() -> Self {
        RandomFieldSpec {
            amplitude: 1e-2,
            k0: 4.0,
            band: i64::MAX,
            vanish_on_vertical_line: false,
        }
    }
}

/// Draws a mean-zero, Hermitian, dealiased field.
pub fn random_field<R: Rng + ?Sized>(lattice: Lattice, spec: &RandomFieldSpec, rng: &mut R) -> SpectralField {
    let mut field = SpectralField::zeros(lattice);
    let (kx, ky) = lattice.dealias_cutoff();
    for idx in 0..lattice.len() {
        let (k, l) = lattice.mode(idx);
        let upper = k > 0 || (k == 0 && l > 0);
        if !upper || k.abs() > kx.min(spec.band) || l.abs() > ky.min(spec.band) {
            continue;
        }
        if spec.vanish_on_vertical_line && k == 0 {
            continue;
        }
        let xi = lattice.xi(idx);
        let sigma = (-(xi[0] * xi[0] + xi[1] * xi[1]) / (2.0 * spec.k0 * spec.k0)).exp();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let c = Complex64::new(re, im) * sigma;
        let m = lattice.mirror(idx);
        field.coeffs_mut()[idx] = c;
        field.coeffs_mut()[m] = c.conj();
    }
    let power: f64 = field.coeffs().iter().map(|z| z.norm_sqr()).sum();
    if power > 0.0 {
        field = field.scaled(spec.amplitude / power.sqrt());
    }
    field
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn random_field_invariants() {
        let lat = Lattice::unit_torus(32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = RandomFieldSpec {
            vanish_on_vertical_line: true,
            ..Default::default()
        };
        let f = random_field(lat, &spec, &mut rng);
        assert_eq!(f.zero_mode(), Complex64::new(0.0, 0.0));
        assert_eq!(f.hermitian_defect(), 0.0);
        assert!(f.is_dealiased());
        for k in -10..=10 {
            assert_eq!(f.coeff(0, k).unwrap(), Complex64::new(0.0, 0.0));
        }
        let rms = (f.l2_norm().powi(2) / lat.area()).sqrt();
        assert!((rms - 1e-2).abs() < 1e-15);
    }

    #[test]
    fn seeded_fields_repeat() {
        let lat = Lattice::unit_torus(16).unwrap();
        let a = random_field(lat, &Default::default(), &mut ChaCha8Rng::seed_from_u64(9));
        let b = random_field(lat, &Default::default(), &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }
}
