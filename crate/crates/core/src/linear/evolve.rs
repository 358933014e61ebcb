use num_complex::Complex64;

use super::{check_time, exact_mode_propagator};
use crate::error::{Error, Result};
use crate::exec;
use crate::spectral::{riesz_ratio, PhysParams, SpectralField};

/// Applies the exact kernel at every lattice frequency to `(b̂, Ω̂)`.
///
/// The `ξ = 0` mode uses `μ = 0`, i.e. `diag(1, e^{-αt})`.
pub fn linear_evolve_lattice(
    b: &SpectralField,
    big_omega: &SpectralField,
    params: &PhysParams,
    t: f64,
) -> Result<(SpectralField, SpectralField)> {
    b.check_same(big_omega)?;
    check_time(t)?;
    let lat = b.lattice();
    let pairs: Vec<Result<(Complex64, Complex64)>> = exec::map_range(lat.len(), |idx| {
        let mu = riesz_ratio(lat.xi(idx));
        let g = exact_mode_propagator(params, mu, t)?;
        Ok(g.apply(b.coeffs()[idx], big_omega.coeffs()[idx]))
    });
    let mut nb = Vec::with_capacity(lat.len());
    let mut no = Vec::with_capacity(lat.len());
    for p in pairs {
        let (x, y) = p?;
        nb.push(x);
        no.push(y);
    }
    Ok((
        SpectralField::from_coeffs(lat, nb).map_err(|_| Error::LatticeMismatch)?,
        SpectralField::from_coeffs(lat, no).map_err(|_| Error::LatticeMismatch)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Lattice;

    #[test]
    fn time_zero_is_identity() {
        let lat = Lattice::unit_torus(16).unwrap();
        let b = SpectralField::from_fn(lat, |x, y| (x + 2.0 * y).sin());
        let o = SpectralField::from_fn(lat, |x, _| (3.0 * x).cos());
        let p = PhysParams::new(1.0, 1.0).unwrap();
        let (b1, o1) = linear_evolve_lattice(&b, &o, &p, 0.0).unwrap();
        assert!(b1.max_abs_diff(&b).unwrap() < 1e-15);
        assert!(o1.max_abs_diff(&o).unwrap() < 1e-15);
    }

    #[test]
    fn vertical_structure_is_frozen() {
        let lat = Lattice::unit_torus(16).unwrap();
        let b = SpectralField::from_fn(lat, |_, y| (2.0 * y).cos() + 0.3 * y.sin());
        let o = SpectralField::zeros(lat);
        let p = PhysParams::new(1.0, 1.0).unwrap();
        for t in [1.0, 50.0, 1e4] {
            let (b1, o1) = linear_evolve_lattice(&b, &o, &p, t).unwrap();
            assert!(b1.max_abs_diff(&b).unwrap() < 1e-15);
            assert!(o1.max_abs() < 1e-15);
        }
    }

    #[test]
    fn mismatched_lattices() {
        let b = SpectralField::zeros(Lattice::unit_torus(16).unwrap());
        let o = SpectralField::zeros(Lattice::unit_torus(8).unwrap());
        let p = PhysParams::new(1.0, 1.0).unwrap();
        assert_eq!(
            linear_evolve_lattice(&b, &o, &p, 1.0).unwrap_err(),
            Error::LatticeMismatch
        );
    }
}
