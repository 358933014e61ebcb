use num_complex::Complex64;

use super::{PhysParams, SpectralField};
use crate::error::{Error, Result};
use crate::exec;

/// Zero-mode magnitudes below this are treated as gauge drift and cleared by
/// negative-order operators; anything larger is an error.
pub const GAUGE_TOLERANCE: f64 = 1e-13;

/// `ξ₁/|ξ|`, with the convention `0` at the origin.
pub fn riesz_ratio(xi: [f64; 2]) -> f64 {
    let r = xi[0].hypot(xi[1]);
    if r == 0.0 {
        0.0
    } else {
        xi[0] / r
    }
}

/// Fourier symbol `m(ξ)`.
pub enum Symbol {
    /// `∂_x ↦ iξ₁`
    Dx,
    /// `∂_y ↦ iξ₂`
    Dy,
    /// `(-Δ)^{s/2} ↦ |ξ|^s`; singular at the origin for `s < 0`.
    AbsPow(f64),
    /// `Δ⁻¹ ↦ -|ξ|⁻²`
    InverseLaplacian,
    /// `(-Δ)^{-1/2}∂_x ↦ iξ₁/|ξ|`
    RieszX,
    /// `(-Δ)^{-1/2}∂_y ↦ iξ₂/|ξ|`
    RieszY,
    Custom {
        symbol: Box<dyn Fn([f64; 2]) -> Complex64 + Send + Sync>,
        singular: bool,
    },
}

impl Symbol {
    pub fn custom(
        symbol: impl Fn([f64; 2]) -> Complex64 + Send + Sync + 'static,
        singular: bool,
    ) -> Self {
        Symbol::Custom {
            symbol: Box::new(symbol),
            singular,
        }
    }

    /// Whether the symbol blows up at `ξ = 0`.
    pub fn is_singular(&self) -> bool {
        match self {
            Symbol::AbsPow(s) => *s < 0.0,
            Symbol::InverseLaplacian => true,
            Symbol::Custom { singular, .. } => *singular,
            _ => false,
        }
    }

    /// Symbol value; singular symbols return 0 at the origin.
    pub fn eval(&self, xi: [f64; 2]) -> Complex64 {
        let r2 = xi[0] * xi[0] + xi[1] * xi[1];
        if r2 == 0.0 && self.is_singular() {
            return Complex64::new(0.0, 0.0);
        }
        match self {
            Symbol::Dx => Complex64::new(0.0, xi[0]),
            Symbol::Dy => Complex64::new(0.0, xi[1]),
            Symbol::AbsPow(s) => {
                if r2 == 0.0 {
                    Complex64::new(if *s == 0.0 { 1.0 } else { 0.0 }, 0.0)
                } else {
                    Complex64::new(r2.powf(0.5 * s), 0.0)
                }
            }
            Symbol::InverseLaplacian => Complex64::new(-1.0 / r2, 0.0),
            Symbol::RieszX | Symbol::RieszY => {
                if r2 == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let c = if matches!(self, Symbol::RieszX) { xi[0] } else { xi[1] };
                Complex64::new(0.0, c / r2.sqrt())
            }
            Symbol::Custom { symbol, .. } => symbol(xi),
        }
    }
}

/// Multiplies every coefficient by `m(ξ)`.
///
/// Singular symbols require a zero mode within [`GAUGE_TOLERANCE`]; it is
/// then forced to exactly zero.
pub fn apply_multiplier(field: &SpectralField, symbol: &Symbol) -> Result<SpectralField> {
    let mut out = field.clone();
    apply_in_place(&mut out, symbol)?;
    Ok(out)
}

pub(crate) fn apply_in_place(field: &mut SpectralField, symbol: &Symbol) -> Result<()> {
    if symbol.is_singular() {
        let m = field.zero_mode().norm();
        if m > GAUGE_TOLERANCE {
            return Err(Error::GaugeViolation { magnitude: m });
        }
    }
    apply_projected(field, symbol);
    Ok(())
}

/// Applies the symbol after discarding the mean; used on intermediate
/// products whose mean is irrelevant to the result.
pub(crate) fn apply_projected(field: &mut SpectralField, symbol: &Symbol) {
    let lat = field.lattice();
    exec::for_each_indexed_mut(field.coeffs_mut(), |idx, z| {
        *z *= symbol.eval(lat.xi(idx));
    });
    if symbol.is_singular() {
        field.coeffs_mut()[0] = Complex64::new(0.0, 0.0);
    }
}

/// Biot–Savart law: `φ = Δ⁻¹ω`, `u = ∂_yφ`, `w = -∂_xφ`.
pub fn vorticity_to_velocity(omega: &SpectralField) -> Result<(SpectralField, SpectralField)> {
    let phi = apply_multiplier(omega, &Symbol::InverseLaplacian)?;
    let u = apply_multiplier(&phi, &Symbol::Dy)?;
    let w = apply_multiplier(&phi, &Symbol::custom(|xi| Complex64::new(0.0, -xi[0]), false))?;
    Ok((u, w))
}

/// `Ω = N(-Δ)^{-1/2}ω`.
pub fn scaled_vorticity(omega: &SpectralField, params: &PhysParams) -> Result<SpectralField> {
    let n = params.brunt_n();
    apply_multiplier(omega, &Symbol::AbsPow(-1.0)).map(|f| f.scaled(n))
}

/// Inverse of [`scaled_vorticity`]: `ω = N⁻¹(-Δ)^{1/2}Ω`.
pub fn unscaled_vorticity(big_omega: &SpectralField, params: &PhysParams) -> Result<SpectralField> {
    let n = params.brunt_n();
    let m = big_omega.zero_mode().norm();
    if m > GAUGE_TOLERANCE {
        return Err(Error::GaugeViolation { magnitude: m });
    }
    apply_multiplier(big_omega, &Symbol::AbsPow(1.0)).map(|f| f.scaled(1.0 / n))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::spectral::Lattice;

    fn torus() -> Lattice {
        Lattice::unit_torus(16).unwrap()
    }

    fn single(k: i64, l: i64) -> SpectralField {
        let mut f = SpectralField::zeros(torus());
        f.set_coeff(k, l, Complex64::new(1.0, 0.0)).unwrap();
        f
    }

    #[test]
    fn riesz_ratio_examples() {
        assert_eq!(riesz_ratio([1.0, 0.0]), 1.0);
        assert_eq!(riesz_ratio([0.0, 5.0]), 0.0);
        assert!((riesz_ratio([3.0, 4.0]) - 0.6).abs() < 1e-15);
        assert_eq!(riesz_ratio([0.0, 0.0]), 0.0);
    }

    #[test]
    fn multiplier_examples() {
        let f = apply_multiplier(&single(1, 0), &Symbol::AbsPow(-1.0)).unwrap();
        assert!((f.coeff(1, 0).unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let f = apply_multiplier(&single(2, 0), &Symbol::Dx).unwrap();
        assert!((f.coeff(2, 0).unwrap() - Complex64::new(0.0, 2.0)).norm() < 1e-15);

        let f = apply_multiplier(&single(3, 4), &Symbol::AbsPow(0.5)).unwrap();
        assert!((f.coeff(3, 4).unwrap().re - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn singular_symbol_gauge() {
        let mut f = single(1, 0);
        f.set_coeff(0, 0, Complex64::new(1e-3, 0.0)).unwrap();
        assert!(matches!(
            apply_multiplier(&f, &Symbol::InverseLaplacian),
            Err(Error::GaugeViolation { .. })
        ));
        f.set_coeff(0, 0, Complex64::new(5e-14, 0.0)).unwrap();
        let g = apply_multiplier(&f, &Symbol::InverseLaplacian).unwrap();
        assert_eq!(g.zero_mode(), Complex64::new(0.0, 0.0));
        // regular symbols keep the mean
        let h = apply_multiplier(&f, &Symbol::AbsPow(2.0)).unwrap();
        assert_eq!(h.zero_mode(), Complex64::new(0.0, 0.0));
        let h = apply_multiplier(&f, &Symbol::AbsPow(0.0)).unwrap();
        assert_eq!(h.zero_mode(), Complex64::new(5e-14, 0.0));
    }

    #[test]
    fn biot_savart_single_modes() {
        let lat = torus();
        let omega = SpectralField::from_fn(lat, |x, _| x.cos());
        let (u, w) = vorticity_to_velocity(&omega).unwrap();
        assert!(u.max_abs() < 1e-15);
        let expect_w = SpectralField::from_fn(lat, |x, _| -x.sin());
        assert!(w.max_abs_diff(&expect_w).unwrap() < 1e-15);

        let omega = SpectralField::from_fn(lat, |_, y| y.cos());
        let (u, w) = vorticity_to_velocity(&omega).unwrap();
        let expect_u = SpectralField::from_fn(lat, |_, y| y.sin());
        assert!(u.max_abs_diff(&expect_u).unwrap() < 1e-15);
        assert!(w.max_abs() < 1e-15);
    }

    #[test]
    fn scaled_vorticity_examples() {
        let lat = torus();
        let p = PhysParams::new(1.0, 2.0).unwrap();
        let omega = SpectralField::from_fn(lat, |x, _| x.cos());
        let big = scaled_vorticity(&omega, &p).unwrap();
        assert!(big.max_abs_diff(&omega.scaled(2.0)).unwrap() < 1e-15);

        let p = PhysParams::new(1.0, 1.0).unwrap();
        let omega = SpectralField::from_fn(lat, |x, _| (2.0 * x).cos());
        let big = scaled_vorticity(&omega, &p).unwrap();
        assert!(big.max_abs_diff(&omega.scaled(0.5)).unwrap() < 1e-15);
        assert!((big.l2_norm() - 0.5 * PI * 2f64.sqrt()).abs() < 1e-13);
    }
}
