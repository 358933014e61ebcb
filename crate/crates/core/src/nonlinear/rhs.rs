use num_complex::Complex64;

use super::State;
use crate::error::Result;
use crate::exec;
use crate::spectral::{Fft2, Lattice, PhysParams, SpectralField};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tendencies of both unknowns plus the largest velocity magnitude on the
/// grid (for the step-size guard).
pub(crate) struct Tendency {
    pub db: Vec<Complex64>,
    pub dx: Vec<Complex64>,
    pub max_speed: f64,
}

/// FFT plans and per-mode symbol tables for one lattice.
pub(crate) struct Workspace {
    fft: Fft2,
    kx: Vec<f64>,
    ky: Vec<f64>,
    abs: Vec<f64>,
    /// `1/|ξ|`, zero at the origin.
    inv: Vec<f64>,
    keep: Vec<bool>,
}

fn map(c: &[Complex64], f: impl Fn(usize, Complex64) -> Complex64 + Sync + Send) -> Vec<Complex64> {
    exec::map_range(c.len(), |i| f(i, c[i]))
}

fn field(lat: Lattice, c: Vec<Complex64>) -> SpectralField {
    SpectralField::from_coeffs_unchecked(lat, c)
}

/// Largest `|(re, im)|` over packed physical samples.
fn max_modulus(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max).sqrt()
}

impl Workspace {
    pub fn new(lattice: Lattice) -> Self {
        let n = lattice.len();
        let mut kx = Vec::with_capacity(n);
        let mut ky = Vec::with_capacity(n);
        let mut abs = Vec::with_capacity(n);
        let mut inv = Vec::with_capacity(n);
        for idx in 0..n {
            let xi = lattice.xi(idx);
            let r = xi[0].hypot(xi[1]);
            kx.push(xi[0]);
            ky.push(xi[1]);
            abs.push(r);
            inv.push(if r == 0.0 { 0.0 } else { 1.0 / r });
        }
        Workspace {
            fft: Fft2::new(lattice),
            kx,
            ky,
            abs,
            inv,
            keep: lattice.dealias_mask(),
        }
    }

    pub fn lattice(&self) -> Lattice {
        self.fft.lattice()
    }

    pub fn max_wavenumber(&self, dealias: bool) -> f64 {
        self.abs
            .iter()
            .zip(&self.keep)
            .filter(|(_, &k)| k || !dealias)
            .map(|(a, _)| *a)
            .fold(0.0, f64::max)
    }

    /// `Ω̂ = N|ξ|⁻¹ω̂`.
    pub fn to_big_omega(&self, omega: &[Complex64], n: f64) -> Vec<Complex64> {
        map(omega, |i, z| z * (n * self.inv[i]))
    }

    /// `ω̂ = N⁻¹|ξ|Ω̂`.
    pub fn to_omega(&self, big_omega: &[Complex64], n: f64) -> Vec<Complex64> {
        map(big_omega, |i, z| z * (self.abs[i] / n))
    }

    /// `Σ|ĉ|²/|ξ|²`, the squared `Ḣ^{-1}` sum without the area factor.
    pub fn inverse_sq_sum(&self, c: &[Complex64]) -> f64 {
        c.iter()
            .zip(&self.inv)
            .map(|(z, w)| z.norm_sqr() * w * w)
            .sum()
    }

    /// Physical samples (y-major) of the real fields `A` and `B` packed as
    /// `A + iB`, where `Â = m_a·ĉ` and `B̂ = m_b·ĉ` for symbols with
    /// `m(-ξ) = conj m(ξ)`.
    fn synth(&self, c: &[Complex64], sym: impl Fn(usize) -> (Complex64, Complex64) + Sync + Send) -> Vec<Complex64> {
        let i = Complex64::i();
        let packed = map(c, |k, z| {
            let (ma, mb) = sym(k);
            z * ma + i * (z * mb)
        });
        self.fft.inverse_to_transposed(packed)
    }

    /// Coefficients of the real fields packed in `products`, masked when
    /// requested.
    fn analyse(&self, products: Vec<Complex64>, dealias: bool) -> (Vec<Complex64>, Vec<Complex64>) {
        let z = self.fft.forward_from_transposed(products);
        let (mut ca, mut cb) = self.fft.unpack_pair(&z, 1.0 / z.len() as f64);
        if dealias {
            for ((x, y), &k) in ca.iter_mut().zip(cb.iter_mut()).zip(&self.keep) {
                if !k {
                    *x = ZERO;
                    *y = ZERO;
                }
            }
        }
        (ca, cb)
    }

    fn ikx(&self, k: usize) -> Complex64 {
        Complex64::new(0.0, self.kx[k])
    }

    fn iky(&self, k: usize) -> Complex64 {
        Complex64::new(0.0, self.ky[k])
    }

    /// `∂_t b = -N²Δ⁻¹∂_xω - u·∇b`, `∂_tω = -αω + ∂_x b - u·∇ω`.
    pub fn vorticity(
        &self,
        b: &[Complex64],
        omega: &[Complex64],
        params: &PhysParams,
        nonlinear: bool,
        dealias: bool,
    ) -> Tendency {
        let (alpha, n) = (params.alpha(), params.brunt_n());
        let mut max_speed = 0.0;
        let (nb, nw) = if nonlinear {
            // u = ∂_yΔ⁻¹ω, w = -∂_xΔ⁻¹ω
            let vel = self.synth(omega, |k| {
                let i2 = self.inv[k] * self.inv[k];
                (self.iky(k) * -i2, self.ikx(k) * i2)
            });
            let gb = self.synth(b, |k| (self.ikx(k), self.iky(k)));
            let gw = self.synth(omega, |k| (self.ikx(k), self.iky(k)));
            max_speed = max_modulus(&vel);
            let prod: Vec<Complex64> = exec::map_range(vel.len(), |p| {
                let (u, w) = (vel[p].re, vel[p].im);
                Complex64::new(
                    -(u * gb[p].re + w * gb[p].im),
                    -(u * gw[p].re + w * gw[p].im),
                )
            });
            self.analyse(prod, dealias)
        } else {
            (vec![ZERO; b.len()], vec![ZERO; b.len()])
        };
        let n2 = n * n;
        let mut db = exec::map_range(b.len(), |k| {
            omega[k] * (self.ikx(k) * (n2 * self.inv[k] * self.inv[k])) + nb[k]
        });
        let mut dw = exec::map_range(b.len(), |k| {
            -alpha * omega[k] + self.ikx(k) * b[k] + nw[k]
        });
        db[0] = ZERO;
        dw[0] = ZERO;
        Tendency {
            db,
            dx: dw,
            max_speed,
        }
    }

    /// Diagonalised form with `R_j = ∂_j(-Δ)^{-1/2}` and `M = (-Δ)^{-1/2}`:
    ///
    /// `∂_t b = iNμΩ̂ + N⁻¹[(R_yΩ)∂_x b - (R_xΩ)∂_y b]`
    ///
    /// `∂_tΩ = iNμb̂ - αΩ̂ + N⁻¹[(R_yΩ)∂_xΩ - (R_xΩ)∂_yΩ]
    ///        + N⁻¹[M, R_yΩ](-Δ)^{1/2}∂_xΩ - N⁻¹[M, R_xΩ](-Δ)^{1/2}∂_yΩ`
    ///
    /// with `[M, f]g = M(fg) - f·Mg` evaluated literally.
    pub fn diagonalized(
        &self,
        b: &[Complex64],
        big_omega: &[Complex64],
        params: &PhysParams,
        nonlinear: bool,
        dealias: bool,
    ) -> Tendency {
        let (alpha, n) = (params.alpha(), params.brunt_n());
        let inv_n = 1.0 / n;
        let mut max_speed = 0.0;
        let (nb, nl, nc) = if nonlinear {
            let f = self.synth(big_omega, |k| {
                (self.iky(k) * self.inv[k], self.ikx(k) * self.inv[k])
            });
            let gb = self.synth(b, |k| (self.ikx(k), self.iky(k)));
            let go = self.synth(big_omega, |k| (self.ikx(k), self.iky(k)));
            let g = self.synth(big_omega, |k| {
                (self.ikx(k) * self.abs[k], self.iky(k) * self.abs[k])
            });
            let mg = self.synth(big_omega, |k| {
                let s = self.abs[k] * self.inv[k];
                (self.ikx(k) * s, self.iky(k) * s)
            });
            // (fy, fx) = (R_yΩ, R_xΩ); velocity is N⁻¹(-fy, fx)
            max_speed = inv_n * max_modulus(&f);
            let first: Vec<Complex64> = exec::map_range(f.len(), |p| {
                let (fy, fx) = (f[p].re, f[p].im);
                let transport = fy * go[p].re - fx * go[p].im;
                let local = fy * mg[p].re - fx * mg[p].im;
                Complex64::new(
                    inv_n * (fy * gb[p].re - fx * gb[p].im),
                    inv_n * (transport - local),
                )
            });
            let second: Vec<Complex64> = exec::map_range(f.len(), |p| {
                Complex64::new(f[p].re * g[p].re, f[p].im * g[p].im)
            });
            let (nb, nl) = self.analyse(first, dealias);
            let (c3, c4) = self.analyse(second, dealias);
            let nc = exec::map_range(c3.len(), |k| (c3[k] - c4[k]) * (inv_n * self.inv[k]));
            (nb, nl, nc)
        } else {
            let z = vec![ZERO; b.len()];
            (z.clone(), z.clone(), z)
        };
        let imu = |k: usize| self.ikx(k) * (n * self.inv[k]);
        let mut db = exec::map_range(b.len(), |k| imu(k) * big_omega[k] + nb[k]);
        let mut dom = exec::map_range(b.len(), |k| {
            imu(k) * b[k] - alpha * big_omega[k] + nl[k] + nc[k]
        });
        db[0] = ZERO;
        dom[0] = ZERO;
        Tendency {
            db,
            dx: dom,
            max_speed,
        }
    }
}

/// Tendencies `(∂_t b, ∂_t ω)` of the vorticity form.
pub fn nonlinear_rhs_vorticity(
    state: &State,
    params: &PhysParams,
) -> Result<(SpectralField, SpectralField)> {
    let lat = state.lattice();
    let ws = Workspace::new(lat);
    let t = ws.vorticity(state.b.coeffs(), state.omega.coeffs(), params, true, true);
    Ok((field(lat, t.db), field(lat, t.dx)))
}

/// Tendencies `(∂_t b, ∂_t Ω)` of the diagonalised form; `big_omega` is
/// `Ω = N(-Δ)^{-1/2}ω`.
pub fn nonlinear_rhs_diagonalized(
    b: &SpectralField,
    big_omega: &SpectralField,
    params: &PhysParams,
) -> Result<(SpectralField, SpectralField)> {
    b.check_same(big_omega)?;
    let lat = b.lattice();
    let ws = Workspace::new(lat);
    let t = ws.diagonalized(b.coeffs(), big_omega.coeffs(), params, true, true);
    Ok((field(lat, t.db), field(lat, t.dx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::scaled_vorticity;

    fn single_mode() -> (State, PhysParams) {
        let lat = Lattice::unit_torus(16).unwrap();
        let omega = SpectralField::from_fn(lat, |x, _| x.cos());
        let s = State::new(SpectralField::zeros(lat), omega, 0.0).unwrap();
        (s, PhysParams::new(1.0, 1.0).unwrap())
    }

    #[test]
    fn zero_state_has_zero_tendency() {
        let lat = Lattice::unit_torus(16).unwrap();
        let p = PhysParams::new(1.0, 1.0).unwrap();
        let (db, dw) = nonlinear_rhs_vorticity(&State::zeros(lat), &p).unwrap();
        assert!(db.is_zero() && dw.is_zero());
    }

    #[test]
    fn cosine_vorticity() {
        let (s, p) = single_mode();
        let lat = s.lattice();
        let (db, dw) = nonlinear_rhs_vorticity(&s, &p).unwrap();
        let want_b = SpectralField::from_fn(lat, |x, _| -x.sin());
        let want_w = SpectralField::from_fn(lat, |x, _| -x.cos());
        assert!(db.max_abs_diff(&want_b).unwrap() < 1e-15);
        assert!(dw.max_abs_diff(&want_w).unwrap() < 1e-15);
    }

    #[test]
    fn cosine_diagonalized() {
        let (s, p) = single_mode();
        let big = scaled_vorticity(&s.omega, &p).unwrap();
        let (_, dom) = nonlinear_rhs_diagonalized(&s.b, &big, &p).unwrap();
        assert!(dom.max_abs_diff(&big.scaled(-1.0)).unwrap() < 1e-15);
    }
}
