use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Periodic `nx × ny` Fourier lattice on `[0, lx) × [0, ly)`.
///
/// Coefficients are stored row-major with the x mode index outermost and
/// both axes in FFT order (`0, 1, …, n/2-1, -n/2, …, -1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    nx: usize,
    ny: usize,
    lx: f64,
    ly: f64,
}

impl Lattice {
    pub fn new(nx: usize, ny: usize, lx: f64, ly: f64) -> Result<Self> {
        for (name, n) in [("nx", nx), ("ny", ny)] {
            if n < 8 || n % 2 != 0 {
                return Err(Error::param(name, format!("must be even and >= 8, got {n}")));
            }
        }
        for (name, l) in [("lx", lx), ("ly", ly)] {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::param(name, format!("must be > 0, got {l}")));
            }
        }
        Ok(Lattice { nx, ny, lx, ly })
    }

    /// `n × n` lattice on the `[0, 2π)²` torus.
    pub fn unit_torus(n: usize) -> Result<Self> {
        Lattice::new(n, n, 2.0 * PI, 2.0 * PI)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn lx(&self) -> f64 {
        self.lx
    }

    pub fn ly(&self) -> f64 {
        self.ly
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn area(&self) -> f64 {
        self.lx * self.ly
    }

    fn signed(i: usize, n: usize) -> i64 {
        if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        }
    }

    /// Signed mode indices `(k, l)` of a storage position.
    pub fn mode(&self, idx: usize) -> (i64, i64) {
        (
            Self::signed(idx / self.ny, self.nx),
            Self::signed(idx % self.ny, self.ny),
        )
    }

    /// Storage position of mode `(k, l)`.
    pub fn index_of(&self, k: i64, l: i64) -> Result<usize> {
        let half_x = (self.nx / 2) as i64;
        let half_y = (self.ny / 2) as i64;
        if k < -half_x || k >= half_x || l < -half_y || l >= half_y {
            return Err(Error::IndexOutOfRange {
                k,
                l,
                nx: self.nx,
                ny: self.ny,
            });
        }
        let i = k.rem_euclid(self.nx as i64) as usize;
        let j = l.rem_euclid(self.ny as i64) as usize;
        Ok(i * self.ny + j)
    }

    /// Frequency `(2πk/lx, 2πl/ly)` of mode `(k, l)`.
    pub fn wavenumber(&self, k: i64, l: i64) -> Result<[f64; 2]> {
        self.index_of(k, l)?;
        Ok(self.xi_of_mode(k, l))
    }

    fn xi_of_mode(&self, k: i64, l: i64) -> [f64; 2] {
        [
            2.0 * PI * k as f64 / self.lx,
            2.0 * PI * l as f64 / self.ly,
        ]
    }

    /// Frequency at a storage position.
    pub fn xi(&self, idx: usize) -> [f64; 2] {
        let (k, l) = self.mode(idx);
        self.xi_of_mode(k, l)
    }

    /// Storage position of the mode `(-k, -l)`, wrapping the Nyquist row.
    pub fn mirror(&self, idx: usize) -> usize {
        let i = idx / self.ny;
        let j = idx % self.ny;
        ((self.nx - i) % self.nx) * self.ny + (self.ny - j) % self.ny
    }

    /// Largest retained `|k|` and `|l|` under the 2/3 rule (`3·kmax < n`).
    pub fn dealias_cutoff(&self) -> (i64, i64) {
        (((self.nx - 1) / 3) as i64, ((self.ny - 1) / 3) as i64)
    }

    /// 2/3-rule mask shared by the solver and the tests.
    pub fn dealias_mask(&self) -> Vec<bool> {
        let (kx, ky) = self.dealias_cutoff();
        (0..self.len())
            .map(|idx| {
                let (k, l) = self.mode(idx);
                k.abs() <= kx && l.abs() <= ky
            })
            .collect()
    }

    /// Largest `|ξ|` among dealiased modes.
    pub fn max_retained_wavenumber(&self) -> f64 {
        let (kx, ky) = self.dealias_cutoff();
        let xi = self.xi_of_mode(kx, ky);
        xi[0].hypot(xi[1])
    }

    /// Physical sample point `(x_i, y_j)` for storage position `idx`.
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let i = idx / self.ny;
        let j = idx % self.ny;
        (
            self.lx * i as f64 / self.nx as f64,
            self.ly * j as f64 / self.ny as f64,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_examples() {
        let unit = Lattice::new(8, 8, 2.0 * PI, 2.0 * PI).unwrap();
        assert_eq!(unit.wavenumber(1, 0).unwrap(), [1.0, 0.0]);
        assert_eq!(unit.wavenumber(0, 0).unwrap(), [0.0, 0.0]);
        let wide = Lattice::new(8, 8, 4.0 * PI, 2.0 * PI).unwrap();
        assert_eq!(wide.wavenumber(1, 0).unwrap(), [0.5, 0.0]);
    }

    #[test]
    fn wavenumber_range_error() {
        let lat = Lattice::unit_torus(8).unwrap();
        assert!(lat.wavenumber(4, 0).is_err());
        assert!(lat.wavenumber(0, -5).is_err());
        assert!(lat.wavenumber(-4, 3).is_ok());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Lattice::new(7, 8, 1.0, 1.0).is_err());
        assert!(Lattice::new(6, 8, 1.0, 1.0).is_err());
        assert!(Lattice::new(8, 8, 0.0, 1.0).is_err());
    }

    #[test]
    fn index_round_trip_and_mirror() {
        let lat = Lattice::new(8, 10, 1.0, 2.0).unwrap();
        for idx in 0..lat.len() {
            let (k, l) = lat.mode(idx);
            assert_eq!(lat.index_of(k, l).unwrap(), idx);
            let m = lat.mirror(idx);
            let (mk, ml) = lat.mode(m);
            assert_eq!((mk as i64).rem_euclid(8), (-k).rem_euclid(8));
            assert_eq!((ml as i64).rem_euclid(10), (-l).rem_euclid(10));
        }
    }

    #[test]
    fn two_thirds_cutoff() {
        let lat = Lattice::unit_torus(256).unwrap();
        assert_eq!(lat.dealias_cutoff(), (85, 85));
        let lat = Lattice::unit_torus(12).unwrap();
        assert_eq!(lat.dealias_cutoff(), (3, 3));
    }
}
