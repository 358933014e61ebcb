use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{Lattice, SpectralField};
use crate::exec;

const ROWS_PER_TASK: usize = 16;

/// Planned 2D transforms between physical samples and Fourier coefficients.
///
/// Coefficients follow the Fourier-series convention
/// `f(x) = Σ ĉ_k e^{iξ_k·x}`, so the forward transform carries the `1/(nx·ny)`
/// factor.
#[derive(Clone)]
pub struct Fft2 {
    lattice: Lattice,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Fft2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fft2").field("lattice", &self.lattice).finish()
    }
}

impl Fft2 {
    pub fn new(lattice: Lattice) -> Self {
        let mut planner = FftPlanner::new();
        Fft2 {
            lattice,
            fwd_x: planner.plan_fft_forward(lattice.nx()),
            inv_x: planner.plan_fft_inverse(lattice.nx()),
            fwd_y: planner.plan_fft_forward(lattice.ny()),
            inv_y: planner.plan_fft_inverse(lattice.ny()),
        }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    fn transform(&self, data: &mut [Complex64], along_y: &Arc<dyn Fft<f64>>, along_x: &Arc<dyn Fft<f64>>) {
        let nx = self.lattice.nx();
        let ny = self.lattice.ny();
        exec::for_each_chunk_mut(data, ny * ROWS_PER_TASK, |_, rows| along_y.process(rows));
        let mut t = vec![Complex64::new(0.0, 0.0); data.len()];
        transpose::transpose(data, &mut t, ny, nx);
        exec::for_each_chunk_mut(&mut t, nx * ROWS_PER_TASK, |_, rows| along_x.process(rows));
        transpose::transpose(&t, data, nx, ny);
    }

    /// Unnormalised forward DFT (`e^{-iξ·x}` kernel) in place.
    pub fn forward_in_place(&self, data: &mut [Complex64]) {
        self.transform(data, &self.fwd_y, &self.fwd_x);
    }

    /// Unnormalised inverse DFT (`e^{+iξ·x}` kernel) in place.
    pub fn inverse_in_place(&self, data: &mut [Complex64]) {
        self.transform(data, &self.inv_y, &self.inv_x);
    }

    /// Inverse transform whose physical samples are left in transposed
    /// (y-major) order, saving one transpose. Only pointwise work may be done
    /// on the result before [`Fft2::forward_from_transposed`].
    pub(crate) fn inverse_to_transposed(&self, mut data: Vec<Complex64>) -> Vec<Complex64> {
        let (nx, ny) = (self.lattice.nx(), self.lattice.ny());
        let inv_y = &self.inv_y;
        exec::for_each_chunk_mut(&mut data, ny * ROWS_PER_TASK, |_, rows| inv_y.process(rows));
        let mut t = vec![Complex64::new(0.0, 0.0); data.len()];
        transpose::transpose(&data, &mut t, ny, nx);
        let inv_x = &self.inv_x;
        exec::for_each_chunk_mut(&mut t, nx * ROWS_PER_TASK, |_, rows| inv_x.process(rows));
        t
    }

    /// Unnormalised forward transform of y-major samples back to storage order.
    pub(crate) fn forward_from_transposed(&self, mut t: Vec<Complex64>) -> Vec<Complex64> {
        let (nx, ny) = (self.lattice.nx(), self.lattice.ny());
        let fwd_x = &self.fwd_x;
        exec::for_each_chunk_mut(&mut t, nx * ROWS_PER_TASK, |_, rows| fwd_x.process(rows));
        let mut data = vec![Complex64::new(0.0, 0.0); t.len()];
        transpose::transpose(&t, &mut data, nx, ny);
        let fwd_y = &self.fwd_y;
        exec::for_each_chunk_mut(&mut data, ny * ROWS_PER_TASK, |_, rows| fwd_y.process(rows));
        data
    }

    /// Splits the transform `Z` of `a + ib` (real `a`, `b`) into `(scale·â, scale·b̂)`
    /// using `â(k) = (Z(k) + conj Z(-k))/2`.
    pub(crate) fn unpack_pair(&self, z: &[Complex64], scale: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let (nx, ny) = (self.lattice.nx(), self.lattice.ny());
        let mut ca = vec![Complex64::new(0.0, 0.0); z.len()];
        let mut cb = ca.clone();
        for i in 0..nx {
            let mi = (nx - i) % nx;
            for j in 0..ny {
                let idx = i * ny + j;
                let a = z[idx];
                let mj = if j == 0 { 0 } else { ny - j };
                let m = z[mi * ny + mj].conj();
                ca[idx] = 0.5 * scale * (a + m);
                cb[idx] = Complex64::new(0.0, -0.5 * scale) * (a - m);
            }
        }
        (ca, cb)
    }

    /// Real part of the synthesis `Σ ĉ e^{iξ·x}` on the sample grid.
    pub fn to_physical(&self, field: &SpectralField) -> Vec<f64> {
        let mut buf = field.coeffs().to_vec();
        self.inverse_in_place(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }

    /// Two Hermitian spectra synthesised with a single complex transform.
    pub fn to_physical_pair(&self, a: &SpectralField, b: &SpectralField) -> (Vec<f64>, Vec<f64>) {
        let i = Complex64::i();
        let mut buf: Vec<Complex64> = a
            .coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| x + i * y)
            .collect();
        self.inverse_in_place(&mut buf);
        (
            buf.iter().map(|z| z.re).collect(),
            buf.iter().map(|z| z.im).collect(),
        )
    }

    pub fn from_physical(&self, values: &[f64]) -> SpectralField {
        assert_eq!(values.len(), self.lattice.len());
        let scale = 1.0 / self.lattice.len() as f64;
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward_in_place(&mut buf);
        buf.iter_mut().for_each(|z| *z *= scale);
        SpectralField::from_coeffs_unchecked(self.lattice, buf)
    }

    /// Analyses two real arrays with one complex transform.
    pub fn from_physical_pair(&self, a: &[f64], b: &[f64]) -> (SpectralField, SpectralField) {
        let lat = self.lattice;
        assert_eq!(a.len(), lat.len());
        assert_eq!(b.len(), lat.len());
        let scale = 1.0 / lat.len() as f64;
        let mut buf: Vec<Complex64> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| Complex64::new(x, y))
            .collect();
        self.forward_in_place(&mut buf);
        let (ca, cb) = self.unpack_pair(&buf, scale);
        (
            SpectralField::from_coeffs_unchecked(lat, ca),
            SpectralField::from_coeffs_unchecked(lat, cb),
        )
    }
}
