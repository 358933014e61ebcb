use crate::error::{Error, Result};
use crate::spectral::{Fft2, Lattice, SpectralField};

/// `‖g‖_{H^s} / (‖g‖_{H^{s0}}^θ ‖g‖_{H^{s1}}^{1-θ})` with
/// `s = θs0 + (1-θ)s1`. Hölder on the Fourier side bounds it by 1.
pub fn interpolation_ratio(
    field: &SpectralField,
    s0: f64,
    s: f64,
    s1: f64,
    homogeneous: bool,
) -> Result<f64> {
    if !(s0 <= s && s <= s1) || ![s0, s, s1].iter().all(|v| v.is_finite()) {
        return Err(Error::param("s", format!("need s0 <= s <= s1, got ({s0}, {s}, {s1})")));
    }
    let theta = if s1 == s0 { 1.0 } else { (s1 - s) / (s1 - s0) };
    let n = field.sobolev_norm(s, homogeneous)?;
    let n0 = field.sobolev_norm(s0, homogeneous)?;
    let n1 = field.sobolev_norm(s1, homogeneous)?;
    let den = n0.powf(theta) * n1.powf(1.0 - theta);
    if den == 0.0 || !den.is_finite() {
        return Err(Error::UndefinedRatio("interpolation denominator vanishes"));
    }
    Ok(n / den)
}

/// `‖g‖²_{H^r} / (2^r(‖g‖²_{Ḣ^{-1}} + ‖g‖²_{Ḣ^r}))`, at most 1 for mean-zero
/// `g` since `(1+ρ²)^r ≤ 2^r max(ρ^{-2}, ρ^{2r})`.
pub fn embedding_defect(field: &SpectralField, r: f64) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::param("r", format!("must be >= 0, got {r}")));
    }
    let num = field.sobolev_norm(r, false)?.powi(2);
    let neg = field.sobolev_norm(-1.0, true)?.powi(2);
    let pos = field.sobolev_norm(r, true)?.powi(2);
    let den = 2f64.powf(r) * (neg + pos);
    if den == 0.0 {
        return Err(Error::UndefinedRatio("field is zero"));
    }
    Ok(num / den)
}

/// Copies the spectrum onto a lattice twice as fine in each direction,
/// splitting Nyquist coefficients between `±n/2`.
fn pad(field: &SpectralField) -> Result<SpectralField> {
    let lat = field.lattice();
    let big = Lattice::new(2 * lat.nx(), 2 * lat.ny(), lat.lx(), lat.ly())?;
    let mut out = SpectralField::zeros(big);
    let (hx, hy) = ((lat.nx() / 2) as i64, (lat.ny() / 2) as i64);
    for (idx, z) in field.coeffs().iter().enumerate() {
        let (k, l) = lat.mode(idx);
        let ks: &[i64] = if k == -hx { &[-hx, hx] } else { &[k] };
        let ls: &[i64] = if l == -hy { &[-hy, hy] } else { &[l] };
        let share = 1.0 / (ks.len() * ls.len()) as f64;
        for &kk in ks {
            for &ll in ls {
                let j = big.index_of(kk, ll)?;
                out.coeffs_mut()[j] += z * share;
            }
        }
    }
    Ok(out)
}

/// `‖D^s(fg)‖_{L²} / (‖f‖_{L^∞}‖D^s g‖_{L²} + ‖D^s f‖_{L²}‖g‖_{L^∞})` with
/// `D = (-Δ)^{1/2}`. The product is formed on a grid padded by 2 so it is
/// alias-free; `L^∞` norms are maxima over the padded samples.
pub fn bilinear_ratio(f: &SpectralField, g: &SpectralField, s: f64) -> Result<f64> {
    f.check_same(g)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::param("s", format!("must be > 0, got {s}")));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::UndefinedRatio("a factor is identically zero"));
    }
    let (pf, pg) = (pad(f)?, pad(g)?);
    let fft = Fft2::new(pf.lattice());
    let (vf, vg) = (fft.to_physical(&pf), fft.to_physical(&pg));
    let sup = |v: &[f64]| v.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    let prod: Vec<f64> = vf.iter().zip(&vg).map(|(a, b)| a * b).collect();
    let fg = fft.from_physical(&prod);
    let num = fg.sobolev_norm(s, true)?;
    let den = sup(&vf) * g.sobolev_norm(s, true)? + f.sobolev_norm(s, true)? * sup(&vg);
    if den == 0.0 {
        return Err(Error::UndefinedRatio("bilinear denominator vanishes"));
    }
    Ok(num / den)
}
