//! Test-side oracles. Nothing here calls the closed-form kernels of the crate.

#![allow(dead_code)]

use boussinesq_core::spectral::{random_field, RandomFieldSpec};
use boussinesq_core::{Complex64, Lattice, SpectralField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M2 = [[Complex64; 2]; 2];

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn lin(a: &M2, sa: f64, b: &M2, sb: f64) -> M2 {
    let mut out = *a;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][j] * sa + b[i][j] * sb;
        }
    }
    out
}

pub fn max_entry_diff(a: &M2, b: &M2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub const IDENTITY: M2 = [
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
    [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
];

/// `E(iμ) = [[0, -iNμ], [-iNμ, α]]`, written out directly.
pub fn generator(alpha: f64, n: f64, mu: f64) -> M2 {
    [[c(0.0, 0.0), c(0.0, -n * mu)], [c(0.0, -n * mu), c(alpha, 0.0)]]
}

/// RK4 amplification matrix of `Y' = -E·Y` for one step `h`.
fn rk4_map(e: &M2, h: f64) -> M2 {
    let k = lin(e, -1.0, e, 0.0);
    let k1 = k;
    let k2 = mul(&k, &lin(&IDENTITY, 1.0, &k1, 0.5 * h));
    let k3 = mul(&k, &lin(&IDENTITY, 1.0, &k2, 0.5 * h));
    let k4 = mul(&k, &lin(&IDENTITY, 1.0, &k3, h));
    let s = lin(&lin(&k1, 1.0, &k2, 2.0), 1.0, &lin(&k3, 2.0, &k4, 1.0), 1.0);
    lin(&IDENTITY, 1.0, &s, h / 6.0)
}

fn mat_pow(m: &M2, mut n: u64) -> M2 {
    let mut acc = IDENTITY;
    let mut base = *m;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        n >>= 1;
    }
    acc
}

/// RK4 for `dΓ/dt = -E(iμ)Γ`, `Γ(0) = I`; `t/h` must be an integer.
pub fn ode_propagator(alpha: f64, n: f64, mu: f64, t: f64, h: f64) -> M2 {
    let steps = (t / h).round();
    assert!((steps * h - t).abs() < 1e-9 * t.max(1.0), "t/h must be integral");
    mat_pow(&rk4_map(&generator(alpha, n, mu), h), steps as u64)
}

/// Step-doubled oracle `(16·Y_{h/2} - Y_h)/15`.
pub fn ode_oracle(alpha: f64, n: f64, mu: f64, t: f64, h: f64) -> M2 {
    let coarse = ode_propagator(alpha, n, mu, t, h);
    let fine = ode_propagator(alpha, n, mu, t, 0.5 * h);
    lin(&fine, 16.0 / 15.0, &coarse, -1.0 / 15.0)
}

/// Projector onto the eigenvalue of `E(iμ)` that vanishes at `μ = 0`, from a
/// direct eigen-decomposition: `(E - λ_big I)/(λ_small - λ_big)`.
pub fn slow_projector(alpha: f64, n: f64, mu: f64) -> M2 {
    let disc = (alpha * alpha - 4.0 * n * n * mu * mu).sqrt();
    let big = 0.5 * (alpha + disc);
    let small = 0.5 * (alpha - disc);
    let e = generator(alpha, n, mu);
    let shifted = lin(&e, 1.0, &IDENTITY, -big);
    lin(&shifted, 1.0 / (small - big), &IDENTITY, 0.0)
}

/// Composite Simpson rule with `n` (even) intervals.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `∫₀^{2π}|cos θ|^k e^{-t cos²θ} dθ` by symmetry `4∫₀^{π/2}` and Simpson in
/// `u = π/2 - θ` on a window of 40 peak widths (the rest is below `e^{-1600}`).
pub fn brute_angular(k: i32, t: f64) -> f64 {
    let f = |u: f64| {
        let s = u.sin();
        s.abs().powi(k) * (-t * s * s).exp()
    };
    let hi = if t > 0.0 { (40.0 / t.sqrt()).min(std::f64::consts::FRAC_PI_2) } else { std::f64::consts::FRAC_PI_2 };
    4.0 * simpson(f, 0.0, hi, 200_000)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random(lattice: Lattice, amplitude: f64, k0: f64, seed: u64) -> SpectralField {
    let spec = RandomFieldSpec {
        amplitude,
        k0,
        ..Default::default()
    };
    random_field(lattice, &spec, &mut rng(seed))
}

/// Physical samples by direct summation of the Fourier series.
pub fn synthesize(field: &SpectralField) -> Vec<f64> {
    let lat = field.lattice();
    (0..lat.len())
        .map(|p| {
            let (x, y) = lat.point(p);
            field
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    let xi = lat.xi(i);
                    (z * Complex64::from_polar(1.0, xi[0] * x + xi[1] * y)).re
                })
                .sum()
        })
        .collect()
}
