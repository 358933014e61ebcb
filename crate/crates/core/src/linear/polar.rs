//! Continuous-frequency quadrature of `‖Γ̂(t)·(b̂₀, Ω̂₀)‖` on the whole plane
//! in polar coordinates `ξ = ρ(cos θ, sin θ)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_time, exact_mode_propagator};
use crate::error::{Error, Result};
use crate::exec;
use crate::quad::{graded_breaks, GlRule};
use crate::spectral::{AnalyticProfile, PhysParams};

/// Which entry of `(b, Ω)` is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    B,
    Omega,
}

/// Optional derivative factor `ξ₁²` or `ξ₂²` in the integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    None,
    Dx,
    Dy,
}

/// `‖∂^w c(t)‖_{H^r}` (or `Ḣ^r` when `homogeneous`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec {
    pub component: Component,
    pub r: f64,
    pub weight: Weight,
    pub homogeneous: bool,
}

impl NormSpec {
    pub fn new(component: Component, r: f64, weight: Weight) -> Self {
        NormSpec {
            component,
            r,
            weight,
            homogeneous: false,
        }
    }

    /// Total radial power `2r + 2·[weight]` carried by the integrand.
    fn radial_power(&self) -> f64 {
        2.0 * self.r.max(0.0) + if self.weight == Weight::None { 0.0 } else { 2.0 } + 1.0
    }

    fn factor(&self, rho: f64, theta: f64) -> f64 {
        let r2 = rho * rho;
        let sob = if self.homogeneous {
            if r2 == 0.0 {
                if self.r == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                r2.powf(self.r)
            }
        } else {
            (1.0 + r2).powf(self.r)
        };
        let w = match self.weight {
            Weight::None => 1.0,
            Weight::Dx => r2 * theta.cos().powi(2),
            Weight::Dy => r2 * theta.sin().powi(2),
        };
        sob * w * rho
    }
}

/// Tensor Gauss–Legendre grid: radial panels on `[0, R]` plus a mapped tail
/// panel on `[R, ∞)` (`ρ = R/s`), and angular panels on `[0, 2π]` graded
/// toward `θ = π/2, 3π/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarQuadGrid {
    radial_breaks: Vec<f64>,
    angular_breaks: Vec<f64>,
    radial_order: usize,
    angular_order: usize,
    radial: Vec<(f64, f64)>,
    angular: Vec<(f64, f64)>,
}

impl PolarQuadGrid {
    pub fn new(
        radial_breaks: Vec<f64>,
        angular_breaks: Vec<f64>,
        radial_order: usize,
        angular_order: usize,
    ) -> Result<Self> {
        let sorted = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        if radial_breaks.len() < 2 || !sorted(&radial_breaks) || radial_breaks[0] != 0.0 {
            return Err(Error::param("radial_breaks", "need increasing breaks from 0"));
        }
        if angular_breaks.len() < 2 || !sorted(&angular_breaks) {
            return Err(Error::param("angular_breaks", "need increasing breaks"));
        }
        let rrule = GlRule::new(radial_order);
        let arule = GlRule::new(angular_order);
        let mut radial: Vec<(f64, f64)> = radial_breaks
            .windows(2)
            .flat_map(|w| rrule.mapped(w[0], w[1]).collect::<Vec<_>>())
            .collect();
        let r_max = *radial_breaks.last().unwrap();
        radial.extend(rrule.mapped(0.0, 1.0).map(|(s, w)| (r_max / s, w * r_max / (s * s))));
        let angular = angular_breaks
            .windows(2)
            .flat_map(|w| arule.mapped(w[0], w[1]).collect::<Vec<_>>())
            .collect();
        Ok(PolarQuadGrid {
            radial_breaks,
            angular_breaks,
            radial_order,
            angular_order,
            radial,
            angular,
        })
    }

    /// Grid adapted to the profiles, the norm and the time horizon.
    ///
    /// `R` is the smallest radius (doubling from 1) at which the profile tail
    /// times the norm weight falls below `1e-8` of its peak; the finest
    /// angular panel is a quarter of the Laplace peak width `√(α/(N²t))`,
    /// capped by `π/(4√(t·N²/α²))`.
    pub fn for_problem(
        params: &PhysParams,
        profiles: &[AnalyticProfile],
        spec: &NormSpec,
        t: f64,
    ) -> Result<Self> {
        check_time(t)?;
        let power = spec.radial_power();
        let weight = |rho: f64| {
            let tail = profiles.iter().map(|p| p.tail_bound(rho)).fold(0.0, f64::max);
            (1.0 + rho * rho).powf(0.5 * power) * tail * tail
        };
        let peak = (0..=400)
            .map(|i| weight(i as f64 * 0.05))
            .fold(0.0, f64::max);
        let mut r_max = 1.0;
        while r_max < 1e6 && weight(r_max) > 1e-8 * peak.max(f64::MIN_POSITIVE) {
            r_max *= 2.0;
        }
        let panels = (4.0 * r_max).ceil().clamp(8.0, 256.0) as usize;
        let radial_breaks: Vec<f64> = (0..=panels)
            .map(|i| r_max * i as f64 / panels as f64)
            .collect();

        let (a, n) = (params.alpha(), params.brunt_n());
        let angular_breaks = if t > 0.0 && a > 0.0 {
            let width = (a / (n * n * t)).sqrt();
            let cap = PI / (4.0 * (t * n * n / (a * a)).sqrt());
            let finest = (0.25 * width).min(cap).min(0.1);
            let mut b = graded_breaks(0.0, 2.0 * PI, &[FRAC_PI_2, 3.0 * FRAC_PI_2], finest);
            b.extend([PI]);
            b.sort_by(f64::total_cmp);
            b.dedup();
            b
        } else {
            (0..=16).map(|i| 2.0 * PI * i as f64 / 16.0).collect()
        };
        PolarQuadGrid::new(radial_breaks, angular_breaks, 24, 16)
    }

    /// Same grid with every panel bisected.
    pub fn refined(&self) -> Self {
        let split = |b: &[f64]| {
            let mut v: Vec<f64> = b.windows(2).flat_map(|w| [w[0], 0.5 * (w[0] + w[1])]).collect();
            v.push(*b.last().unwrap());
            v
        };
        PolarQuadGrid::new(
            split(&self.radial_breaks),
            split(&self.angular_breaks),
            self.radial_order,
            self.angular_order,
        )
        .expect("bisection keeps breaks valid")
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial
    }

    pub fn angular_nodes(&self) -> &[(f64, f64)] {
        &self.angular
    }

    /// Largest gap between consecutive angular nodes within `window` of `θ₀`.
    pub fn max_angular_spacing_near(&self, theta0: f64, window: f64) -> f64 {
        let near: Vec<f64> = self
            .angular
            .iter()
            .map(|a| a.0)
            .filter(|th| (th - theta0).abs() <= window)
            .collect();
        near.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    fn integrate(
        &self,
        b0: &AnalyticProfile,
        omega0: &AnalyticProfile,
        params: &PhysParams,
        t: f64,
        spec: &NormSpec,
    ) -> Result<f64> {
        let per_angle: Vec<Result<f64>> = exec::map_range(self.angular.len(), |j| {
            let (theta, wt) = self.angular[j];
            let (c, s) = (theta.cos(), theta.sin());
            let g = exact_mode_propagator(params, c.clamp(-1.0, 1.0), t)?;
            let mut acc = 0.0;
            for &(rho, wr) in &self.radial {
                let xi = [rho * c, rho * s];
                let (vb, vo) = g.apply(
                    Complex64::new(b0.eval(xi), 0.0),
                    Complex64::new(omega0.eval(xi), 0.0),
                );
                let v = match spec.component {
                    Component::B => vb,
                    Component::Omega => vo,
                };
                let f = spec.factor(rho, theta) * v.norm_sqr();
                if f != 0.0 {
                    acc += wr * f;
                }
            }
            Ok(wt * acc)
        });
        let values = per_angle.into_iter().collect::<Result<Vec<f64>>>()?;
        Ok(exec::pairwise_sum(&values))
    }
}

/// Relative change under one bisection of every panel above which the
/// quadrature is rejected.
pub const REFINEMENT_TOLERANCE: f64 = 0.01;

/// `( ∫∫ weight(ρ,θ)·|[Γ̂(t,θ)(b̂₀, Ω̂₀)]_c|² ρ dρ dθ )^{1/2}` with the exact
/// kernel. The value from the bisected grid is returned; the difference to
/// the given grid is the a-posteriori error estimate.
pub fn linear_norm_quadrature(
    profiles: (&AnalyticProfile, &AnalyticProfile),
    params: &PhysParams,
    t: f64,
    spec: &NormSpec,
    grid: &PolarQuadGrid,
) -> Result<f64> {
    check_time(t)?;
    profiles.0.validate()?;
    profiles.1.validate()?;
    let coarse = grid.integrate(profiles.0, profiles.1, params, t, spec)?;
    let fine = grid.refined().integrate(profiles.0, profiles.1, params, t, spec)?;
    let estimate = if fine == 0.0 {
        if coarse == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        ((fine - coarse) / fine).abs()
    };
    if !(estimate <= REFINEMENT_TOLERANCE) || !fine.is_finite() {
        return Err(Error::Accuracy {
            what: format!("{spec:?} at t = {t}"),
            estimate,
        });
    }
    Ok(fine.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_at_time_zero() {
        let p = PhysParams::new(1.0, 1.0).unwrap();
        let b0 = AnalyticProfile::gaussian(1.0, 1.0);
        let o0 = AnalyticProfile::Zero;
        let spec = NormSpec::new(Component::B, 0.0, Weight::None);
        let grid = PolarQuadGrid::for_problem(&p, &[b0, o0], &spec, 0.0).unwrap();
        let v = linear_norm_quadrature((&b0, &o0), &p, 0.0, &spec, &grid).unwrap();
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-10);
    }

    #[test]
    fn spacing_resolves_the_peak() {
        let p = PhysParams::new(1.0, 1.0).unwrap();
        let b0 = AnalyticProfile::gaussian(1.0, 1.0);
        let spec = NormSpec::new(Component::B, 1.0, Weight::None);
        let t = 1e4;
        let grid = PolarQuadGrid::for_problem(&p, &[b0], &spec, t).unwrap();
        let bound = PI / (4.0 * t.sqrt());
        assert!(grid.max_angular_spacing_near(FRAC_PI_2, 3.0 / t.sqrt()) <= bound);
        assert!(grid.max_angular_spacing_near(3.0 * FRAC_PI_2, 3.0 / t.sqrt()) <= bound);
        assert!(grid.angular_nodes().iter().all(|n| n.1 > 0.0));
        assert!(grid.radial_nodes().iter().all(|n| n.1 > 0.0));
    }
}
