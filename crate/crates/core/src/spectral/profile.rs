use crate::error::{Error, Result};

/// Closed-form Fourier-side datum `ĝ(ξ)`, evaluable at any frequency.
///
/// These stand in for `W^{m,1}` data: their radial decay is known exactly, so
/// the envelope `|ĝ(ξ)| ≤ C(1+|ξ|)^{-m}` can be computed from the parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticProfile {
    /// `A·exp(-|ξ|²/w²)`
    Gaussian { amplitude: f64, width: f64 },
    /// `A·exp(-(|ξ| - R)²/w²)`
    RingGaussian {
        amplitude: f64,
        width: f64,
        radius: f64,
    },
    /// `A·|ξ|^p·exp(-|ξ|²/w²)`
    PolyGaussian {
        amplitude: f64,
        width: f64,
        power: f64,
    },
    /// `A·(1+|ξ|)^{-p}`, only algebraically decaying.
    Algebraic { amplitude: f64, power: f64 },
    Zero,
}

impl AnalyticProfile {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        AnalyticProfile::Gaussian { amplitude, width }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("must be > 0, got {v}")))
            }
        };
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::param(name, "must be finite"))
            }
        };
        match *self {
            AnalyticProfile::Gaussian { amplitude, width } => {
                finite("amplitude", amplitude)?;
                positive("width", width)
            }
            AnalyticProfile::RingGaussian {
                amplitude,
                width,
                radius,
            } => {
                finite("amplitude", amplitude)?;
                positive("width", width)?;
                if !(radius.is_finite() && radius >= 0.0) {
                    return Err(Error::param("radius", "must be >= 0"));
                }
                Ok(())
            }
            AnalyticProfile::PolyGaussian {
                amplitude,
                width,
                power,
            } => {
                finite("amplitude", amplitude)?;
                positive("width", width)?;
                if !(power.is_finite() && power >= 0.0) {
                    return Err(Error::param("power", "must be >= 0"));
                }
                Ok(())
            }
            AnalyticProfile::Algebraic { amplitude, power } => {
                finite("amplitude", amplitude)?;
                positive("power", power)
            }
            AnalyticProfile::Zero => Ok(()),
        }
    }

    /// Value as a function of the radius `|ξ|` (all families are radial).
    pub fn radial(&self, rho: f64) -> f64 {
        match *self {
            AnalyticProfile::Gaussian { amplitude, width } => {
                amplitude * (-(rho * rho) / (width * width)).exp()
            }
            AnalyticProfile::RingGaussian {
                amplitude,
                width,
                radius,
            } => {
                let d = rho - radius;
                amplitude * (-(d * d) / (width * width)).exp()
            }
            AnalyticProfile::PolyGaussian {
                amplitude,
                width,
                power,
            } => {
                if rho == 0.0 {
                    return if power == 0.0 { amplitude } else { 0.0 };
                }
                amplitude * rho.powf(power) * (-(rho * rho) / (width * width)).exp()
            }
            AnalyticProfile::Algebraic { amplitude, power } => amplitude * (1.0 + rho).powf(-power),
            AnalyticProfile::Zero => 0.0,
        }
    }

    pub fn eval(&self, xi: [f64; 2]) -> f64 {
        self.radial(xi[0].hypot(xi[1]))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AnalyticProfile::Zero) || self.amplitude() == 0.0
    }

    fn amplitude(&self) -> f64 {
        match *self {
            AnalyticProfile::Gaussian { amplitude, .. }
            | AnalyticProfile::RingGaussian { amplitude, .. }
            | AnalyticProfile::PolyGaussian { amplitude, .. }
            | AnalyticProfile::Algebraic { amplitude, .. } => amplitude,
            AnalyticProfile::Zero => 0.0,
        }
    }

    /// Radius beyond which `|ĝ|` is non-increasing.
    pub fn peak_radius(&self) -> f64 {
        match *self {
            AnalyticProfile::RingGaussian { radius, .. } => radius,
            AnalyticProfile::PolyGaussian { width, power, .. } => width * (0.5 * power).sqrt(),
            _ => 0.0,
        }
    }

    /// `sup_{|ξ| ≥ rho} |ĝ(ξ)|`.
    pub fn tail_bound(&self, rho: f64) -> f64 {
        self.radial(rho.max(self.peak_radius())).abs()
    }

    /// Whether the decay is faster than any power of `|ξ|`.
    pub fn is_super_algebraic(&self) -> bool {
        !matches!(self, AnalyticProfile::Algebraic { .. })
    }

    /// Exact decay power `p` for algebraic profiles.
    pub fn algebraic_power(&self) -> Option<f64> {
        match *self {
            AnalyticProfile::Algebraic { power, .. } => Some(power),
            _ => None,
        }
    }

    /// Constant `C` with `|ĝ(ξ)| ≤ C(1+|ξ|)^{-m}`, or `None` when no finite
    /// constant exists.
    pub fn envelope_constant(&self, m: f64) -> Option<f64> {
        match *self {
            AnalyticProfile::Zero => Some(0.0),
            AnalyticProfile::Algebraic { amplitude, power } => {
                (m <= power).then_some(amplitude.abs())
            }
            AnalyticProfile::Gaussian { amplitude, width } => {
                // maximiser of (1+ρ)^m e^{-ρ²/w²}
                let rho = 0.5 * (-1.0 + (1.0 + 2.0 * m * width * width).sqrt());
                Some(amplitude.abs() * (1.0 + rho).powf(m) * (-(rho * rho) / (width * width)).exp())
            }
            _ => {
                // log-concave tails: scan past the peak until the product decays
                let w = match *self {
                    AnalyticProfile::RingGaussian { width, .. }
                    | AnalyticProfile::PolyGaussian { width, .. } => width,
                    _ => unreachable!(),
                };
                let end = self.peak_radius() + w * (8.0 + m.max(1.0).sqrt() * 4.0) + m * w;
                let steps = 20_000;
                let best = (0..=steps)
                    .map(|i| {
                        let rho = end * i as f64 / steps as f64;
                        self.radial(rho).abs() * (1.0 + rho).powf(m)
                    })
                    .fold(0.0, f64::max);
                Some(best * (1.0 + 1e-6))
            }
        }
    }
}
