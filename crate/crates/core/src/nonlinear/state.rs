use crate::error::{Error, Result};
use crate::spectral::{Lattice, SpectralField, GAUGE_TOLERANCE};

/// Hermitian defect accepted by [`State::new`], relative to the largest
/// coefficient.
const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Buoyancy and vorticity at a given time.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub b: SpectralField,
    pub omega: SpectralField,
    pub time: f64,
}

impl State {
    /// Validates the pair and clears round-off means.
    pub fn new(mut b: SpectralField, mut omega: SpectralField, time: f64) -> Result<Self> {
        b.check_same(&omega)?;
        if !time.is_finite() {
            return Err(Error::param("time", "must be finite"));
        }
        for f in [&mut b, &mut omega] {
            let m = f.zero_mode().norm();
            if m > GAUGE_TOLERANCE {
                return Err(Error::GaugeViolation { magnitude: m });
            }
            f.coeffs_mut()[0] = 0.0.into();
            if f.hermitian_defect() > HERMITIAN_TOLERANCE * f.max_abs().max(1.0) {
                return Err(Error::param("state", "fields must be Hermitian-symmetric"));
            }
        }
        Ok(State { b, omega, time })
    }

    pub fn zeros(lattice: Lattice) -> Self {
        State {
            b: SpectralField::zeros(lattice),
            omega: SpectralField::zeros(lattice),
            time: 0.0,
        }
    }

    pub fn lattice(&self) -> Lattice {
        self.b.lattice()
    }

    pub fn is_finite(&self) -> bool {
        self.b
            .coeffs()
            .iter()
            .chain(self.omega.coeffs())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Formulation {
    /// Unknowns `(b, ω)`.
    #[default]
    Vorticity,
    /// Unknowns `(b, Ω)`.
    Diagonalized,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    /// Apply the 2/3 rule after every product.
    pub dealias: bool,
    /// Steps between emitted samples.
    pub output_every: usize,
    pub formulation: Formulation,
    /// When false the quadratic terms are dropped and the solver integrates
    /// the linear system.
    pub nonlinear: bool,
    /// Sobolev index of the tracked norms.
    pub sigma: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            dt: 1e-3,
            t_end: 1.0,
            dealias: true,
            output_every: 1,
            formulation: Formulation::Vorticity,
            nonlinear: true,
            sigma: 1.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::param("dt", format!("must be > 0, got {}", self.dt)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(Error::param("t_end", format!("must be >= 0, got {}", self.t_end)));
        }
        if self.output_every == 0 {
            return Err(Error::param("output_every", "must be >= 1"));
        }
        if !self.sigma.is_finite() {
            return Err(Error::param("sigma", "must be finite"));
        }
        Ok(())
    }
}
