//! Spectral laboratory for the two-dimensional Boussinesq system with
//! velocity damping.
//!
//! The crate is organised in four layers:
//!
//! * [`spectral`] periodic lattices, Fourier multipliers, Sobolev norms and
//!   closed-form Fourier-side profiles.
//! * [`linear`] the exact per-frequency Green kernel of the linearised system,
//!   its small-angle expansions, lattice evolution and polar quadrature of the
//!   decaying norms on the whole plane.
//! * [`nonlinear`] a dealiased pseudo-spectral RK4 integrator for the full
//!   system in vorticity form and in the diagonalised `(b, Ω)` form.
//! * [`asymptotics`] numerical checks of the auxiliary integral and norm
//!   inequalities plus log-log decay fitting.
//!
//! Per-mode kernels and quadrature node evaluation run on rayon when the
//! `parallel` feature is enabled (the default). Every reduction is summed
//! sequentially in a fixed order, so results do not depend on the feature.

pub mod asymptotics;
mod error;
mod exec;
pub mod linear;
pub mod mat2;
pub mod nonlinear;
pub mod quad;
pub mod spectral;

pub use error::{Error, Result};
pub use mat2::Mat2;
pub use spectral::{AnalyticProfile, Lattice, PhysParams, SpectralField};

pub use num_complex::Complex64;
