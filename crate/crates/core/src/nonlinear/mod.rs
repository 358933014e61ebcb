//! Pseudo-spectral RK4 integration of the full nonlinear system on the torus.
//!
//! Two equivalent right-hand sides are provided: the vorticity form in
//! `(b, ω)` and the diagonalised form in `(b, Ω)` with `Ω = N(-Δ)^{-1/2}ω`,
//! whose quadratic part is written with commutators of `(-Δ)^{-1/2}`.

mod rhs;
mod solver;
mod state;

pub use rhs::{nonlinear_rhs_diagonalized, nonlinear_rhs_vorticity};
pub use solver::{energy, run, step, PartialRun, RunOutput, Solver, SeriesLabel};
pub use state::{Formulation, SolverConfig, State};
