//! Numerical checks of the auxiliary integral and norm inequalities, and
//! power-law fitting of decay series.

mod envelope;
mod fit;
mod integrals;
mod ratios;

pub use envelope::fourier_decay_envelope;
pub use fit::{fit_decay, geometric_times, DecayFit, NormSeries};
pub use integrals::{angular_integral, angular_limit_constant, bhn_exponent, bhn_integral};
pub use ratios::{bilinear_ratio, embedding_defect, interpolation_ratio};
