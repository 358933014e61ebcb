//! Periodic lattices, Fourier multipliers and Sobolev norms.

mod fft;
mod field;
mod lattice;
mod multiplier;
mod params;
mod profile;
mod random;

pub use fft::Fft2;
pub use field::SpectralField;
pub use lattice::Lattice;
pub use multiplier::{
    apply_multiplier, riesz_ratio, scaled_vorticity, unscaled_vorticity, vorticity_to_velocity,
    Symbol, GAUGE_TOLERANCE,
};
pub use params::PhysParams;
pub use profile::AnalyticProfile;
pub use random::{random_field, RandomFieldSpec};
