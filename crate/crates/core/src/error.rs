use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("mode index ({k}, {l}) outside lattice {nx}x{ny}")]
    IndexOutOfRange { k: i64, l: i64, nx: usize, ny: usize },

    #[error("gauge violation: zero mode magnitude {magnitude:e} is not round-off")]
    GaugeViolation { magnitude: f64 },

    #[error("fields live on different lattices")]
    LatticeMismatch,

    #[error("mu = {mu} is outside the slow regime |mu| < {limit}")]
    OutOfRegime { mu: f64, limit: f64 },

    #[error("negative time t = {0}")]
    NegativeTime(f64),

    #[error("quadrature not resolved for {what}: estimate {estimate:e}")]
    Accuracy { what: String, estimate: f64 },

    #[error("step size too large: dt*max|u|*max|xi| = {cfl:.3} > 0.5")]
    StepSize { cfl: f64 },

    #[error("non-finite state; last healthy time {last_healthy_time}")]
    BlowUp { last_healthy_time: f64 },

    #[error("ratio undefined: {0}")]
    UndefinedRatio(&'static str),

    #[error("profile envelope diverges for m = {m}")]
    Envelope { m: f64 },

    #[error("decay fit failed: {0}")]
    Fit(String),

    #[error("invalid norm series `{label}`: {reason}")]
    Series { label: String, reason: String },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
