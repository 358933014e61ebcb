use crate::error::{Error, Result};

/// Damping rate `alpha` and Brunt–Väisälä frequency `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    alpha: f64,
    brunt_n: f64,
}

impl PhysParams {
    /// Both rates must be finite and strictly positive.
    pub fn new(alpha: f64, brunt_n: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::param("alpha", format!("must be > 0, got {alpha}")));
        }
        Self::check_n(brunt_n)?;
        Ok(PhysParams { alpha, brunt_n })
    }

    /// The undamped system (`alpha = 0`), used for conservation checks.
    pub fn undamped(brunt_n: f64) -> Result<Self> {
        Self::check_n(brunt_n)?;
        Ok(PhysParams {
            alpha: 0.0,
            brunt_n,
        })
    }

    fn check_n(brunt_n: f64) -> Result<()> {
        if !(brunt_n.is_finite() && brunt_n > 0.0) {
            return Err(Error::param(
                "brunt_n",
                format!("must be > 0, got {brunt_n}"),
            ));
        }
        Ok(())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn brunt_n(&self) -> f64 {
        self.brunt_n
    }

    /// `alpha / (2N)`: below this |mu| the eigenvalues are real and distinct.
    pub fn slow_threshold(&self) -> f64 {
        self.alpha / (2.0 * self.brunt_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_rates() {
        assert!(PhysParams::new(0.0, 1.0).is_err());
        assert!(PhysParams::new(-1.0, 1.0).is_err());
        assert!(PhysParams::new(1.0, 0.0).is_err());
        assert!(PhysParams::new(f64::NAN, 1.0).is_err());
        assert!(PhysParams::undamped(-2.0).is_err());
        assert_eq!(PhysParams::undamped(2.0).unwrap().alpha(), 0.0);
    }
}
