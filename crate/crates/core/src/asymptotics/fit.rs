use crate::error::{Error, Result};

/// Labelled time series of a nonnegative quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSeries {
    label: String,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl NormSeries {
    pub fn new(label: impl Into<String>, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        let fail = |reason: String| Error::Series {
            label: label.clone(),
            reason,
        };
        if times.len() != values.len() {
            return Err(fail(format!("{} times but {} values", times.len(), values.len())));
        }
        if let Some(w) = times.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(fail(format!("times not strictly increasing at {}", w[1])));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(fail("non-finite time".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(fail(format!("value {v} is not finite and nonnegative")));
        }
        Ok(NormSeries {
            label,
            times,
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.times.last()?, *self.values.last()?))
    }
}

/// Least-squares line through `(log t, log value)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
}

pub const MIN_FIT_SAMPLES: usize = 8;

pub fn fit_decay(series: &NormSeries, window: (f64, f64)) -> Result<DecayFit> {
    let (lo, hi) = window;
    let slack = 1e-12 * hi.abs().max(lo.abs());
    let pts: Vec<(f64, f64)> = series
        .times
        .iter()
        .zip(&series.values)
        .filter(|(t, _)| **t >= lo - slack && **t <= hi + slack)
        .map(|(t, v)| (*t, *v))
        .collect();
    if pts.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "`{}` has {} samples in [{lo}, {hi}], need {MIN_FIT_SAMPLES}",
            series.label,
            pts.len()
        )));
    }
    if let Some((t, _)) = pts.iter().find(|p| !(p.0 > 0.0 && p.1 > 0.0)) {
        return Err(Error::Fit(format!(
            "`{}` has a nonpositive sample at t = {t}",
            series.label
        )));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("all samples at one time".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy <= f64::EPSILON * f64::EPSILON * n {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(DecayFit {
        exponent: slope,
        intercept,
        r_squared,
        window,
    })
}

/// `per_decade` points per factor 10, from `t_min` to `t_max` inclusive.
pub fn geometric_times(t_min: f64, t_max: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) || per_decade == 0 {
        return Err(Error::param("times", "need 0 < t_min < t_max and per_decade >= 1"));
    }
    let decades = (t_max / t_min).log10();
    let n = (decades * per_decade as f64).round().max(1.0) as usize;
    Ok((0..=n)
        .map(|i| {
            if i == n {
                t_max
            } else {
                t_min * 10f64.powf(decades * i as f64 / n as f64)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(f: impl Fn(f64) -> f64) -> NormSeries {
        let t = geometric_times(1.0, 100.0, 10).unwrap();
        let v = t.iter().map(|&x| f(x)).collect();
        NormSeries::new("s", t, v).unwrap()
    }

    #[test]
    fn pure_power_law() {
        let s = series(|t| 3.0 * t.powf(-0.75));
        let f = fit_decay(&s, (1.0, 100.0)).unwrap();
        assert!((f.exponent + 0.75).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_values() {
        let f = fit_decay(&series(|_| 2.0), (1.0, 100.0)).unwrap();
        assert!(f.exponent.abs() < 1e-14);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn too_few_samples() {
        let s = series(|t| t);
        assert!(matches!(fit_decay(&s, (1.0, 2.0)), Err(Error::Fit(_))));
    }

    #[test]
    fn nonpositive_values() {
        let s = series(|t| if t > 50.0 { 0.0 } else { 1.0 });
        assert!(fit_decay(&s, (1.0, 100.0)).is_err());
    }

    #[test]
    fn series_validation() {
        assert!(NormSeries::new("x", vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
        assert!(NormSeries::new("x", vec![1.0, 2.0], vec![0.0, -1.0]).is_err());
        assert!(NormSeries::new("x", vec![1.0], vec![]).is_err());
    }

    #[test]
    fn geometric_grid() {
        let t = geometric_times(100.0, 1e4, 16).unwrap();
        assert_eq!(t.len(), 33);
        assert_eq!(t[0], 100.0);
        assert_eq!(t[32], 1e4);
        assert!((t[16] - 1000.0).abs() < 1e-9);
    }
}
