//! Experiment drivers. Each returns a [`Report`] holding every sampled
//! series, the decay fits and the pass/fail checks; module errors stop the
//! run and are kept in the report next to whatever was already computed.

use boussinesq_core::asymptotics::{
    angular_integral, angular_limit_constant, bhn_exponent, bhn_integral, fit_decay,
    geometric_times, DecayFit, NormSeries,
};
use boussinesq_core::linear::{
    exact_mode_propagator, linear_norm_quadrature, reference::step_doubled_propagator, Component,
    NormSpec, PolarQuadGrid, Weight,
};
use boussinesq_core::nonlinear::{SeriesLabel, Solver, SolverConfig, State};
use boussinesq_core::spectral::{random_field, RandomFieldSpec};
use boussinesq_core::{AnalyticProfile, Error, Lattice, PhysParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{ExperimentConfig, ExperimentKind};

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub label: String,
    pub fit: DecayFit,
}

/// One asserted tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `|value - expected| <= tolerance`.
    fn near(name: impl Into<String>, value: f64, expected: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            expected,
            tolerance,
            pass: (value - expected).abs() <= tolerance,
        }
    }

    /// `value <= tolerance`, for error measures.
    fn below(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            expected: 0.0,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: ExperimentKind,
    pub series: Vec<Series>,
    pub fits: Vec<Fit>,
    pub checks: Vec<Check>,
    /// Set when a module error cut the run short.
    pub error: Option<String>,
}

impl Report {
    fn new(kind: ExperimentKind) -> Self {
        Report {
            kind,
            series: Vec::new(),
            fits: Vec::new(),
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn is_partial(&self) -> bool {
        self.error.is_some()
    }

    pub fn passed(&self) -> bool {
        !self.is_partial() && self.checks.iter().all(|c| c.pass)
    }

    fn fail(&mut self, context: &str, err: Error) {
        self.error = Some(format!("{context}: {err}"));
    }

    fn fit(&mut self, label: &str, window: (f64, f64)) -> Result<DecayFit, Error> {
        let s = self
            .series
            .iter()
            .find(|s| s.label == label)
            .expect("series recorded before fitting");
        let fit = fit_decay(
            &NormSeries::new(label, s.times.clone(), s.values.clone())?,
            window,
        )?;
        self.fits.push(Fit {
            label: label.to_string(),
            fit,
        });
        Ok(fit)
    }
}

pub fn run_experiment(kind: ExperimentKind, config: &ExperimentConfig) -> Report {
    let mut report = Report::new(kind);
    let outcome = match kind {
        ExperimentKind::LinearDecay => linear_decay(config, &mut report),
        ExperimentKind::NonlinearRun => nonlinear_run(config, &mut report),
        ExperimentKind::LemmaChecks => lemma_checks(config, &mut report),
        ExperimentKind::PropagatorVerify => propagator_verify(config, &mut report),
    };
    if let Err((context, err)) = outcome {
        report.fail(&context, err);
    }
    report
}

type Step = Result<(), (String, Error)>;

fn ctx<T>(r: Result<T, Error>, context: impl FnOnce() -> String) -> Result<T, (String, Error)> {
    r.map_err(|e| (context(), e))
}

fn schedule(config: &ExperimentConfig) -> Result<Vec<f64>, (String, Error)> {
    let s = config.schedule;
    ctx(geometric_times(s.t_min, s.t_max, s.per_decade), || "schedule".into())
}

/// Predicted exponents for generic data in both components.
const LINEAR_CURVES: [(&str, Component, f64, Weight, f64); 6] = [
    ("H1_b", Component::B, 1.0, Weight::None, -0.25),
    ("H0_dx_b", Component::B, 0.0, Weight::Dx, -0.75),
    ("H0_dy_b", Component::B, 0.0, Weight::Dy, -0.25),
    ("H1_Omega", Component::Omega, 1.0, Weight::None, -0.75),
    ("H0_dx_Omega", Component::Omega, 0.0, Weight::Dx, -1.25),
    ("H0_dy_Omega", Component::Omega, 0.0, Weight::Dy, -0.75),
];

fn linear_decay(config: &ExperimentConfig, report: &mut Report) -> Step {
    let p = config.phys_params();
    let times = schedule(config)?;
    let window = (config.schedule.t_min, config.schedule.t_max);
    let tol = config.linear.tolerance;
    let b0 = config.linear.b0.to_profile();
    let o0 = config.linear.omega0.to_profile();

    let mut curves: Vec<(&str, (AnalyticProfile, AnalyticProfile), NormSpec, Option<f64>)> =
        LINEAR_CURVES
            .iter()
            .map(|&(label, c, r, w, rate)| {
                let generic = !b0.is_zero() && !o0.is_zero();
                (label, (b0, o0), NormSpec::new(c, r, w), generic.then_some(rate))
            })
            .collect();
    curves.push((
        "H1_b_from_Omega0",
        (AnalyticProfile::Zero, o0),
        NormSpec::new(Component::B, 1.0, Weight::None),
        (!o0.is_zero()).then_some(-0.75),
    ));

    for (label, (pb, po), spec, rate) in curves {
        let mut values = Vec::with_capacity(times.len());
        for &t in &times {
            let v = PolarQuadGrid::for_problem(&p, &[pb, po], &spec, t)
                .and_then(|grid| linear_norm_quadrature((&pb, &po), &p, t, &spec, &grid));
            values.push(ctx(v, || format!("{label} at t = {t}"))?);
        }
        report.series.push(Series {
            label: label.to_string(),
            times: times.clone(),
            values,
        });
        if let Some(rate) = rate {
            let fit = ctx(report.fit(label, window), || format!("fit of {label}"))?;
            report.checks.push(Check::near(format!("{label} exponent"), fit.exponent, rate, tol));
        }
    }
    Ok(())
}

fn nonlinear_run(config: &ExperimentConfig, report: &mut Report) -> Step {
    let p = config.phys_params();
    let nl = config.nonlinear;
    let lattice = ctx(Lattice::new(nl.grid, nl.grid, nl.length, nl.length), || "lattice".into())?;
    let ic = if nl.zero {
        State::zeros(lattice)
    } else {
        let spec = RandomFieldSpec {
            amplitude: nl.amplitude,
            k0: nl.k0,
            vanish_on_vertical_line: nl.vanish_on_vertical_line,
            ..Default::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let b = random_field(lattice, &spec, &mut rng);
        let omega = random_field(lattice, &spec, &mut rng);
        ctx(State::new(b, omega, 0.0), || "initial state".into())?
    };
    let solver_config = SolverConfig {
        dt: nl.dt,
        t_end: nl.t_end,
        dealias: nl.dealias,
        output_every: nl.output_every,
        formulation: nl.formulation.into(),
        nonlinear: true,
        sigma: nl.sigma,
    };
    let solver = ctx(Solver::new(lattice, p, solver_config), || "solver".into())?;
    let run = solver.run_partial(&ic);
    let get = |label: SeriesLabel| {
        run.series
            .iter()
            .find(|s| s.label() == label.as_str())
            .expect("every label is recorded")
    };
    for label in SeriesLabel::ALL {
        let s = get(label);
        report.series.push(Series {
            label: label.as_str().to_string(),
            times: s.times().to_vec(),
            values: s.values().to_vec(),
        });
    }
    ctx(run.outcome.clone().map(|_| ()), || "time stepping".into())?;

    let energy = get(SeriesLabel::Energy).values();
    let defect = get(SeriesLabel::EnergyDefect).values();
    let e0 = energy[0];
    let last_defect = defect.last().copied().unwrap_or(0.0).abs();
    let relative = if e0 > 0.0 { last_defect / e0 } else { last_defect };
    report
        .checks
        .push(Check::below("energy defect / E(0)", relative, nl.energy_tolerance));
    let div = get(SeriesLabel::DivU).values().iter().fold(0.0, |m: f64, v| m.max(*v));
    report.checks.push(Check::below("max div u", div, 1e-12));

    if nl.zero {
        return Ok(());
    }
    let window = (nl.fit_window[0], nl.fit_window[1]);
    let mut slopes = Vec::new();
    for label in [SeriesLabel::B, SeriesLabel::Omega, SeriesLabel::DxB, SeriesLabel::DxOmega] {
        let fit = ctx(report.fit(label.as_str(), window), || format!("fit of {}", label.as_str()))?;
        slopes.push(fit.exponent);
    }
    let [b, w, bx, wx] = [slopes[0], slopes[1], slopes[2], slopes[3]];
    let ordered = b < 0.0 && w < 0.0 && w < b && bx < b && wx < w;
    // margins: the largest of the five differences that must be negative
    let margin = [b, w, w - b, bx - b, wx - w].into_iter().fold(f64::MIN, f64::max);
    report.checks.push(Check {
        name: "decay ordering".into(),
        value: margin,
        expected: 0.0,
        tolerance: 0.0,
        pass: ordered,
    });
    Ok(())
}

fn lemma_checks(config: &ExperimentConfig, report: &mut Report) -> Step {
    let times = schedule(config)?;
    let window = (config.schedule.t_min, config.schedule.t_max);
    let lemma = &config.lemma;
    for &k in &lemma.ks {
        let label = format!("angular_k{k}");
        let mut values = Vec::with_capacity(times.len());
        for &t in &times {
            values.push(ctx(angular_integral(k, t), || format!("{label} at t = {t}"))?);
        }
        let t_max = *times.last().expect("schedule is non-empty");
        let scaled = values.last().copied().unwrap_or(0.0) * t_max.powf(0.5 * (k as f64 + 1.0));
        report.series.push(Series {
            label: label.clone(),
            times: times.clone(),
            values,
        });
        let fit = ctx(report.fit(&label, window), || format!("fit of {label}"))?;
        let rate = -0.5 * (1.0 + k as f64);
        report
            .checks
            .push(Check::near(format!("{label} exponent"), fit.exponent, rate, lemma.angular_tolerance));
        let limit = angular_limit_constant(k);
        report.checks.push(Check::below(
            format!("{label} limit constant (relative)"),
            (scaled / limit - 1.0).abs(),
            0.01,
        ));
    }
    for &[g, kappa] in &lemma.bhn_pairs {
        let label = format!("bhn_g{g}_k{kappa}");
        let mut values = Vec::with_capacity(times.len());
        for &t in &times {
            values.push(ctx(bhn_integral(g, kappa, t), || format!("{label} at t = {t}"))?);
        }
        report.series.push(Series {
            label: label.clone(),
            times: times.clone(),
            values,
        });
        let fit = ctx(report.fit(&label, window), || format!("fit of {label}"))?;
        report.checks.push(Check::near(
            format!("{label} exponent"),
            fit.exponent,
            -bhn_exponent(g, kappa),
            lemma.bhn_tolerance,
        ));
    }
    Ok(())
}

fn propagator_verify(config: &ExperimentConfig, report: &mut Report) -> Step {
    let q = &config.propagator;
    let mut worst: f64 = 0.0;
    for &alpha in &q.alphas {
        for &n in &q.brunt_ns {
            let p = ctx(PhysParams::new(alpha, n), || "propagator grid".into())?;
            let mut mus = q.mus.clone();
            let critical = alpha / (2.0 * n);
            if critical <= 1.0 && !mus.contains(&critical) {
                mus.push(critical);
            }
            for mu in mus {
                let label = format!("a{alpha}_n{n}_mu{mu}");
                let mut values = Vec::with_capacity(q.times.len());
                for &t in &q.times {
                    let exact = ctx(exact_mode_propagator(&p, mu, t), || format!("{label} at t = {t}"))?;
                    let oracle = step_doubled_propagator(&p, mu, t, q.step);
                    let err = exact.matrix.dist_max(&oracle);
                    worst = worst.max(err);
                    values.push(err);
                }
                report.series.push(Series {
                    label,
                    times: q.times.clone(),
                    values,
                });
            }
        }
    }
    report
        .checks
        .push(Check::below("max entry error vs RK4 reference", worst, q.tolerance));
    Ok(())
}
