use num_complex::Complex64;

use super::rhs::{Tendency, Workspace};
use super::{Formulation, SolverConfig, State};
use crate::asymptotics::NormSeries;
use crate::error::{Error, Result};
use crate::exec;
use crate::spectral::{scaled_vorticity, Lattice, PhysParams, SpectralField};

/// Largest admitted `dt·max|u|·max|ξ|`.
const CFL_LIMIT: f64 = 0.5;

/// Quantities recorded by [`Solver::run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesLabel {
    /// `‖b‖_{H^{σ+1}}`
    B,
    /// `‖ω‖_{H^σ}`
    Omega,
    /// `‖∂_x b‖_{H^σ}`
    DxB,
    /// `‖∂_x ω‖_{H^{σ-1}}`
    DxOmega,
    /// `‖Ω‖_{H^σ}`
    BigOmega,
    /// `‖b‖²_{L²} + ‖Ω‖²_{L²}`
    Energy,
    /// `|E(t) - E(0) + ∫2α‖Ω‖²|`
    EnergyDefect,
    /// Running max over `τ ≥ 1` of
    /// `τ^{1/4}‖b‖_{H^σ} + τ^{3/4}‖Ω‖_{H^σ} + τ^{3/4}‖∂_x b‖_{H^{σ-1}} + τ^{5/4}‖∂_xΩ‖_{H^{σ-1}}`.
    MSigma,
    /// `‖∇·u‖_{L²}` of the reconstructed velocity.
    DivU,
}

impl SeriesLabel {
    pub const ALL: [SeriesLabel; 9] = [
        SeriesLabel::B,
        SeriesLabel::Omega,
        SeriesLabel::DxB,
        SeriesLabel::DxOmega,
        SeriesLabel::BigOmega,
        SeriesLabel::Energy,
        SeriesLabel::EnergyDefect,
        SeriesLabel::MSigma,
        SeriesLabel::DivU,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SeriesLabel::B => "b",
            SeriesLabel::Omega => "omega",
            SeriesLabel::DxB => "dx_b",
            SeriesLabel::DxOmega => "dx_omega",
            SeriesLabel::BigOmega => "Omega",
            SeriesLabel::Energy => "energy",
            SeriesLabel::EnergyDefect => "energy_defect",
            SeriesLabel::MSigma => "M_sigma",
            SeriesLabel::DivU => "div_u",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub series: Vec<NormSeries>,
    pub final_state: State,
}

impl RunOutput {
    pub fn get(&self, label: SeriesLabel) -> &NormSeries {
        self.series
            .iter()
            .find(|s| s.label() == label.as_str())
            .expect("every label is recorded")
    }
}

/// Series recorded up to the end of the run or up to a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialRun {
    pub series: Vec<NormSeries>,
    pub outcome: Result<State>,
}

/// Unknowns in the variables of the chosen formulation.
#[derive(Clone)]
struct Working {
    b: Vec<Complex64>,
    x: Vec<Complex64>,
}

/// RK4 integrator bound to one lattice, parameter set and configuration.
pub struct Solver {
    params: PhysParams,
    config: SolverConfig,
    ws: Workspace,
    max_xi: f64,
}

impl Solver {
    pub fn new(lattice: Lattice, params: PhysParams, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let ws = Workspace::new(lattice);
        let max_xi = ws.max_wavenumber(config.dealias);
        Ok(Solver {
            params,
            config,
            ws,
            max_xi,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    fn check(&self, state: &State) -> Result<()> {
        if state.lattice() != self.ws.lattice() {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    fn to_working(&self, state: &State) -> Working {
        let x = match self.config.formulation {
            Formulation::Vorticity => state.omega.coeffs().to_vec(),
            Formulation::Diagonalized => {
                self.ws.to_big_omega(state.omega.coeffs(), self.params.brunt_n())
            }
        };
        Working {
            b: state.b.coeffs().to_vec(),
            x,
        }
    }

    fn to_state(&self, w: &Working, time: f64) -> State {
        let lat = self.ws.lattice();
        let omega = match self.config.formulation {
            Formulation::Vorticity => w.x.clone(),
            Formulation::Diagonalized => self.ws.to_omega(&w.x, self.params.brunt_n()),
        };
        State {
            b: SpectralField::from_coeffs_unchecked(lat, w.b.clone()),
            omega: SpectralField::from_coeffs_unchecked(lat, omega),
            time,
        }
    }

    fn rhs(&self, w: &Working) -> Tendency {
        let c = &self.config;
        match c.formulation {
            Formulation::Vorticity => self.ws.vorticity(&w.b, &w.x, &self.params, c.nonlinear, c.dealias),
            Formulation::Diagonalized => {
                self.ws.diagonalized(&w.b, &w.x, &self.params, c.nonlinear, c.dealias)
            }
        }
    }

    /// `base + h·k`
    fn shifted(base: &Working, k: &Tendency, h: f64) -> Working {
        let add = |a: &[Complex64], d: &[Complex64]| -> Vec<Complex64> {
            exec::map_range(a.len(), |i| a[i] + d[i] * h)
        };
        Working {
            b: add(&base.b, &k.db),
            x: add(&base.x, &k.dx),
        }
    }

    fn rk4(&self, y: &Working, dt: f64) -> Result<Working> {
        let k1 = self.rhs(y);
        let cfl = dt * k1.max_speed * self.max_xi;
        if cfl > CFL_LIMIT {
            return Err(Error::StepSize { cfl });
        }
        let k2 = self.rhs(&Self::shifted(y, &k1, 0.5 * dt));
        let k3 = self.rhs(&Self::shifted(y, &k2, 0.5 * dt));
        let k4 = self.rhs(&Self::shifted(y, &k3, dt));
        let comb = |a: &[Complex64], f: &dyn Fn(&Tendency) -> &[Complex64]| -> Vec<Complex64> {
            let (d1, d2, d3, d4) = (f(&k1), f(&k2), f(&k3), f(&k4));
            exec::map_range(a.len(), |i| {
                a[i] + (d1[i] + 2.0 * d2[i] + 2.0 * d3[i] + d4[i]) * (dt / 6.0)
            })
        };
        let mut out = Working {
            b: comb(&y.b, &|k| &k.db),
            x: comb(&y.x, &|k| &k.dx),
        };
        out.b[0] = Complex64::new(0.0, 0.0);
        out.x[0] = Complex64::new(0.0, 0.0);
        Ok(out)
    }

    fn finite(w: &Working) -> bool {
        w.b.iter()
            .chain(&w.x)
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Advances by `dt` with classical RK4.
    pub fn step(&self, state: &State) -> Result<State> {
        self.step_by(state, self.config.dt)
    }

    fn step_by(&self, state: &State, dt: f64) -> Result<State> {
        self.check(state)?;
        let y = self.rk4(&self.to_working(state), dt)?;
        if !Self::finite(&y) {
            return Err(Error::BlowUp {
                last_healthy_time: state.time,
            });
        }
        Ok(self.to_state(&y, state.time + dt))
    }

    /// `‖Ω‖²_{L²}` of working variables.
    fn big_omega_sq(&self, w: &Working) -> f64 {
        let area = self.ws.lattice().area();
        match self.config.formulation {
            Formulation::Vorticity => {
                let n = self.params.brunt_n();
                area * n * n * self.ws.inverse_sq_sum(&w.x)
            }
            Formulation::Diagonalized => area * w.x.iter().map(|z| z.norm_sqr()).sum::<f64>(),
        }
    }

    fn b_sq(&self, w: &Working) -> f64 {
        self.ws.lattice().area() * w.b.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    /// Integrates to `t_end`, recording samples every `output_every` steps
    /// and at the final time. The last step is shortened to land on `t_end`.
    /// On failure the samples recorded so far are returned with the error.
    pub fn run_partial(&self, ic: &State) -> PartialRun {
        let mut rec = Recorder::new(self.config.sigma);
        let outcome = self.integrate(ic, &mut rec);
        PartialRun {
            series: rec.finish(),
            outcome,
        }
    }

    pub fn run(&self, ic: &State) -> Result<RunOutput> {
        let p = self.run_partial(ic);
        Ok(RunOutput {
            final_state: p.outcome?,
            series: p.series,
        })
    }

    fn integrate(&self, ic: &State, rec: &mut Recorder) -> Result<State> {
        self.check(ic)?;
        let dt = self.config.dt;
        let t0 = ic.time;
        let span = self.config.t_end - t0;
        if span < 0.0 {
            return Err(Error::param("t_end", "must not precede the initial time"));
        }
        let steps = (span / dt * (1.0 - 1e-12)).ceil() as usize;
        let alpha = self.params.alpha();

        let mut y = self.to_working(ic);
        let e0 = self.b_sq(&y) + self.big_omega_sq(&y);
        let mut diss_prev = 2.0 * alpha * self.big_omega_sq(&y);
        let mut dissipated = 0.0;
        let mut time = t0;
        rec.sample(self, &self.to_state(&y, time), e0, 0.0)?;
        for i in 1..=steps {
            let t_next = if i == steps { self.config.t_end } else { t0 + i as f64 * dt };
            let next = self.rk4(&y, t_next - time)?;
            if !Self::finite(&next) {
                return Err(Error::BlowUp {
                    last_healthy_time: time,
                });
            }
            let diss = 2.0 * alpha * self.big_omega_sq(&next);
            dissipated += 0.5 * (t_next - time) * (diss_prev + diss);
            diss_prev = diss;
            y = next;
            time = t_next;
            if i % self.config.output_every == 0 || i == steps {
                let e = self.b_sq(&y) + self.big_omega_sq(&y);
                let defect = (e - e0 + dissipated).abs();
                rec.sample(self, &self.to_state(&y, time), e, defect)?;
            }
        }
        Ok(self.to_state(&y, time))
    }
}

struct Recorder {
    sigma: f64,
    times: Vec<f64>,
    values: Vec<[f64; 9]>,
    m_times: Vec<f64>,
    m_values: Vec<f64>,
    m_running: f64,
}

impl Recorder {
    fn new(sigma: f64) -> Self {
        Recorder {
            sigma,
            times: Vec::new(),
            values: Vec::new(),
            m_times: Vec::new(),
            m_values: Vec::new(),
            m_running: 0.0,
        }
    }

    fn sample(&mut self, solver: &Solver, state: &State, energy: f64, defect: f64) -> Result<()> {
        let s = self.sigma;
        let dx2 = |xi: [f64; 2]| xi[0] * xi[0];
        let big = scaled_vorticity(&state.omega, &solver.params)?;
        let (u, w) = crate::spectral::vorticity_to_velocity(&state.omega)?;
        let lat = state.lattice();
        let div: Vec<Complex64> = (0..lat.len())
            .map(|i| {
                let xi = lat.xi(i);
                Complex64::new(0.0, xi[0]) * u.coeffs()[i] + Complex64::new(0.0, xi[1]) * w.coeffs()[i]
            })
            .collect();
        let div = SpectralField::from_coeffs_unchecked(lat, div).l2_norm();

        let row = [
            state.b.sobolev_norm(s + 1.0, false)?,
            state.omega.sobolev_norm(s, false)?,
            state.b.weighted_norm(s, false, dx2)?,
            state.omega.weighted_norm(s - 1.0, false, dx2)?,
            big.sobolev_norm(s, false)?,
            energy,
            defect,
            f64::NAN,
            div,
        ];
        if state.time >= 1.0 {
            let tau = state.time;
            let m = tau.powf(0.25) * state.b.sobolev_norm(s, false)?
                + tau.powf(0.75) * big.sobolev_norm(s, false)?
                + tau.powf(0.75) * state.b.weighted_norm(s - 1.0, false, dx2)?
                + tau.powf(1.25) * big.weighted_norm(s - 1.0, false, dx2)?;
            self.m_running = self.m_running.max(m);
            self.m_times.push(tau);
            self.m_values.push(self.m_running);
        }
        self.times.push(state.time);
        self.values.push(row);
        Ok(())
    }

    fn finish(self) -> Vec<NormSeries> {
        SeriesLabel::ALL
            .iter()
            .enumerate()
            .map(|(j, label)| {
                let (t, v) = if *label == SeriesLabel::MSigma {
                    (self.m_times.clone(), self.m_values.clone())
                } else {
                    (self.times.clone(), self.values.iter().map(|r| r[j]).collect())
                };
                NormSeries::new(label.as_str(), t, v).expect("recorded samples are valid")
            })
            .collect()
    }
}

/// One RK4 step of size `config.dt`.
pub fn step(state: &State, params: &PhysParams, config: &SolverConfig) -> Result<State> {
    Solver::new(state.lattice(), *params, *config)?.step(state)
}

pub fn run(ic: &State, params: &PhysParams, config: &SolverConfig) -> Result<RunOutput> {
    Solver::new(ic.lattice(), *params, *config)?.run(ic)
}

/// `(E, 2α‖Ω‖²)` with `E = ‖b‖²_{L²} + ‖Ω‖²_{L²}`.
pub fn energy(state: &State, params: &PhysParams) -> Result<(f64, f64)> {
    let big = scaled_vorticity(&state.omega, params)?;
    let om2 = big.l2_norm().powi(2);
    Ok((state.b.l2_norm().powi(2) + om2, 2.0 * params.alpha() * om2))
}
