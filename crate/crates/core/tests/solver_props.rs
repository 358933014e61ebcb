mod common;

use boussinesq_core::linear::linear_evolve_lattice;
use boussinesq_core::nonlinear::{
    energy, nonlinear_rhs_diagonalized, nonlinear_rhs_vorticity, Formulation, SeriesLabel, Solver,
    SolverConfig, State,
};
use boussinesq_core::spectral::{scaled_vorticity, unscaled_vorticity};
use boussinesq_core::{Complex64, Lattice, PhysParams, SpectralField};
use proptest::prelude::*;

use common::random;

fn dealiased(mut f: SpectralField) -> SpectralField {
    f.coeffs_mut()[0] = Complex64::new(0.0, 0.0);
    f.dealias();
    f
}

fn state(lat: Lattice, amp: f64, k0: f64, seed: u64) -> State {
    let b = dealiased(random(lat, amp, k0, seed));
    let o = dealiased(random(lat, amp, k0, seed.wrapping_add(1)));
    State::new(b, o, 0.0).unwrap()
}

/// One linear step against the exact propagator.
fn linear_step_error(ic: &State, p: &PhysParams, dt: f64) -> f64 {
    let config = SolverConfig {
        dt,
        t_end: dt,
        nonlinear: false,
        ..Default::default()
    };
    let solver = Solver::new(ic.lattice(), *p, config).unwrap();
    let next = solver.step(ic).unwrap();
    let big = scaled_vorticity(&ic.omega, p).unwrap();
    let (b, big_t) = linear_evolve_lattice(&ic.b, &big, p, dt).unwrap();
    let omega = unscaled_vorticity(&big_t, p).unwrap();
    next.b
        .max_abs_diff(&b)
        .unwrap()
        .max(next.omega.max_abs_diff(&omega).unwrap())
}

#[test]
fn linear_step_is_fifth_order_locally() {
    let lat = Lattice::unit_torus(16).unwrap();
    let p = PhysParams::new(1.0, 1.0).unwrap();
    let ic = state(lat, 1.0, 2.0, 3);
    let errors: Vec<f64> = [0.08, 0.04, 0.02]
        .iter()
        .map(|&dt| linear_step_error(&ic, &p, dt))
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!(ratio > 28.0 && ratio < 36.0, "errors {errors:?}");
    }
}

#[test]
fn formulations_agree_along_a_run() {
    let lat = Lattice::unit_torus(32).unwrap();
    let p = PhysParams::new(0.7, 1.2).unwrap();
    let ic = state(lat, 0.05, 3.0, 8);
    let run = |formulation| {
        let config = SolverConfig {
            dt: 0.01,
            t_end: 1.0,
            output_every: 25,
            formulation,
            ..Default::default()
        };
        Solver::new(lat, p, config).unwrap().run(&ic).unwrap()
    };
    let v = run(Formulation::Vorticity);
    let d = run(Formulation::Diagonalized);
    let (sv, sd) = (&v.final_state, &d.final_state);
    assert!(sv.b.max_abs_diff(&sd.b).unwrap() < 1e-12);
    assert!(sv.omega.max_abs_diff(&sd.omega).unwrap() < 1e-12);
    assert_eq!(v.get(SeriesLabel::Energy).len(), 5);
}

#[test]
fn damped_energy_decreases() {
    let lat = Lattice::unit_torus(32).unwrap();
    let p = PhysParams::new(1.0, 1.0).unwrap();
    let ic = state(lat, 0.1, 3.0, 4);
    let run = |dt: f64| {
        let config = SolverConfig {
            dt,
            t_end: 2.0,
            output_every: 10,
            ..Default::default()
        };
        Solver::new(lat, p, config).unwrap().run(&ic).unwrap()
    };
    let out = run(0.02);
    let e = out.get(SeriesLabel::Energy).values();
    assert!(e.windows(2).all(|w| w[1] <= w[0]), "{e:?}");
    let (e_end, _) = energy(&out.final_state, &p).unwrap();
    assert_eq!(out.get(SeriesLabel::Energy).last().unwrap().1, e_end);

    // the defect is the trapezoid error of the dissipation integral
    let coarse = out.get(SeriesLabel::EnergyDefect).last().unwrap().1.abs();
    let fine = run(0.01).get(SeriesLabel::EnergyDefect).last().unwrap().1.abs();
    assert!(coarse < 1e-4 * e[0], "defect {coarse:e}");
    let ratio = coarse / fine;
    assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rhs_keeps_mean_and_reality(seed in any::<u64>(), amp in 1e-3f64..1.0) {
        let lat = Lattice::unit_torus(32).unwrap();
        let p = PhysParams::new(1.0, 2.0).unwrap();
        let s = state(lat, amp, 4.0, seed);
        let (db, dw) = nonlinear_rhs_vorticity(&s, &p).unwrap();
        let big = scaled_vorticity(&s.omega, &p).unwrap();
        let (db2, dbig) = nonlinear_rhs_diagonalized(&s.b, &big, &p).unwrap();
        for f in [&db, &dw, &db2, &dbig] {
            prop_assert_eq!(f.zero_mode(), Complex64::new(0.0, 0.0));
            prop_assert!(f.is_dealiased());
            prop_assert!(f.hermitian_defect() <= 1e-15 * (1.0 + f.max_abs()));
        }
    }

    #[test]
    fn runs_stay_divergence_free_and_mean_free(seed in any::<u64>()) {
        let lat = Lattice::unit_torus(32).unwrap();
        let p = PhysParams::new(1.0, 1.0).unwrap();
        let ic = state(lat, 0.2, 3.0, seed);
        let config = SolverConfig { dt: 0.02, t_end: 0.6, output_every: 5, ..Default::default() };
        let out = Solver::new(lat, p, config).unwrap().run(&ic).unwrap();
        let div = out.get(SeriesLabel::DivU).values();
        prop_assert!(div.iter().all(|d| *d <= 1e-12), "{div:?}");
        let fin = &out.final_state;
        prop_assert_eq!(fin.b.zero_mode(), Complex64::new(0.0, 0.0));
        prop_assert_eq!(fin.omega.zero_mode(), Complex64::new(0.0, 0.0));
        prop_assert!(fin.b.hermitian_defect() < 1e-14 && fin.omega.hermitian_defect() < 1e-14);
        prop_assert!((fin.time - 0.6).abs() < 1e-14);
    }
}
