use absim_core::actuators::rudder_servo;
use absim_core::control::{
    mpc_solve, pid_step, ControlState, Controller, ControllerConfig, MpcParams, Nomoto, PidGains, PidState,
};
use absim_core::geometry::wrap_pi;
use absim_core::sim::presets;
use proptest::prelude::*;

proptest! {
    #[test]
    fn pid_is_odd_in_the_error(
        errors in prop::collection::vec(-1.0f64..1.0, 1..30),
        kp in -5.0f64..5.0, ti_inv in -0.1f64..0.1, td in -50.0f64..50.0,
    ) {
        prop_assume!(kp != 0.0);
        let g = PidGains { kp, ti_inv, td, integral_limit: None };
        let lim = 0.6;
        let (mut a, mut b) = (PidState::default(), PidState::default());
        for e in errors {
            let (da, na) = pid_step(e, 0.0, &g, &a, lim);
            let (db, nb) = pid_step(-e, 0.0, &g, &b, lim);
            prop_assert_eq!(da, -db);
            prop_assert!(da.abs() <= lim);
            a = na;
            b = nb;
        }
    }

    #[test]
    fn pid_depends_only_on_the_wrapped_error(psi in -3.0f64..3.0, psi_d in -3.0f64..3.0, turns in -3i32..3) {
        let g = presets::default_pid_gains();
        let shifted = psi + turns as f64 * std::f64::consts::TAU;
        let (a, _) = pid_step(psi, psi_d, &g, &PidState::default(), 0.6);
        let (b, _) = pid_step(shifted, psi_d, &g, &PidState::default(), 0.6);
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn mpc_stays_in_bounds_and_descends(
        r in -0.05f64..0.05, psi in -3.0f64..3.0, psi_ref in -3.0f64..3.0,
        n in 1usize..25, rudder_gain in 0.0f64..1.0, delta_max in 0.1f64..0.7,
        warm in prop::collection::vec(-1.0f64..1.0, 0..25),
    ) {
        let p = MpcParams { n, rudder_gain, delta_max, ..presets::default_mpc_params() };
        let sol = mpc_solve(ControlState { r, psi }, ControlState { r: 0.0, psi: psi_ref }, &warm, &p).unwrap();
        prop_assert_eq!(sol.sequence.len(), n);
        prop_assert!(sol.sequence.iter().all(|d| d.abs() <= delta_max));
        prop_assert!(sol.cost_trace.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(sol.cost_trace.last(), Some(&sol.cost));
        prop_assert!(sol.iterations <= p.max_iter);
    }
}

#[test]
fn wrap_across_the_branch_cut() {
    let g = PidGains { kp: 1.0, ti_inv: 0.0, td: 0.0, integral_limit: None };
    let (d, _) = pid_step(3.1, -3.1, &g, &PidState::default(), 10.0);
    assert!((d.abs() - 0.0832).abs() < 1e-3, "{d}");
}

/// Heading step on the Nomoto plant, integrated finely between 0.5 s control
/// steps, with the default rudder servo in the loop.
fn step_response(cfg: ControllerConfig) -> Vec<f64> {
    let plant = Nomoto { k: presets::NOMOTO_K, t: presets::NOMOTO_T };
    let rudder = presets::default_rudder();
    let target = 30f64.to_radians();
    let mut ctl = Controller::new(&cfg);
    let mut s = ControlState::default();
    let mut delta = 0.0;
    let mut errors = Vec::new();
    for _ in 0..240 {
        let cmd = ctl.step(s, ControlState { r: 0.0, psi: target }, rudder.delta_max).unwrap();
        delta = rudder_servo(delta, cmd, 0.5, &rudder);
        for _ in 0..50 {
            s = plant.step(s, delta, 0.01);
        }
        errors.push(wrap_pi(s.psi - target).abs());
    }
    errors
}

#[test]
fn pid_settles_a_thirty_degree_step() {
    let e = step_response(ControllerConfig::Pid(presets::default_pid_gains()));
    assert!(e.last().unwrap().to_degrees() < 0.5, "final error {:.3}°", e.last().unwrap().to_degrees());
}

#[test]
fn mpc_settles_a_thirty_degree_step() {
    let e = step_response(ControllerConfig::Mpc(presets::default_mpc_params()));
    assert!(e.last().unwrap().to_degrees() < 0.5, "final error {:.3}°", e.last().unwrap().to_degrees());
}
