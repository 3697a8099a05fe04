mod common;

use compliance_core::admittance::{steady_state, step, TABLE_DAMPING, TABLE_MASS};
use compliance_core::experiments::{induction_scenario, run_scenario, RunStatus};
use compliance_core::stiffness::{axis, presets, DEFAULT_DIAGONAL};
use compliance_core::{
    AdmittanceParams, AdmittanceState, Frame, Mat6, StiffnessMatrix, Vec3, Vec6, Wrench,
};
use proptest::prelude::*;

fn simulate(params: &AdmittanceParams, w: &Wrench, seconds: f64) -> AdmittanceState {
    let n = (seconds / params.ts).round() as usize;
    let mut s = AdmittanceState::default();
    for _ in 0..n {
        s = step(params, &s, w).unwrap();
    }
    s
}

fn spd(seed: [[f64; 6]; 6]) -> StiffnessMatrix {
    // A Aᵀ plus the default diagonal keeps every eigenvalue above 50
    let a = Mat6(seed);
    let mut m = Mat6::from_diagonal(&DEFAULT_DIAGONAL);
    for i in 0..6 {
        for j in 0..6 {
            m.0[i][j] += (0..6).map(|k| a.0[i][k] * a.0[j][k]).sum::<f64>();
        }
    }
    StiffnessMatrix::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn converges_to_compliance_mapping_spd(
        seed in prop::array::uniform6(prop::array::uniform6(-6.0f64..6.0)),
        f in prop::array::uniform6(-10.0f64..10.0),
    ) {
        let params = AdmittanceParams::table(spd(seed));
        let w = Wrench::from_stacked(&Vec6(f), Frame::PegTip);
        let s = simulate(&params, &w, 10.0);
        let target = steady_state(&params, &w).unwrap();
        prop_assert!((s.dx - target).norm() < 1e-6, "{:?} vs {:?}", s.dx, target);
    }

    #[test]
    fn converges_to_compliance_mapping_triangular(
        k_yz in -3000.0f64..3000.0,
        k_xry in -200.0f64..200.0,
        f in prop::array::uniform6(-10.0f64..10.0),
    ) {
        let mut m = Mat6::from_diagonal(&presets::PRESS_DIAGONAL);
        m.0[axis::Y][axis::Z] = k_yz;
        m.0[axis::X][axis::RY] = k_xry;
        let params = AdmittanceParams::table(StiffnessMatrix::new(m).unwrap());
        let w = Wrench::from_stacked(&Vec6(f), Frame::PegTip);
        let s = simulate(&params, &w, 10.0);
        let target = steady_state(&params, &w).unwrap();
        prop_assert!((s.dx - target).norm() < 1e-6);
    }

    #[test]
    fn free_response_energy_never_increases(
        seed in prop::array::uniform6(prop::array::uniform6(-6.0f64..6.0)),
        x0 in prop::array::uniform6(-0.01f64..0.01),
        v0 in prop::array::uniform6(-0.05f64..0.05),
    ) {
        let params = AdmittanceParams::table(spd(seed));
        let zero = Wrench::zero(Frame::PegTip);
        let mut s = AdmittanceState { dx: Vec6(x0), dx_dot: Vec6(v0), ..Default::default() };
        let mut e = s.energy(&params);
        for _ in 0..5000 {
            s = step(&params, &s, &zero).unwrap();
            let next = s.energy(&params);
            prop_assert!(next <= e + 1e-9, "energy rose {e} -> {next}");
            e = next;
        }
    }
}

fn axis_step_error(ts: f64, seconds: f64) -> f64 {
    let mut params = AdmittanceParams::table(StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL).unwrap());
    params.ts = ts;
    let f = Vec6([15.0, -5.0, 15.0, 0.5, -0.2, 0.1]);
    let w = Wrench::from_stacked(&f, Frame::PegTip);
    let mut s = AdmittanceState::default();
    let n = (seconds / ts).round() as usize;
    let mut worst: f64 = 0.0;
    for k in 1..=n {
        s = step(&params, &s, &w).unwrap();
        let t = k as f64 * ts;
        if k % (n / 200).max(1) == 0 {
            for i in 0..6 {
                let want = common::msd_step(
                    TABLE_MASS[i],
                    TABLE_DAMPING[i],
                    DEFAULT_DIAGONAL[i],
                    f[i],
                    t,
                );
                let scale = (f[i] / DEFAULT_DIAGONAL[i]).abs();
                worst = worst.max((s.dx[i] - want).abs() / scale);
            }
        }
    }
    worst
}

#[test]
fn scalar_axes_follow_analytic_step_response() {
    // first-order integrator: 1e-4 needs a fine step, the 1 ms step is within 1%
    assert!(axis_step_error(1e-5, 2.0) < 1e-4);
    assert!(axis_step_error(1e-3, 10.0) < 1e-2);
}

#[test]
fn press_force_gives_thirty_millimetres() {
    let params = AdmittanceParams::table(StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL).unwrap());
    let w = Wrench::new(Vec3::new(0.0, 0.0, 15.0), Vec3::ZERO, Frame::PegTip);
    let s = simulate(&params, &w, 10.0);
    assert!((s.dx[axis::Z] - 0.03).abs() < 1e-5);
}

#[test]
fn negative_eigenvalue_is_flagged_diverged() {
    let k = StiffnessMatrix::with_block(
        &presets::PRESS_DIAGONAL,
        axis::Y,
        axis::Z,
        [[500.0, 700.0], [700.0, 750.0]],
    )
    .unwrap();
    let mut cfg = induction_scenario(k, 0.0);
    cfg.decimation = 1;
    let (log, summary) = run_scenario(&cfg).unwrap();
    assert_eq!(summary.status, RunStatus::Diverged);
    assert!(summary.final_dx.is_finite());
    assert!(log
        .rows
        .iter()
        .all(|r| r.dx.is_finite() && r.wrench.is_finite()));
}
