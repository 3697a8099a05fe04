use std::f64::consts::PI;

use compliance_core::contact::{
    contact_wrench, contact_wrench_with, mirror_xz, PegHoleGeometry, PegPose, Phase,
};
use compliance_core::matcore::{rotate, rotation_xyz};
use compliance_core::{Vec3, Vec6};
use proptest::prelude::*;

/// Static frictionless point-sampled reduction (bottom rim plus hole edge)
/// written directly from the model description, with `n` samples each.
fn rim_oracle(g: &PegHoleGeometry, pose: &PegPose, n: usize) -> (Vec3, Vec3) {
    let rot = rotation_xyz(&pose.orientation);
    let k = g.contact_stiffness / n as f64;
    let hole_r = g.r + g.c;
    let (mut f, mut tau) = (Vec3::ZERO, Vec3::ZERO);
    for i in 0..n {
        let th = 2.0 * PI * (i as f64 + 0.5) / n as f64;
        let q = pose.tip_position + rotate(&rot, &Vec3::new(g.r * th.cos(), g.r * th.sin(), 0.0));
        let (dx, dy) = (q.x() - g.hole_center.x(), q.y() - g.hole_center.y());
        let rho = dx.hypot(dy);
        if q.z() >= 0.0 || rho < hole_r {
            continue;
        }
        let depth = -q.z();
        let p = if depth <= rho - hole_r {
            Vec3::new(0.0, 0.0, k * depth)
        } else {
            Vec3::new(-dx / rho, -dy / rho, 0.0).scale(k * (rho - hole_r))
        };
        f += p;
        tau += (q - pose.tip_position).cross(&p);
    }
    let axis = rotate(&rot, &Vec3::new(0.0, 0.0, 1.0));
    for j in 0..n {
        let th = 2.0 * PI * (j as f64 + 0.5) / n as f64;
        let e = g.hole_center + Vec3::new(hole_r * th.cos(), hole_r * th.sin(), 0.0);
        let rel = e - pose.tip_position;
        let s = rel.dot(&axis);
        let radial = rel - axis.scale(s);
        let dist = radial.norm();
        if s <= 0.0 || s >= g.peg_length || dist >= g.r || g.r - dist >= s {
            continue;
        }
        let p = radial.scale(-k * (g.r - dist) / dist);
        f += p;
        tau += rel.cross(&p);
    }
    (f, tau)
}

fn pressed(offset: (f64, f64), tilt: (f64, f64), depth: f64) -> PegPose {
    let mut pose = PegPose::at(Vec3::new(offset.0, offset.1, -depth));
    pose.orientation = Vec3::new(tilt.0, tilt.1, 0.0);
    pose
}

proptest! {
    #[test]
    fn dense_oracle_agrees_with_default_sampling(
        d in 0.003f64..0.012,
        ang in 0.0f64..(2.0 * PI),
        tx in -0.002f64..0.002,
        ty in -0.002f64..0.002,
        depth in 5e-5f64..2e-4,
    ) {
        let g = PegHoleGeometry::peg_30mm();
        let pose = pressed((d * ang.cos(), d * ang.sin()), (tx, ty), depth);
        let res = contact_wrench(&g, &pose).unwrap();
        let (f, tau) = rim_oracle(&g, &pose, 4096);
        prop_assume!(f.norm() > 1.0);
        prop_assert!((res.wrench.f - f).norm() <= 0.02 * f.norm(), "{:?} vs {:?}", res.wrench.f, f);
        prop_assert!((res.wrench.tau - tau).norm() <= 0.02 * tau.norm().max(f.norm() * g.r), "{:?} vs {:?}", res.wrench.tau, tau);
    }

    #[test]
    fn mirror_reflects_wrench(
        x in -0.008f64..0.008,
        y in -0.008f64..0.008,
        rx in -0.01f64..0.01,
        ry in -0.01f64..0.01,
        vel in prop::array::uniform6(-0.01f64..0.01),
    ) {
        let mut g = PegHoleGeometry::peg_20mm();
        g.mu = 0.3;
        let mut pose = pressed((x, y), (rx, ry), 1e-4);
        pose.tip_velocity = Vec6(vel);
        let mut mirrored = pressed((x, -y), (-rx, ry), 1e-4);
        mirrored.tip_velocity = mirror_xz().mul_vec(&Vec6(vel));
        let a = contact_wrench(&g, &pose).unwrap().wrench.stacked();
        let b = contact_wrench(&g, &mirrored).unwrap().wrench.stacked();
        let expect = mirror_xz().mul_vec(&a);
        prop_assert!((b - expect).norm_inf() <= 1e-9 * (1.0 + a.norm_inf()));
    }

    #[test]
    fn normal_forces_resist_penetration(
        x in -0.008f64..0.008,
        y in -0.008f64..0.008,
        vz in -0.2f64..0.2,
        vy in -0.2f64..0.2,
        depth in 0.0f64..0.003,
    ) {
        let mut g = PegHoleGeometry::peg_30mm();
        g.mu = 0.4;
        let mut pose = pressed((x, y), (0.0, 0.0), depth);
        pose.tip_velocity = Vec6([0.0, vy, vz, 0.0, 0.0, 0.0]);
        let res = contact_wrench(&g, &pose).unwrap();
        prop_assert_eq!(res.phase == Phase::Free, res.contact_points.is_empty());
        let v = pose.tip_velocity.linear();
        for p in &res.contact_points {
            prop_assert!(p.normal_force >= 0.0);
            // normal power never feeds energy into the peg while it penetrates further
            let approach = -v.dot(&p.normal);
            if approach > 0.0 {
                prop_assert!(p.normal.scale(p.normal_force).dot(&v) <= 0.0);
            }
        }
    }
}

#[test]
fn moment_sign_grid_has_no_violations() {
    let mut violations = Vec::new();
    let mut checked = 0;
    for (name, g) in [
        ("20mm", PegHoleGeometry::peg_20mm()),
        ("30mm", PegHoleGeometry::peg_30mm()),
    ] {
        let steps = 24;
        for i in -steps..=steps {
            for j in -steps..=steps {
                let (dx, dy) = (g.r * i as f64 / steps as f64, g.r * j as f64 / steps as f64);
                let d = dx.hypot(dy);
                if d == 0.0 || d >= g.r {
                    continue;
                }
                let res = contact_wrench(&g, &pressed((dx, dy), (0.0, 0.0), 5e-5)).unwrap();
                if res.wrench.f.z() <= 0.0 {
                    continue;
                }
                checked += 1;
                let tau = res.wrench.tau;
                let tol = 1e-9 * res.wrench.f.z() * g.r;
                let ok_x = if dy.abs() < 1e-15 {
                    tau.x().abs() <= tol
                } else {
                    tau.x().signum() == dy.signum() && tau.x().abs() > tol
                };
                let ok_y = if dx.abs() < 1e-15 {
                    tau.y().abs() <= tol
                } else {
                    tau.y().signum() == -dx.signum() && tau.y().abs() > tol
                };
                if !(ok_x && ok_y) {
                    violations.push((name, dx, dy, tau));
                }
            }
        }
    }
    assert!(checked > 1000);
    assert!(violations.is_empty(), "{violations:?}");
}

#[test]
fn sample_count_is_validated() {
    let g = PegHoleGeometry::peg_20mm();
    assert!(contact_wrench_with(&g, &PegPose::at(Vec3::ZERO), 2).is_err());
}
