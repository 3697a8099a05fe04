mod common;

use compliance_core::matcore::rotation_xyz;
use compliance_core::{Mat6, Vec3};
use proptest::prelude::*;

fn entries(lo: f64, hi: f64) -> impl Strategy<Value = [[f64; 6]; 6]> {
    prop::array::uniform6(prop::array::uniform6(lo..hi))
}

fn mul(a: &Mat6, b: &Mat6) -> Mat6 {
    let mut out = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = (0..6).map(|k| a.0[i][k] * b.0[k][j]).sum();
        }
    }
    Mat6(out)
}

proptest! {
    #[test]
    fn inverse_times_matrix_is_identity(rows in entries(-1.0, 1.0), boost in 1.0f64..5.0) {
        let mut m = Mat6(rows);
        for i in 0..6 {
            m.0[i][i] += boost * 6.0;
        }
        let inv = m.invert().unwrap();
        let err = (mul(&m, &inv) - Mat6::identity()).norm_inf();
        prop_assert!(err < 1e-9, "residual {err}");
    }

    #[test]
    fn symmetric_eigenvalues_are_char_poly_roots(rows in entries(-500.0, 500.0)) {
        let a = Mat6(rows);
        let m = (a + a.transpose()).scale(0.5);
        let c = common::char_poly(&m);
        let scale = m.norm_inf();
        for lambda in m.eigenvalues_symmetric().unwrap() {
            // det(λI - A) is degree 6 in ‖A‖, so compare against ‖A‖^6
            let r = common::poly_eval(&c, lambda).abs() / scale.powi(6);
            prop_assert!(r < 1e-6, "residual {r}");
        }
    }

    #[test]
    fn triangular_eigenvalues_match_oracle(rows in entries(-300.0, 300.0), diag in prop::array::uniform6(0.1f64..1000.0), upper in any::<bool>()) {
        let mut m = Mat6(rows);
        for i in 0..6 {
            for j in 0..6 {
                let zero = if upper { j < i } else { j > i };
                if zero {
                    m.0[i][j] = 0.0;
                }
            }
            m.0[i][i] = diag[i];
        }
        let got = common::sorted(m.eigenvalues_triangular().unwrap());
        let want = common::real_roots_sorted(&common::char_poly(&m));
        for (g, w) in got.iter().zip(&want) {
            prop_assert!((g - w).abs() <= 1e-8 * w.abs().max(1.0), "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn eigen_reconstruction(rows in entries(-100.0, 100.0)) {
        let a = Mat6(rows);
        let m = (a + a.transpose()).scale(0.5);
        let e = m.symmetric_eigen().unwrap();
        prop_assert!((e.reconstruct() - m).max_abs() < 1e-9 * m.max_abs().max(1.0));
    }

    #[test]
    fn rotation_is_orthonormal(ax in -0.3f64..0.3, ay in -0.3f64..0.3, az in -0.3f64..0.3) {
        let r = rotation_xyz(&Vec3::new(ax, ay, az));
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = (0..3).map(|k| r[k][i] * r[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn determinant_matches_char_poly_constant() {
    let mut m = Mat6::from_diagonal(&compliance_core::Vec6([2.0, 3.0, 5.0, 7.0, 11.0, 13.0]));
    m.0[0][3] = 1.5;
    m.0[4][1] = -2.0;
    m.0[2][5] = 0.25;
    let c = common::char_poly(&m);
    assert!((m.determinant() - c[6]).abs() < 1e-9 * c[6].abs());
}
