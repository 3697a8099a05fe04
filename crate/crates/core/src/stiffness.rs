//! Construction, classification and stability checks of task-space
//! stiffness matrices.
//!
//! Two stability routes are supported. Symmetric matrices must be positive
//! definite, which is checked through their spectrum. Triangular matrices
//! have their diagonal as spectrum, so positivity of the diagonal is the
//! whole condition and off-diagonal entries are free.

use serde::{Deserialize, Serialize};

use crate::admittance::Wrench;
use crate::error::{Error, Result};
use crate::matcore::{Mat6, Vec6};

/// Axis indices in `(x, y, z, rx, ry, rz)` order.
pub mod axis {
    pub const X: usize = 0;
    pub const Y: usize = 1;
    pub const Z: usize = 2;
    pub const RX: usize = 3;
    pub const RY: usize = 4;
    pub const RZ: usize = 5;
}

/// Entry tolerance used for shape classification.
pub const SHAPE_TOL: f64 = 1e-12;
/// Relative tolerance on the smallest eigenvalue (scaled by `‖K‖∞`).
pub const EIGEN_RTOL: f64 = 1e-9;

/// Diagonal stiffness used throughout the experiments: 500 N/m, 50 N·m/rad.
pub const DEFAULT_DIAGONAL: Vec6 = Vec6([500.0, 500.0, 500.0, 50.0, 50.0, 50.0]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeClass {
    Diagonal,
    Symmetric,
    UpperTriangular,
    LowerTriangular,
    General,
}

impl ShapeClass {
    pub fn classify(k: &Mat6) -> Self {
        let tol = SHAPE_TOL * k.max_abs().max(1.0);
        if k.is_diagonal(tol) {
            ShapeClass::Diagonal
        } else if k.is_upper_triangular(tol) {
            ShapeClass::UpperTriangular
        } else if k.is_lower_triangular(tol) {
            ShapeClass::LowerTriangular
        } else if k.is_symmetric(tol) {
            ShapeClass::Symmetric
        } else {
            ShapeClass::General
        }
    }

    pub fn is_triangular(self) -> bool {
        matches!(
            self,
            ShapeClass::Diagonal | ShapeClass::UpperTriangular | ShapeClass::LowerTriangular
        )
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, ShapeClass::Diagonal | ShapeClass::Symmetric)
    }

    pub fn label(self) -> &'static str {
        match self {
            ShapeClass::Diagonal => "diagonal",
            ShapeClass::Symmetric => "symmetric",
            ShapeClass::UpperTriangular => "upper-triangular",
            ShapeClass::LowerTriangular => "lower-triangular",
            ShapeClass::General => "general",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenStatus {
    AllPositive,
    HasZero,
    HasNegative,
    /// Neither symmetric nor triangular; no stability statement is made.
    Unverified,
}

impl EigenStatus {
    pub fn is_stable(self) -> bool {
        self == EigenStatus::AllPositive
    }
}

/// A 6×6 stiffness matrix together with its shape class and eigen status.
///
/// Blocks carry N/m, N/rad, N·m/m and N·m/rad respectively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StiffnessMatrix {
    k: Mat6,
    shape: ShapeClass,
    eigen_status: EigenStatus,
}

impl StiffnessMatrix {
    /// Classifies `k` and evaluates the stability condition of its class.
    pub fn new(k: Mat6) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::ConfigInvalid(
                "stiffness matrix has non-finite entries".into(),
            ));
        }
        let shape = ShapeClass::classify(&k);
        let eigen_status = if shape.is_triangular() {
            triangular_status(&k)
        } else if shape == ShapeClass::Symmetric {
            symmetric_status(&k)?
        } else {
            EigenStatus::Unverified
        };
        Ok(StiffnessMatrix {
            k,
            shape,
            eigen_status,
        })
    }

    pub fn diagonal(d: &Vec6) -> Result<Self> {
        Self::new(Mat6::from_diagonal(d))
    }

    /// Default diagonal with a 2×2 block overwritten on axes `(i, j)`.
    pub fn with_block(base: &Vec6, i: usize, j: usize, block: [[f64; 2]; 2]) -> Result<Self> {
        let mut k = Mat6::from_diagonal(base);
        k.set_block(i, j, block);
        Self::new(k)
    }

    pub fn matrix(&self) -> &Mat6 {
        &self.k
    }

    pub fn shape(&self) -> ShapeClass {
        self.shape
    }

    pub fn eigen_status(&self) -> EigenStatus {
        self.eigen_status
    }

    pub fn compliance(&self) -> Result<Mat6> {
        self.k.invert()
    }

    /// Eigenvalues along the route matching the shape class, if any.
    pub fn eigenvalues(&self) -> Option<[f64; 6]> {
        if self.shape.is_triangular() {
            self.k.eigenvalues_triangular().ok()
        } else if self.shape == ShapeClass::Symmetric {
            self.k.eigenvalues_symmetric().ok()
        } else {
            None
        }
    }
}

fn triangular_status(k: &Mat6) -> EigenStatus {
    let d = k.diagonal();
    if d.0.iter().any(|&v| v < 0.0) {
        EigenStatus::HasNegative
    } else if d.0.contains(&0.0) {
        EigenStatus::HasZero
    } else {
        EigenStatus::AllPositive
    }
}

fn symmetric_status(k: &Mat6) -> Result<EigenStatus> {
    let ev = k.eigenvalues_symmetric()?;
    let eps = EIGEN_RTOL * k.norm_inf();
    let min = ev[0];
    Ok(if min > eps {
        EigenStatus::AllPositive
    } else if min.abs() <= eps {
        EigenStatus::HasZero
    } else {
        EigenStatus::HasNegative
    })
}

/// Positive-definiteness status of a symmetric (or diagonal) matrix.
pub fn check_symmetric_pd(k: &StiffnessMatrix) -> Result<EigenStatus> {
    if !k.shape.is_symmetric() {
        return Err(Error::NotSymmetric {
            asymmetry: k.k.max_asymmetry(),
        });
    }
    symmetric_status(&k.k)
}

/// Diagonal-sign status of a triangular (or diagonal) matrix.
pub fn check_triangular(k: &StiffnessMatrix) -> Result<EigenStatus> {
    if !k.shape.is_triangular() {
        return Err(Error::NotTriangular);
    }
    Ok(triangular_status(&k.k))
}

/// Inputs of the moment-to-lateral induction design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaskDesignSpec {
    /// Maximum expected lateral error [m].
    pub delta_set: f64,
    /// Distance from the peg centre to the centre of pressure at that error [m].
    pub l_set: f64,
    /// Depth of the position command below the surface [m].
    pub delta_l: f64,
    pub k_diag: Vec6,
    /// Friction coefficient assumed by the designer; the closed form uses 0.
    pub mu_assumed: f64,
}

impl TaskDesignSpec {
    /// Design for a peg of radius `r`, placing the centre of pressure on the rim.
    pub fn for_peg_radius(delta_set: f64, r: f64, delta_l: f64) -> Self {
        TaskDesignSpec {
            delta_set,
            l_set: r,
            delta_l,
            k_diag: DEFAULT_DIAGONAL,
            mu_assumed: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.delta_set, self.l_set, self.delta_l, self.mu_assumed]
            .iter()
            .all(|v| v.is_finite())
            && self.k_diag.is_finite();
        if !finite {
            return Err(Error::ConfigInvalid("design inputs must be finite".into()));
        }
        if self.delta_l <= 0.0 {
            return Err(Error::ConfigInvalid(
                "command depth delta_L must be > 0".into(),
            ));
        }
        if self.l_set <= 0.0 {
            return Err(Error::ConfigInvalid("l_set must be > 0".into()));
        }
        if self.delta_set < 0.0 {
            return Err(Error::ConfigInvalid("delta_set must be >= 0".into()));
        }
        if self.mu_assumed < 0.0 {
            return Err(Error::ConfigInvalid("mu_assumed must be >= 0".into()));
        }
        if let Some(i) = self.k_diag.0.iter().position(|&v| v <= 0.0) {
            return Err(Error::DesignInfeasible(format!(
                "diagonal stiffness k_{} must be positive (got {})",
                crate::matcore::AXIS_NAMES[i],
                self.k_diag.0[i]
            )));
        }
        Ok(())
    }

    /// Magnitude of the designed compliance entries `k^inv_{y rx}`, `k^inv_{x ry}`.
    pub fn coupling_magnitude(&self) -> f64 {
        let c_zz = 1.0 / self.k_diag[axis::Z];
        let c_yy = 1.0 / self.k_diag[axis::Y];
        if self.delta_set == 0.0 {
            return 0.0;
        }
        (self.delta_set * c_zz / self.delta_l + self.mu_assumed * c_yy) / self.l_set
    }
}

/// Designs the triangular stiffness whose compliance couples the search
/// moments `τx`, `τy` into lateral displacements towards the hole.
///
/// The compliance is diagonal `1/k_diag` plus `k^inv_{y rx} = -m` and
/// `k^inv_{x ry} = +m` with `m = δ_set k^inv_zz / (l_set ΔL)`. With `z` up,
/// a peg offset by `+δ` along `y` rests on its `+y` rim and sees `τx > 0`,
/// while an offset along `+x` gives `τy < 0`; the opposite signs make both
/// couplings pull the peg back onto the hole.
pub fn design_task_nondiagonal(spec: &TaskDesignSpec) -> Result<StiffnessMatrix> {
    spec.validate()?;
    let m = spec.coupling_magnitude();
    let mut compliance = Mat6::from_diagonal(&Vec6(spec.k_diag.0.map(|v| 1.0 / v)));
    compliance[(axis::Y, axis::RX)] = -m;
    compliance[(axis::X, axis::RY)] = m;
    let k = StiffnessMatrix::new(compliance.invert()?)?;
    if !k.shape.is_triangular() || k.eigen_status != EigenStatus::AllPositive {
        return Err(Error::DesignInfeasible(format!(
            "designed matrix is {} with status {:?}",
            k.shape.label(),
            k.eigen_status
        )));
    }
    Ok(k)
}

/// Triangular yz-plane design: pressing with `ΔL` displaces `y` by `delta`.
///
/// `k^inv_yz = δ k^inv_zz / ΔL`, so the steady pressing force
/// `f_z = ΔL / k^inv_zz` maps onto `Δy = δ`.
pub fn design_press_induction(delta: f64, delta_l: f64, k_diag: &Vec6) -> Result<StiffnessMatrix> {
    if delta_l <= 0.0 || !delta.is_finite() {
        return Err(Error::ConfigInvalid(
            "press depth must be > 0 and delta finite".into(),
        ));
    }
    if k_diag.0.iter().any(|&v| v <= 0.0) {
        return Err(Error::DesignInfeasible(
            "diagonal stiffness must be positive".into(),
        ));
    }
    let mut compliance = Mat6::from_diagonal(&Vec6(k_diag.0.map(|v| 1.0 / v)));
    compliance[(axis::Y, axis::Z)] = delta / (k_diag[axis::Z] * delta_l);
    StiffnessMatrix::new(compliance.invert()?)
}

/// Symmetric yz-plane counterpart of [`design_press_induction`]: the
/// diagonal `(k_yy, k_zz)` block is rotated by `θ` about the x-axis, so the
/// eigenvalues stay those of `k_diag` and the block is always positive
/// definite.
///
/// The coupling at pressing force `f_z` is `k^inv_yz f_z = ½ sin 2θ (1/k_yy - 1/k_zz) f_z`.
/// `θ` is chosen to reach `delta`; when `delta` exceeds the largest coupling
/// the rotation can produce, `θ` saturates at 45°. Returns the matrix and the
/// coupling it actually achieves.
pub fn design_symmetric_press_induction(
    delta: f64,
    f_z: f64,
    k_diag: &Vec6,
) -> Result<(StiffnessMatrix, f64)> {
    if f_z <= 0.0 || !f_z.is_finite() || !delta.is_finite() {
        return Err(Error::ConfigInvalid(
            "press force must be > 0 and delta finite".into(),
        ));
    }
    if k_diag.0.iter().any(|&v| v <= 0.0) {
        return Err(Error::DesignInfeasible(
            "diagonal stiffness must be positive".into(),
        ));
    }
    let (a, b) = (k_diag[axis::Y], k_diag[axis::Z]);
    let spread = 1.0 / a - 1.0 / b;
    if spread == 0.0 {
        return Ok((StiffnessMatrix::diagonal(k_diag)?, 0.0));
    }
    let sin2 = (2.0 * delta / (f_z * spread)).clamp(-1.0, 1.0);
    let theta = 0.5 * sin2.asin();
    let (s, c) = theta.sin_cos();
    let block = [
        [a * c * c + b * s * s, (a - b) * c * s],
        [(a - b) * c * s, a * s * s + b * c * c],
    ];
    let k = StiffnessMatrix::with_block(k_diag, axis::Y, axis::Z, block)?;
    if check_symmetric_pd(&k)? != EigenStatus::AllPositive {
        return Err(Error::DesignInfeasible(
            "symmetric design is not positive definite".into(),
        ));
    }
    Ok((k, 0.5 * sin2 * spread * f_z))
}

/// Predicted steady lateral (`y`) deviation while pressing `ΔL` into the surface.
///
/// The press force is `f_z = ΔL / k^inv_zz`; a centre of pressure at signed
/// distance `l` along `y` gives `τx = l f_z`. Without friction
/// `δ = (k^inv_yz + l k^inv_{y rx}) f_z`. Sliding friction `μ f_z` opposes
/// the motion and removes `μ k^inv_yy f_z`; if it exceeds the frictionless
/// value the peg sticks and `δ = 0`.
pub fn predicted_induction(k: &StiffnessMatrix, delta_l: f64, mu: f64, l: f64) -> Result<f64> {
    let c = k.compliance()?;
    let f_z = delta_l / c[(axis::Z, axis::Z)];
    let frictionless = (c[(axis::Y, axis::Z)] + l * c[(axis::Y, axis::RX)]) * f_z;
    let loss = mu * c[(axis::Y, axis::Y)] * f_z;
    if frictionless.abs() <= loss {
        Ok(0.0)
    } else {
        Ok(frictionless - frictionless.signum() * loss)
    }
}

/// Componentwise upper bound `|K⁻¹ ΔF|` on the hunting width.
pub fn hunting_width(k: &StiffnessMatrix, max_force_error: &Wrench) -> Result<Vec6> {
    let c = k.compliance()?;
    Ok((c * max_force_error.stacked()).abs())
}

/// Named presets reproducing the yz-plane induction matrices.
pub mod presets {
    use super::*;

    pub const PRESS_DEPTH: f64 = 0.02;
    /// Diagonal of the yz-plane induction matrices (`k_zz = 750`).
    pub const PRESS_DIAGONAL: Vec6 = Vec6([500.0, 500.0, 750.0, 50.0, 50.0, 50.0]);

    fn triangular(k_yz: f64) -> StiffnessMatrix {
        StiffnessMatrix::with_block(
            &PRESS_DIAGONAL,
            axis::Y,
            axis::Z,
            [[500.0, k_yz], [0.0, 750.0]],
        )
        .expect("finite preset")
    }

    pub fn k_n20() -> StiffnessMatrix {
        triangular(-500.0)
    }

    pub fn k_n30() -> StiffnessMatrix {
        triangular(-750.0)
    }

    pub fn k_n60() -> StiffnessMatrix {
        triangular(-1500.0)
    }

    pub fn k_n120() -> StiffnessMatrix {
        triangular(-3000.0)
    }

    /// Pressing force of the induction presets, `k_zz ΔL` [N].
    pub const PRESS_FORCE: f64 = 15.0;

    fn rotated(delta: f64) -> StiffnessMatrix {
        design_symmetric_press_induction(delta, PRESS_FORCE, &PRESS_DIAGONAL)
            .expect("feasible")
            .0
    }

    pub fn k_d20() -> StiffnessMatrix {
        rotated(0.020)
    }

    pub fn k_d30() -> StiffnessMatrix {
        rotated(0.030)
    }

    /// `(name, design value [m], matrix)` for the asymmetric sweep.
    pub fn asymmetric() -> Vec<(&'static str, f64, StiffnessMatrix)> {
        vec![
            ("K_n20", 0.020, k_n20()),
            ("K_n30", 0.030, k_n30()),
            ("K_n60", 0.060, k_n60()),
            ("K_n120", 0.120, k_n120()),
        ]
    }

    pub fn symmetric() -> Vec<(&'static str, f64, StiffnessMatrix)> {
        vec![("K_d20", 0.020, k_d20()), ("K_d30", 0.030, k_d30())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admittance::Frame;
    use crate::matcore::Vec3;

    fn yz(block: [[f64; 2]; 2]) -> StiffnessMatrix {
        StiffnessMatrix::with_block(&Vec6::splat(1.0), axis::Y, axis::Z, block).unwrap()
    }

    #[test]
    fn classification() {
        assert_eq!(
            StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL)
                .unwrap()
                .shape(),
            ShapeClass::Diagonal
        );
        assert_eq!(
            yz([[500.0, 400.0], [400.0, 750.0]]).shape(),
            ShapeClass::Symmetric
        );
        assert_eq!(
            yz([[500.0, -500.0], [0.0, 750.0]]).shape(),
            ShapeClass::UpperTriangular
        );
        assert_eq!(
            yz([[500.0, 0.0], [-500.0, 750.0]]).shape(),
            ShapeClass::LowerTriangular
        );
        let g = yz([[500.0, 1.0], [2.0, 750.0]]);
        assert_eq!(g.shape(), ShapeClass::General);
        assert_eq!(g.eigen_status(), EigenStatus::Unverified);
    }

    #[test]
    fn symmetric_pd_cases() {
        // 500 * 750 = 375000 > 400^2 = 160000
        let pd = yz([[500.0, 400.0], [400.0, 750.0]]);
        assert_eq!(check_symmetric_pd(&pd).unwrap(), EigenStatus::AllPositive);
        // 375000 < 700^2 = 490000
        let indefinite = yz([[500.0, 700.0], [700.0, 750.0]]);
        assert_eq!(
            check_symmetric_pd(&indefinite).unwrap(),
            EigenStatus::HasNegative
        );
        let diag = StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL).unwrap();
        assert_eq!(check_symmetric_pd(&diag).unwrap(), EigenStatus::AllPositive);
        let singular = yz([[500.0, 500.0], [500.0, 500.0]]);
        assert_eq!(check_symmetric_pd(&singular).unwrap(), EigenStatus::HasZero);
    }

    #[test]
    fn symmetric_check_rejects_triangular() {
        let tri = yz([[500.0, -500.0], [0.0, 750.0]]);
        assert!(matches!(
            check_symmetric_pd(&tri),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn triangular_cases() {
        assert_eq!(
            check_triangular(&presets::k_n120()).unwrap(),
            EigenStatus::AllPositive
        );
        assert_eq!(
            check_triangular(&yz([[-500.0, -3000.0], [0.0, 750.0]])).unwrap(),
            EigenStatus::HasNegative
        );
        assert_eq!(
            check_triangular(&yz([[500.0, 0.0], [0.0, 0.0]])).unwrap(),
            EigenStatus::HasZero
        );
        assert_eq!(
            check_triangular(&yz([[500.0, 400.0], [400.0, 750.0]])),
            Err(Error::NotTriangular)
        );
    }

    #[test]
    fn pd_status_implies_positive_minors() {
        let pd = yz([[500.0, 400.0], [400.0, 750.0]]);
        assert_eq!(pd.eigen_status(), EigenStatus::AllPositive);
        assert!(pd.matrix().leading_minors().iter().all(|&m| m > 0.0));
    }

    #[test]
    fn task_design_reference_inputs() {
        let spec = TaskDesignSpec {
            delta_set: 0.005,
            l_set: 0.01,
            delta_l: 0.02,
            k_diag: DEFAULT_DIAGONAL,
            mu_assumed: 0.0,
        };
        let k = design_task_nondiagonal(&spec).unwrap();
        let c = k.compliance().unwrap();
        // -0.005 * 0.002 / (0.01 * 0.02)
        assert!((c[(axis::Y, axis::RX)] + 0.05).abs() < 1e-12);
        assert!((c[(axis::X, axis::RY)] - 0.05).abs() < 1e-12);
        assert_eq!(k.shape(), ShapeClass::UpperTriangular);
        assert_eq!(k.eigen_status(), EigenStatus::AllPositive);
        // K entries: -c * k_yy * k_rxrx
        assert!((k.matrix()[(axis::Y, axis::RX)] - 0.05 * 500.0 * 50.0).abs() < 1e-9);
    }

    #[test]
    fn task_design_zero_error_is_diagonal() {
        let spec = TaskDesignSpec::for_peg_radius(0.0, 0.015, 0.02);
        let k = design_task_nondiagonal(&spec).unwrap();
        assert_eq!(k.shape(), ShapeClass::Diagonal);
    }

    #[test]
    fn task_design_rejects_bad_inputs() {
        let mut spec = TaskDesignSpec::for_peg_radius(0.005, 0.015, 0.02);
        spec.k_diag[axis::Z] = -500.0;
        assert!(matches!(
            design_task_nondiagonal(&spec),
            Err(Error::DesignInfeasible(_))
        ));
        let mut spec = TaskDesignSpec::for_peg_radius(0.005, 0.015, 0.02);
        spec.delta_l = 0.0;
        assert!(matches!(
            design_task_nondiagonal(&spec),
            Err(Error::ConfigInvalid(_))
        ));
    }

    #[test]
    fn press_induction_reproduces_kn_presets() {
        for (_, delta, k) in presets::asymmetric() {
            let designed =
                design_press_induction(delta, presets::PRESS_DEPTH, &presets::PRESS_DIAGONAL)
                    .unwrap();
            assert!((*designed.matrix() - *k.matrix()).max_abs() < 1e-9);
        }
    }

    #[test]
    fn symmetric_designs_are_pd() {
        for (_, _, k) in presets::symmetric() {
            assert_eq!(k.shape(), ShapeClass::Symmetric);
            assert_eq!(check_symmetric_pd(&k).unwrap(), EigenStatus::AllPositive);
        }
        // both targets exceed the 5 mm a rotated (500, 750) block can give
        let (d20, got20) =
            design_symmetric_press_induction(0.020, 15.0, &presets::PRESS_DIAGONAL).unwrap();
        let (_, got30) =
            design_symmetric_press_induction(0.030, 15.0, &presets::PRESS_DIAGONAL).unwrap();
        assert!((got20 - 0.005).abs() < 1e-15 && got20 == got30);
        let m = d20.matrix();
        assert!((m[(axis::Y, axis::Y)] - 625.0).abs() < 1e-9);
        assert!((m[(axis::Y, axis::Z)] + 125.0).abs() < 1e-9);
        assert!((m[(axis::Z, axis::Z)] - 625.0).abs() < 1e-9);
        let mut ev = d20.eigenvalues().unwrap();
        ev.sort_by(f64::total_cmp);
        assert!((ev[4] - 500.0).abs() < 1e-9 && (ev[5] - 750.0).abs() < 1e-9);
        // reachable target: exact coupling
        let (k, got) =
            design_symmetric_press_induction(0.003, 15.0, &presets::PRESS_DIAGONAL).unwrap();
        assert!((got - 0.003).abs() < 1e-15);
        assert!((k.compliance().unwrap()[(axis::Y, axis::Z)] * 15.0 - 0.003).abs() < 1e-12);
    }

    #[test]
    fn induction_predictions() {
        let p = |k: &StiffnessMatrix, mu| predicted_induction(k, 0.02, mu, 0.0).unwrap();
        assert!((p(&presets::k_n20(), 0.0) - 0.020).abs() < 1e-12);
        assert!((p(&presets::k_n60(), 0.0) - 0.060).abs() < 1e-12);
        let diag = StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL).unwrap();
        assert_eq!(p(&diag, 0.0), 0.0);
        // friction: 0.020 - 0.4 * 0.002 * 15
        assert!((p(&presets::k_n20(), 0.4) - 0.008).abs() < 1e-12);
    }

    #[test]
    fn design_round_trip() {
        let spec = TaskDesignSpec::for_peg_radius(0.005, 0.015, 0.02);
        let k = design_task_nondiagonal(&spec).unwrap();
        let delta = predicted_induction(&k, spec.delta_l, 0.0, spec.l_set).unwrap();
        assert!((delta + spec.delta_set).abs() < 1e-9);
    }

    #[test]
    fn hunting_width_cases() {
        let diag = StiffnessMatrix::diagonal(&DEFAULT_DIAGONAL).unwrap();
        let zero = Wrench::new(Vec3::ZERO, Vec3::ZERO, Frame::PegTip);
        assert_eq!(hunting_width(&diag, &zero).unwrap(), Vec6::ZERO);
        let fz = Wrench::new(Vec3::new(0.0, 0.0, 15.0), Vec3::ZERO, Frame::PegTip);
        let w = hunting_width(&diag, &fz).unwrap();
        assert!((w[axis::Z] - 0.03).abs() < 1e-15);
        assert_eq!(w[axis::Y], 0.0);
        let fz5 = Wrench::new(Vec3::new(0.0, 0.0, 5.0), Vec3::ZERO, Frame::PegTip);
        let w = hunting_width(&presets::k_n20(), &fz5).unwrap();
        assert!((w[axis::Y] - 5.0 / 750.0).abs() < 1e-12);
    }

    #[test]
    fn unilateral_interference() {
        let c = presets::k_n120().compliance().unwrap();
        assert_eq!(c[(axis::Z, axis::Y)], 0.0);
        assert!(c[(axis::Y, axis::Z)] > 0.0);
    }
}
