//! Discrete 6-DOF task-space admittance model
//! `F = M ΔẌ + D ΔẊ + K ΔX` and the sensor-to-tip wrench transform.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::{Vec3, Vec6};
use crate::stiffness::StiffnessMatrix;

/// Admittance mass from the control parameter table: 1 kg / 1 kg·m².
pub const TABLE_MASS: Vec6 = Vec6([1.0; 6]);
/// Admittance damping: 50 N·s/m translational, 5 N·m·s/rad rotational.
pub const TABLE_DAMPING: Vec6 = Vec6([50.0, 50.0, 50.0, 5.0, 5.0, 5.0]);
pub const TABLE_SAMPLING_TIME: f64 = 0.001;
pub const TABLE_FILTER_CUTOFF_HZ: f64 = 1.5;
/// Inner position-loop gains; stored for completeness, the default plant
/// tracks the admittance command ideally.
pub const TABLE_KP: Vec6 = Vec6([600.0; 6]);
pub const TABLE_KD: Vec6 = Vec6([50.0; 6]);
pub const TABLE_INERTIA: Vec6 = Vec6([2.0, 1.0, 0.8, 0.25, 0.15, 0.05]);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    Sensor,
    PegTip,
}

/// Force [N] and moment [N·m] expressed at a tagged point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wrench {
    pub f: Vec3,
    pub tau: Vec3,
    pub frame: Frame,
}

impl Wrench {
    pub fn new(f: Vec3, tau: Vec3, frame: Frame) -> Self {
        Wrench { f, tau, frame }
    }

    pub fn zero(frame: Frame) -> Self {
        Wrench::new(Vec3::ZERO, Vec3::ZERO, frame)
    }

    pub fn from_stacked(v: &Vec6, frame: Frame) -> Self {
        Wrench::new(v.linear(), v.angular(), frame)
    }

    /// `[f; τ]`.
    pub fn stacked(&self) -> Vec6 {
        Vec6::from_parts(self.f, self.tau)
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite() && self.tau.is_finite()
    }
}

/// Moves a sensor-frame wrench to the peg tip; `l_e` points from the sensor
/// to the tip. `f` is unchanged and `τ_peg = τ_sensor - l_e × f`.
pub fn wrench_to_tip(w: &Wrench, l_e: &Vec3) -> Result<Wrench> {
    if w.frame != Frame::Sensor {
        return Err(Error::WrongFrame {
            expected: Frame::Sensor,
            found: w.frame,
        });
    }
    Ok(Wrench::new(w.f, w.tau - l_e.cross(&w.f), Frame::PegTip))
}

/// Inverse of [`wrench_to_tip`]: `τ_sensor = τ_peg + l_e × f`.
pub fn wrench_to_sensor(w: &Wrench, l_e: &Vec3) -> Result<Wrench> {
    if w.frame != Frame::PegTip {
        return Err(Error::WrongFrame {
            expected: Frame::PegTip,
            found: w.frame,
        });
    }
    Ok(Wrench::new(w.f, w.tau + l_e.cross(&w.f), Frame::Sensor))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmittanceParams {
    /// Diagonal virtual mass [kg, kg·m²].
    pub mass: Vec6,
    /// Diagonal virtual damping [N·s/m, N·m·s/rad].
    pub damping: Vec6,
    pub stiffness: StiffnessMatrix,
    /// Sampling time [s].
    pub ts: f64,
    /// First-order low-pass cutoff applied to the input wrench; `None` passes
    /// the wrench through unfiltered.
    pub force_filter_cutoff: Option<f64>,
}

impl AdmittanceParams {
    /// Control-table mass, damping and sampling time around `stiffness`.
    pub fn table(stiffness: StiffnessMatrix) -> Self {
        AdmittanceParams {
            mass: TABLE_MASS,
            damping: TABLE_DAMPING,
            stiffness,
            ts: TABLE_SAMPLING_TIME,
            force_filter_cutoff: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ts > 0.0 && self.ts.is_finite()) {
            return Err(Error::ConfigInvalid("sampling time must be > 0".into()));
        }
        if self.mass.0.iter().any(|&m| !(m > 0.0 && m.is_finite())) {
            return Err(Error::ConfigInvalid("admittance mass must be > 0".into()));
        }
        if self.damping.0.iter().any(|&d| !(d >= 0.0 && d.is_finite())) {
            return Err(Error::ConfigInvalid(
                "admittance damping must be >= 0".into(),
            ));
        }
        if let Some(fc) = self.force_filter_cutoff {
            if !(fc > 0.0 && fc.is_finite()) {
                return Err(Error::ConfigInvalid("filter cutoff must be > 0".into()));
            }
        }
        Ok(())
    }

    /// Smoothing factor of the discrete first-order filter, 1 when disabled.
    pub fn filter_alpha(&self) -> f64 {
        match self.force_filter_cutoff {
            Some(fc) => {
                let tau = 1.0 / (2.0 * PI * fc);
                self.ts / (self.ts + tau)
            }
            None => 1.0,
        }
    }
}

/// Displacement of the admittance command and its derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AdmittanceState {
    /// `ΔX` [m, rad].
    pub dx: Vec6,
    pub dx_dot: Vec6,
    pub dx_ddot: Vec6,
    /// Low-pass filter memory of the stacked input wrench.
    pub filtered_wrench: Vec6,
}

impl AdmittanceState {
    pub fn is_finite(&self) -> bool {
        self.dx.is_finite() && self.dx_dot.is_finite() && self.dx_ddot.is_finite()
    }

    /// Non-finite or `‖ΔX‖ > bound`.
    pub fn diverged(&self, bound: f64) -> bool {
        !self.is_finite() || self.dx.norm() > bound
    }

    /// `½ ΔẊᵀ M ΔẊ + ½ ΔXᵀ K ΔX`.
    pub fn energy(&self, params: &AdmittanceParams) -> f64 {
        let kinetic = 0.5 * self.dx_dot.hadamard(&params.mass).dot(&self.dx_dot);
        let potential = 0.5 * self.dx.dot(&params.stiffness.matrix().mul_vec(&self.dx));
        kinetic + potential
    }
}

/// One semi-implicit Euler step at `params.ts`.
pub fn step(
    params: &AdmittanceParams,
    state: &AdmittanceState,
    w: &Wrench,
) -> Result<AdmittanceState> {
    if w.frame != Frame::PegTip {
        return Err(Error::WrongFrame {
            expected: Frame::PegTip,
            found: w.frame,
        });
    }
    Ok(step_stacked(params, state, &w.stacked()))
}

pub(crate) fn step_stacked(
    params: &AdmittanceParams,
    state: &AdmittanceState,
    wrench: &Vec6,
) -> AdmittanceState {
    let alpha = params.filter_alpha();
    let filtered = state.filtered_wrench + (*wrench - state.filtered_wrench).scale(alpha);
    let k = params.stiffness.matrix();
    let spring = k.mul_vec(&state.dx);
    let mut acc = Vec6::ZERO;
    for i in 0..6 {
        acc[i] = (filtered[i] - params.damping[i] * state.dx_dot[i] - spring[i]) / params.mass[i];
    }
    let dx_dot = state.dx_dot + acc.scale(params.ts);
    let dx = state.dx + dx_dot.scale(params.ts);
    AdmittanceState {
        dx,
        dx_dot,
        dx_ddot: acc,
        filtered_wrench: filtered,
    }
}

/// Static compliance mapping `ΔX = K⁻¹ F`.
pub fn steady_state(params: &AdmittanceParams, w: &Wrench) -> Result<Vec6> {
    Ok(params.stiffness.compliance()?.mul_vec(&w.stacked()))
}
