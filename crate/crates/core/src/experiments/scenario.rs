use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::admittance::{
    step_stacked, wrench_to_sensor, wrench_to_tip, AdmittanceParams, AdmittanceState,
};
use crate::contact::{contact_wrench, PegHoleGeometry, PegPose, Phase};
use crate::error::{Error, Result};
use crate::matcore::{rotate, rotation_xyz, Vec3, Vec6};

/// Vertical command profile: descend from `start_height` at `approach_speed`
/// until the command sits `press_depth` below the surface, then hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Descent {
    pub start_height: f64,
    pub approach_speed: f64,
    /// `ΔL` [m].
    pub press_depth: f64,
}

impl Default for Descent {
    fn default() -> Self {
        Descent {
            start_height: 0.005,
            approach_speed: 0.010,
            press_depth: 0.020,
        }
    }
}

impl Descent {
    /// Commanded tip height and vertical speed at time `t`.
    pub fn command(&self, t: f64) -> (f64, f64) {
        let z = self.start_height - self.approach_speed * t;
        if z > -self.press_depth {
            (z, -self.approach_speed)
        } else {
            (-self.press_depth, 0.0)
        }
    }

    pub fn duration(&self) -> f64 {
        (self.start_height + self.press_depth) / self.approach_speed
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub geometry: PegHoleGeometry,
    pub admittance: AdmittanceParams,
    /// Lateral error `(x, y)` of the peg axis relative to the hole [m].
    pub initial_error: [f64; 2],
    pub descent: Descent,
    /// Simulated horizon [s].
    pub duration: f64,
    /// Tip depth below the surface that counts as inserted [m].
    pub success_depth: f64,
    /// Latest insertion time that counts as a success [s].
    pub timeout: f64,
    pub stop_on_success: bool,
    /// Half-width of the uniform per-run perturbation of `initial_error` [m].
    pub jitter: f64,
    pub seed: u64,
    /// Sensor-to-tip offset in the peg frame [m].
    pub sensor_offset: Vec3,
    /// `‖ΔX‖` above which the run is declared diverged.
    pub divergence_bound: f64,
    /// Keep every n-th sample in the trajectory log; 0 disables logging.
    pub decimation: usize,
}

impl ScenarioConfig {
    pub fn new(geometry: PegHoleGeometry, admittance: AdmittanceParams) -> Self {
        ScenarioConfig {
            success_depth: geometry.r,
            sensor_offset: Vec3::new(0.0, 0.0, -geometry.peg_length),
            geometry,
            admittance,
            initial_error: [0.0, 0.0],
            descent: Descent::default(),
            duration: 120.0,
            timeout: 120.0,
            stop_on_success: true,
            jitter: 0.0,
            seed: 0,
            divergence_bound: 1.0,
            decimation: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.admittance.validate()?;
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.duration) {
            return Err(Error::ConfigInvalid("duration must be > 0".into()));
        }
        if !positive(self.success_depth) {
            return Err(Error::ConfigInvalid("success depth must be > 0".into()));
        }
        if !positive(self.timeout) {
            return Err(Error::ConfigInvalid("timeout must be > 0".into()));
        }
        if !positive(self.descent.press_depth) {
            return Err(Error::ConfigInvalid(
                "press depth delta_L must be > 0".into(),
            ));
        }
        if !positive(self.descent.approach_speed) {
            return Err(Error::ConfigInvalid("approach speed must be > 0".into()));
        }
        if !positive(self.divergence_bound) {
            return Err(Error::ConfigInvalid("divergence bound must be > 0".into()));
        }
        if !(self.jitter >= 0.0 && self.initial_error.iter().all(|v| v.is_finite())) {
            return Err(Error::ConfigInvalid(
                "initial error and jitter must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Initial error after the seeded jitter draw.
    pub fn effective_error(&self) -> [f64; 2] {
        if self.jitter == 0.0 {
            return self.initial_error;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let jx = rng.gen_range(-self.jitter..=self.jitter);
        let jy = rng.gen_range(-self.jitter..=self.jitter);
        [self.initial_error[0] + jx, self.initial_error[1] + jy]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogRow {
    pub t: f64,
    pub dx: Vec6,
    pub wrench: Vec6,
    pub phase: Phase,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrajectoryLog {
    pub rows: Vec<LogRow>,
}

impl TrajectoryLog {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Rows with `t` in `[from, to]`.
    pub fn window(&self, from: f64, to: f64) -> impl Iterator<Item = &LogRow> {
        self.rows.iter().filter(move |r| r.t >= from && r.t <= to)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunStatus {
    Success,
    /// Reached the horizon without inserting.
    Completed,
    Diverged,
}

impl RunStatus {
    pub fn label(self) -> &'static str {
        match self {
            RunStatus::Success => "success",
            RunStatus::Completed => "completed",
            RunStatus::Diverged => "diverged",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub status: RunStatus,
    /// Time from first contact to reaching the success depth [s].
    pub insertion_time: Option<f64>,
    pub first_contact: Option<f64>,
    pub end_time: f64,
    /// Largest `‖[f; τ]‖` seen at the tip.
    pub max_wrench: f64,
    pub final_dx: Vec6,
    pub final_tip: Vec3,
    /// Mean `ΔX` over the final half second of the run.
    pub settled_dx: Vec6,
    pub error: [f64; 2],
}

impl RunSummary {
    pub fn succeeded(&self) -> bool {
        self.status == RunStatus::Success
    }
}

/// Runs the closed loop: descent command, contact, sensor measurement,
/// tip transform and admittance update, once per sampling period.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<(TrajectoryLog, RunSummary)> {
    cfg.validate()?;
    let geom = &cfg.geometry;
    let params = &cfg.admittance;
    let ts = params.ts;
    let error = cfg.effective_error();
    let base = Vec3::new(
        geom.hole_center.x() + error[0],
        geom.hole_center.y() + error[1],
        geom.hole_center.z(),
    );
    let steps = (cfg.duration / ts).round() as usize;
    let settle_from = cfg.duration - 0.5_f64.min(cfg.duration);

    let mut state = AdmittanceState::default();
    let mut log = TrajectoryLog::default();
    let mut status = RunStatus::Completed;
    let mut insertion_time = None;
    let mut first_contact = None;
    let mut max_wrench: f64 = 0.0;
    let mut settled = Vec6::ZERO;
    let mut settled_n = 0usize;
    let mut end_time = 0.0;
    let mut final_tip = base;

    for k in 0..=steps {
        let t = k as f64 * ts;
        end_time = t;
        let (z_cmd, vz_cmd) = cfg.descent.command(t);
        let tip = Vec3::new(base.x(), base.y(), base.z() + z_cmd) + state.dx.linear();
        let orientation = state.dx.angular();
        let mut velocity = state.dx_dot;
        velocity[2] += vz_cmd;
        let pose = PegPose {
            tip_position: tip,
            orientation,
            tip_velocity: velocity,
        };
        final_tip = tip;
        if pose.validate().is_err() {
            status = RunStatus::Diverged;
            break;
        }
        let contact = contact_wrench(geom, &pose)?;
        if first_contact.is_none() && !contact.contact_points.is_empty() {
            first_contact = Some(t);
        }
        // measured at the sensor, moved back to the compliance centre
        let l_e = rotate(&rotation_xyz(&orientation), &cfg.sensor_offset);
        let sensed = wrench_to_sensor(&contact.wrench, &l_e)?;
        let wrench = wrench_to_tip(&sensed, &l_e)?;
        let stacked = wrench.stacked();
        max_wrench = max_wrench.max(stacked.norm());

        if cfg.decimation > 0 && k % cfg.decimation == 0 {
            log.rows.push(LogRow {
                t,
                dx: state.dx,
                wrench: stacked,
                phase: contact.phase,
            });
        }
        if t >= settle_from {
            settled += state.dx;
            settled_n += 1;
        }

        let depth = geom.hole_center.z() - tip.z();
        if insertion_time.is_none() && contact.phase != Phase::Search && depth >= cfg.success_depth
        {
            let elapsed = t - first_contact.unwrap_or(0.0);
            insertion_time = Some(elapsed);
            if elapsed <= cfg.timeout {
                status = RunStatus::Success;
            }
            if cfg.stop_on_success {
                break;
            }
        }

        let next = step_stacked(params, &state, &stacked);
        if next.diverged(cfg.divergence_bound) {
            status = RunStatus::Diverged;
            break;
        }
        state = next;
    }

    let settled_dx = if settled_n > 0 {
        settled.scale(1.0 / settled_n as f64)
    } else {
        state.dx
    };
    Ok((
        log,
        RunSummary {
            status,
            insertion_time,
            first_contact,
            end_time,
            max_wrench,
            final_dx: state.dx,
            final_tip,
            settled_dx,
            error,
        },
    ))
}
