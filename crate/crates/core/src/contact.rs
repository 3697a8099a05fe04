//! Penalty contact between a cylindrical peg and a plate with a
//! chamferless round hole.
//!
//! The plate top is the plane `z = 0` and the hole axis is vertical through
//! `hole_center`. Two point sets are checked every evaluation:
//!
//! * the rim of the peg bottom against the plate top and the hole wall,
//! * the hole edge (the circle where the wall meets the top) against the
//!   side of the peg.
//!
//! Each penetrating point contributes a spring-damper normal force and a
//! regularised Coulomb friction force; everything is reduced to one wrench
//! at the peg tip (bottom centre of the peg).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::admittance::{Frame, Wrench};
use crate::error::{Error, Result};
use crate::matcore::{rotate, rotation_xyz, Mat6, Vec3, Vec6};

/// Orientation magnitude limit of the small-angle pose representation [rad].
pub const MAX_TILT: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PegHoleGeometry {
    /// Peg radius [m].
    pub r: f64,
    /// Radial clearance [m]; the hole radius is `r + c`.
    pub c: f64,
    /// Hole centre on the plate surface.
    pub hole_center: Vec3,
    pub peg_length: f64,
    pub mu: f64,
    /// Total normal stiffness of a fully loaded rim [N/m].
    pub contact_stiffness: f64,
    /// Total normal damping of a fully loaded rim [N·s/m].
    pub contact_damping: f64,
    pub rim_points: usize,
    /// Friction regularisation velocity [m/s].
    pub v_eps: f64,
    /// Pressing force above which surface contact counts as search [N].
    pub f_thresh: f64,
    /// Relative hysteresis band on `f_thresh`.
    pub hysteresis: f64,
}

impl PegHoleGeometry {
    pub fn new(r: f64, c: f64) -> Self {
        PegHoleGeometry {
            r,
            c,
            hole_center: Vec3::ZERO,
            peg_length: 0.1,
            mu: 0.0,
            contact_stiffness: 1e6,
            contact_damping: 1e3,
            rim_points: 64,
            v_eps: 5e-3,
            f_thresh: 0.5,
            hysteresis: 0.2,
        }
    }

    /// 20 mm diameter peg, 40 µm clearance.
    pub fn peg_20mm() -> Self {
        PegHoleGeometry::new(0.010, 40e-6)
    }

    /// 30 mm diameter peg, 420 µm clearance.
    pub fn peg_30mm() -> Self {
        PegHoleGeometry::new(0.015, 420e-6)
    }

    pub fn hole_radius(&self) -> f64 {
        self.r + self.c
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.r > 0.0
            && self.c > 0.0
            && self.mu >= 0.0
            && self.contact_stiffness > 0.0
            && self.contact_damping >= 0.0
            && self.peg_length > 0.0
            && self.v_eps > 0.0
            && self.rim_points >= 3
            && self.f_thresh >= 0.0
            && (0.0..1.0).contains(&self.hysteresis)
            && self.hole_center.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::ConfigInvalid(format!(
                "invalid peg/hole geometry: {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PegPose {
    pub tip_position: Vec3,
    /// Small-angle XYZ orientation [rad].
    pub orientation: Vec3,
    /// Linear then angular velocity of the tip.
    pub tip_velocity: Vec6,
}

impl PegPose {
    pub fn at(tip_position: Vec3) -> Self {
        PegPose {
            tip_position,
            orientation: Vec3::ZERO,
            tip_velocity: Vec6::ZERO,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tip_position.is_finite()
            && self.orientation.is_finite()
            && self.tip_velocity.is_finite())
        {
            return Err(Error::InvalidPose("non-finite pose".into()));
        }
        if self.orientation.norm() >= MAX_TILT {
            return Err(Error::InvalidPose(format!(
                "orientation {:?} exceeds {MAX_TILT} rad",
                self.orientation.0
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phase {
    Free,
    Search,
    Insertion,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Free => "free",
            Phase::Search => "search",
            Phase::Insertion => "insertion",
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Phase::Free => 0,
            Phase::Search => 1,
            Phase::Insertion => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactPoint {
    pub position: Vec3,
    /// Unit normal of the force acting on the peg.
    pub normal: Vec3,
    pub normal_force: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactResult {
    pub wrench: Wrench,
    pub phase: Phase,
    pub contact_points: Vec<ContactPoint>,
}

struct Accumulator<'a> {
    geom: &'a PegHoleGeometry,
    tip: Vec3,
    velocity: Vec6,
    k_point: f64,
    d_point: f64,
    force: Vec3,
    moment: Vec3,
    points: Vec<ContactPoint>,
}

impl Accumulator<'_> {
    /// Penalty force of one sample carrying `weight` of its nominal share.
    fn add(&mut self, position: Vec3, normal: Vec3, penetration: f64, weight: f64) {
        let arm = position - self.tip;
        let v = self.velocity.linear() + self.velocity.angular().cross(&arm);
        let rate = -v.dot(&normal);
        let fn_ = (weight * (self.k_point * penetration + self.d_point * rate)).max(0.0);
        if fn_ <= 0.0 {
            return;
        }
        let v_t = v - normal.scale(v.dot(&normal));
        let speed = v_t.norm();
        let mut f = normal.scale(fn_);
        if speed > 0.0 && self.geom.mu > 0.0 {
            let mag = self.geom.mu * fn_ * (speed / self.geom.v_eps).tanh();
            f += v_t.scale(-mag / speed);
        }
        self.force += f;
        self.moment += arm.cross(&f);
        self.points.push(ContactPoint {
            position,
            normal,
            normal_force: fn_,
        });
    }
}

/// Sub-interval of `[0, 1]` where the linear function from `a` to `b` is positive.
fn positive_part(a: f64, b: f64) -> (f64, f64) {
    match (a > 0.0, b > 0.0) {
        (true, true) => (0.0, 1.0),
        (false, false) => (0.0, 0.0),
        (true, false) => (0.0, a / (a - b)),
        (false, true) => (a / (a - b), 1.0),
    }
}

/// `(measure, ∫ pen)` over the part of `[0, 1]` selected by `range`, for
/// penetration varying linearly from `p0` to `p1`.
fn integrate(range: (f64, f64), p0: f64, p1: f64) -> (f64, f64) {
    let len = (range.1 - range.0).max(0.0);
    let mid = 0.5 * (range.0 + range.1);
    (len, len * (p0 + (p1 - p0) * mid))
}

fn intersect(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0.max(b.0), a.1.min(b.1))
}

/// `(weight, ∫ pen)` over the half segment from its centre (`m`) to an end
/// (`e`), restricted to where `0 < pen < limit`, by exact quadrature of the
/// linear interpolants. `pair = (pen, limit)`.
fn band(m: (f64, f64), e: (f64, f64)) -> (f64, f64) {
    let range = intersect(positive_part(m.0, e.0), positive_part(m.1 - m.0, e.1 - e.0));
    integrate(range, m.0, e.0)
}

/// Adds the segment around one sample, accumulating the two half segments.
fn add_segment(acc: &mut Accumulator<'_>, at: Vec3, normal: Vec3, halves: [(f64, f64); 2]) {
    // weights are in units of the whole segment
    let w = 0.5 * (halves[0].0 + halves[1].0);
    if w > 0.0 {
        let pen = 0.5 * (halves[0].1 + halves[1].1) / w;
        acc.add(at, normal, pen, w);
    }
}

/// `(cos, sin)` of `k·step` for `k = 0..count`, by rotation recurrence.
fn unit_circle(count: usize, step: f64) -> impl Iterator<Item = (f64, f64)> {
    let (ds, dc) = step.sin_cos();
    (0..count).scan((1.0_f64, 0.0_f64), move |cs, _| {
        let out = *cs;
        *cs = (cs.0 * dc - cs.1 * ds, cs.1 * dc + cs.0 * ds);
        Some(out)
    })
}

/// Evaluates the contact wrench at the peg tip with the default rim resolution.
pub fn contact_wrench(geom: &PegHoleGeometry, pose: &PegPose) -> Result<ContactResult> {
    contact_wrench_with(geom, pose, geom.rim_points)
}

/// Same as [`contact_wrench`] with an explicit number of rim/edge samples.
pub fn contact_wrench_with(
    geom: &PegHoleGeometry,
    pose: &PegPose,
    samples: usize,
) -> Result<ContactResult> {
    pose.validate()?;
    if samples < 3 {
        return Err(Error::ConfigInvalid(
            "at least 3 rim samples are required".into(),
        ));
    }
    let rot = rotation_xyz(&pose.orientation);
    let axis = rotate(&rot, &Vec3::new(0.0, 0.0, 1.0));
    let tip = pose.tip_position;
    let hole = geom.hole_center;
    let hole_r = geom.hole_radius();
    let n = samples as f64;
    let mut acc = Accumulator {
        geom,
        tip,
        velocity: pose.tip_velocity,
        k_point: geom.contact_stiffness / n,
        d_point: geom.contact_damping / n,
        force: Vec3::ZERO,
        moment: Vec3::ZERO,
        points: Vec::with_capacity(samples),
    };

    // peg bottom rim against plate top and hole wall; each sample stands for
    // an arc segment, split exactly between the face rule (depth below the
    // radial overlap) and the wall rule so the wrench varies continuously
    let half = PI / n;
    // profile at the 2N segment ends and centres: (outward overlap with the
    // hole wall, depth below the plate top); even indices are segment ends
    let (ex, ey) = (
        Vec3::new(rot[0][0], rot[1][0], rot[2][0]).scale(geom.r),
        Vec3::new(rot[0][1], rot[1][1], rot[2][1]).scale(geom.r),
    );
    let profile: Vec<(Vec3, f64, f64, (f64, f64))> = unit_circle(2 * samples, half)
        .map(|(c, s)| {
            let q = tip + ex.scale(c) + ey.scale(s);
            let dx = q.x() - hole.x();
            let dy = q.y() - hole.y();
            (
                q,
                dx,
                dy,
                ((dx * dx + dy * dy).sqrt() - hole_r, hole.z() - q.z()),
            )
        })
        .collect();
    let mut rim_inside = true;
    for i in 0..samples {
        let (q, dx, dy, (out_m, dep_m)) = profile[2 * i + 1];
        rim_inside &= out_m < 0.0 || dep_m > out_m;
        let (.., (out_a, dep_a)) = profile[2 * i];
        let (.., (out_b, dep_b)) = profile[(2 * i + 2) % (2 * samples)];
        if dep_m <= 0.0 && dep_a <= 0.0 && dep_b <= 0.0 {
            continue;
        }
        let face = [
            band((dep_m, out_m), (dep_a, out_a)),
            band((dep_m, out_m), (dep_b, out_b)),
        ];
        add_segment(&mut acc, q, Vec3::new(0.0, 0.0, 1.0), face);
        let rho = (out_m + hole_r).max(f64::MIN_POSITIVE);
        let wall = [
            band((out_m, dep_m), (out_a, dep_a)),
            band((out_m, dep_m), (out_b, dep_b)),
        ];
        add_segment(&mut acc, q, Vec3::new(-dx / rho, -dy / rho, 0.0), wall);
    }

    // hole edge against the peg side, where the overlap with the side is
    // shallower than the edge height above the tip (deeper overlap belongs
    // to the rim contact)
    // edge point, height along the peg axis, radial offset, its length, band inputs
    type EdgeSample = (Vec3, f64, Vec3, f64, (f64, f64));
    let edge_profile: Vec<EdgeSample> = unit_circle(2 * samples, half)
        .map(|(c, s_)| {
            let e = Vec3::new(hole.x() + hole_r * c, hole.y() + hole_r * s_, hole.z());
            let rel = e - tip;
            let s = rel.dot(&axis);
            let radial_vec = rel - axis.scale(s);
            let dist = radial_vec.norm();
            (e, s, radial_vec, dist, (geom.r - dist, s))
        })
        .collect();
    for j in 0..samples {
        let (e, s, radial_vec, dist, mid) = edge_profile[2 * j + 1];
        // a segment end is at most one arc length from the centre
        if s <= 0.0 || s >= geom.peg_length || dist == 0.0 || dist > geom.r + 2.0 * half * hole_r {
            continue;
        }
        let a = edge_profile[2 * j].4;
        let b = edge_profile[(2 * j + 2) % (2 * samples)].4;
        add_segment(
            &mut acc,
            e,
            radial_vec.scale(-1.0 / dist),
            [band(mid, a), band(mid, b)],
        );
    }

    let wrench = Wrench::new(acc.force, acc.moment, Frame::PegTip);
    // same rule as classify_phase; any contact counts as at least search
    let phase = if acc.points.is_empty() {
        Phase::Free
    } else if tip.z() < hole.z() && rim_inside {
        Phase::Insertion
    } else {
        Phase::Search
    };
    Ok(ContactResult {
        wrench,
        phase,
        contact_points: acc.points,
    })
}

/// Whether no rim sample rests on the plate top: every sample is either
/// within the hole radius or overlaps the hole wall more in depth than
/// radially, so it is resolved as wall contact.
pub fn rim_inside_hole(geom: &PegHoleGeometry, pose: &PegPose) -> bool {
    let rot = rotation_xyz(&pose.orientation);
    let hole = geom.hole_center;
    let hole_r = geom.hole_radius();
    let n = geom.rim_points as f64;
    (0..geom.rim_points).all(|i| {
        let theta = 2.0 * PI * (i as f64 + 0.5) / n;
        let local = Vec3::new(geom.r * theta.cos(), geom.r * theta.sin(), 0.0);
        let q = pose.tip_position + rotate(&rot, &local);
        let rho = (q.x() - hole.x()).hypot(q.y() - hole.y());
        rho < hole_r || hole.z() - q.z() > rho - hole_r
    })
}

/// Phase label from pose and measured wrench.
///
/// Insertion: tip below the surface with the rim inside the hole.
/// Search: pressing force above `f_thresh`, or above the lowered threshold
/// `f_thresh (1 - hysteresis)` when already searching. Free otherwise.
pub fn classify_phase(
    geom: &PegHoleGeometry,
    pose: &PegPose,
    wrench: &Wrench,
    previous: Phase,
) -> Phase {
    if pose.tip_position.z() < geom.hole_center.z() && rim_inside_hole(geom, pose) {
        return Phase::Insertion;
    }
    let threshold = if previous == Phase::Search {
        geom.f_thresh * (1.0 - geom.hysteresis)
    } else {
        geom.f_thresh
    };
    if wrench.f.z().abs() > threshold {
        Phase::Search
    } else {
        Phase::Free
    }
}

/// Mirror map across the xz-plane for 6-vectors: negates `y`, `rx`, `rz`.
pub fn mirror_xz() -> Mat6 {
    Mat6::from_diagonal(&Vec6([1.0, -1.0, 1.0, -1.0, 1.0, -1.0]))
}
