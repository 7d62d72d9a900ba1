//! Noise handling ahead of gesture detection: exponential smoothing, a
//! dead zone against millimeter jitter, and endpoint-difference velocity.
//!
//! Per joint the stages run in the order smooth → dead zone → velocity, so
//! velocity sees exactly the positions the gesture detectors see.

use crate::types::Point3D;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmootherState {
    pub last: Option<Point3D>,
    pub alpha: f64,
}

impl SmootherState {
    pub fn new(alpha: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&alpha));
        Self { last: None, alpha }
    }
}

/// Exponential smoothing, `alpha·raw + (1−alpha)·last` per component.
pub fn smooth(state: SmootherState, raw: Point3D) -> (SmootherState, Point3D) {
    let out = match state.last {
        None => raw,
        Some(last) => {
            let a = state.alpha;
            let mix = |r: f64, l: f64| a * r + (1.0 - a) * l;
            Point3D::new(mix(raw.x, last.x), mix(raw.y, last.y), mix(raw.z, last.z))
        }
    };
    (SmootherState { last: Some(out), ..state }, out)
}

/// Holds `prev_out` unless `candidate` moved at least `radius_m` away.
pub fn dead_zone(prev_out: Point3D, candidate: Point3D, radius_m: f64) -> Point3D {
    if candidate.distance(prev_out) < radius_m {
        prev_out
    } else {
        candidate
    }
}

/// Motion cue: direction plus intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionSample {
    /// m/s
    pub velocity: Point3D,
    pub speed: f64,
    /// Unit vector; `None` when the joint did not move.
    pub direction: Option<Point3D>,
}

impl MotionSample {
    pub fn from_velocity(velocity: Point3D) -> Self {
        let speed = velocity.norm();
        let direction = (speed > 0.0).then(|| velocity.scale(1.0 / speed));
        Self { velocity, speed, direction }
    }

    /// Speed restricted to the screen-parallel x–y plane.
    pub fn planar_speed(&self) -> f64 {
        self.velocity.x.hypot(self.velocity.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VelocityError {
    #[error("velocity window needs at least 2 samples, got {0}")]
    WindowTooShort(usize),
    #[error("velocity window spans zero time")]
    ZeroTimeSpan,
}

/// Endpoint-difference velocity over a window of `(t_ms, position)` samples.
pub fn estimate_velocity(window: &[(u64, Point3D)]) -> Result<MotionSample, VelocityError> {
    let (Some(&(t0, p0)), Some(&(t1, p1))) = (window.first(), window.last()) else {
        return Err(VelocityError::WindowTooShort(window.len()));
    };
    if window.len() < 2 {
        return Err(VelocityError::WindowTooShort(window.len()));
    }
    if t1 <= t0 {
        return Err(VelocityError::ZeroTimeSpan);
    }
    let dt_s = (t1 - t0) as f64 / 1000.0;
    Ok(MotionSample::from_velocity(p1.sub(p0).scale(1.0 / dt_s)))
}

/// Smoothing followed by the dead zone, for one joint.
#[derive(Debug, Clone)]
pub struct JointFilter {
    smoother: SmootherState,
    dead_zone_m: f64,
    held: Option<Point3D>,
}

impl JointFilter {
    pub fn new(alpha: f64, dead_zone_m: f64) -> Self {
        Self { smoother: SmootherState::new(alpha), dead_zone_m, held: None }
    }

    pub fn apply(&mut self, raw: Point3D) -> Point3D {
        let (next, smoothed) = smooth(self.smoother, raw);
        self.smoother = next;
        let out = match self.held {
            None => smoothed,
            Some(prev) => dead_zone(prev, smoothed, self.dead_zone_m),
        };
        self.held = Some(out);
        out
    }
}
