//! Right-hand circling in the screen-parallel plane.
//!
//! Samples from the trailing `rot_window_ms` are kept. Each frame the swept
//! angle is recomputed about the window centroid over the trailing run of
//! samples that stay at least `rot_min_radius_m` from it; a sample inside
//! that radius breaks the run, which resets the accumulation. Samples up to
//! and including the previous detection are excluded. A detection fires once
//! the signed sum reaches `rot_min_angle_deg` in magnitude.

use crate::config::GestureThresholds;
use crate::types::{GestureEvent, GestureKind};
use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

pub const MIN_SAMPLES: usize = 3;

/// Wraps an angle difference into (−π, π].
pub fn wrap_angle(mut d: f64) -> f64 {
    while d > PI {
        d -= TAU;
    }
    while d <= -PI {
        d += TAU;
    }
    d
}

#[derive(Debug, Clone, Default)]
pub struct RotationDetector {
    samples: VecDeque<(u64, f64, f64)>,
    fired_at: Option<u64>,
}

impl RotationDetector {
    pub fn step(&mut self, t: u64, x: f64, y: f64, th: &GestureThresholds) -> Option<GestureEvent> {
        self.samples.push_back((t, x, y));
        while self.samples.front().is_some_and(|&(ts, _, _)| t - ts >= th.rot_window_ms) {
            self.samples.pop_front();
        }
        if self.samples.len() < MIN_SAMPLES {
            return None;
        }
        let n = self.samples.len() as f64;
        let cx = self.samples.iter().map(|s| s.1).sum::<f64>() / n;
        let cy = self.samples.iter().map(|s| s.2).sum::<f64>() / n;

        let run_start = self
            .samples
            .iter()
            .rposition(|&(ts, sx, sy)| {
                self.fired_at.is_some_and(|f| ts <= f) || (sx - cx).hypot(sy - cy) < th.rot_min_radius_m
            })
            .map_or(0, |i| i + 1);
        let run = self.samples.range(run_start..);
        let angles: Vec<f64> = run.map(|&(_, sx, sy)| (sy - cy).atan2(sx - cx)).collect();
        let swept: f64 = angles.windows(2).map(|w| wrap_angle(w[1] - w[0])).sum();
        let deg = swept.to_degrees();
        if deg.abs() >= th.rot_min_angle_deg {
            self.fired_at = Some(t);
            return Some(GestureEvent::new(t, GestureKind::Rotation { deg }));
        }
        None
    }
}
