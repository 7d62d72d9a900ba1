//! Left-hand slicing motion.
//!
//! An episode opens when the planar (x–y) speed of the velocity window
//! reaches the release speed (`cut_release_mps`, capped at `cut_speed_mps`).
//! The episode is backdated to the oldest sample of that window: its start
//! time, start point and initial path length all come from the window. It
//! closes on the first frame whose speed falls below the release speed.
//! `CutStart` is announced on the first frame at which the episode has
//! `cut_min_path_m` of planar path, `cut_min_dur_ms` of duration and a peak
//! speed of at least `cut_speed_mps`, so episodes that never qualify are
//! dropped without a trace and every announced start gets its `CutEnd`.
//!
//! Episode boundaries do not move with `cut_speed_mps` (as long as it stays
//! above the release speed), so raising it can only drop cuts.

use crate::config::GestureThresholds;
use crate::types::{GestureEvent, GestureKind, Point3D, ScreenPos};

fn planar(a: Point3D, b: Point3D) -> f64 {
    (b.x - a.x).hypot(b.y - a.y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Episode {
    start_t: u64,
    start_pos: ScreenPos,
    path_m: f64,
    peak_mps: f64,
    last: Point3D,
    last_t: u64,
    last_pos: ScreenPos,
    announced: bool,
}

impl Episode {
    fn qualifies(&self, th: &GestureThresholds) -> bool {
        self.path_m >= th.cut_min_path_m
            && self.last_t - self.start_t >= th.cut_min_dur_ms
            && self.peak_mps >= th.cut_speed_mps
    }
}

/// One hand sample as seen by the cut detector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutSample {
    pub t: u64,
    pub hand: Point3D,
    pub screen: ScreenPos,
}

#[derive(Debug, Clone, Default)]
pub struct CutDetector {
    active: Option<Episode>,
}

impl CutDetector {
    pub fn is_active(&self) -> bool {
        self.active.is_some()
    }

    /// `window` is the velocity window ending with the current sample and
    /// `planar_speed` its planar speed (`None` before two samples exist).
    pub fn step(
        &mut self,
        window: &[CutSample],
        planar_speed: Option<f64>,
        th: &GestureThresholds,
        out: &mut Vec<GestureEvent>,
    ) {
        let Some(&now) = window.last() else { return };
        let release = th.cut_release_mps.min(th.cut_speed_mps);
        let speed = planar_speed.unwrap_or(0.0);
        let fast = planar_speed.is_some_and(|s| s >= release);
        match self.active.as_mut() {
            None => {
                if !fast {
                    return;
                }
                let first = window[0];
                let path_m = window.windows(2).map(|w| planar(w[0].hand, w[1].hand)).sum();
                let mut ep = Episode {
                    start_t: first.t,
                    start_pos: first.screen,
                    path_m,
                    peak_mps: speed,
                    last: now.hand,
                    last_t: now.t,
                    last_pos: now.screen,
                    announced: false,
                };
                if ep.qualifies(th) {
                    ep.announced = true;
                    out.push(GestureEvent::new(now.t, GestureKind::CutStart));
                }
                self.active = Some(ep);
            }
            Some(ep) => {
                ep.path_m += planar(ep.last, now.hand);
                ep.peak_mps = ep.peak_mps.max(speed);
                ep.last = now.hand;
                ep.last_t = now.t;
                ep.last_pos = now.screen;
                if !ep.announced && ep.qualifies(th) {
                    ep.announced = true;
                    out.push(GestureEvent::new(now.t, GestureKind::CutStart));
                }
                if !fast {
                    if ep.announced {
                        out.push(GestureEvent::new(now.t, GestureKind::CutEnd { seg: [ep.start_pos, now.screen] }));
                    }
                    self.active = None;
                }
            }
        }
    }

    /// Closes an announced episode at end of stream.
    pub fn finish(&mut self, out: &mut Vec<GestureEvent>) {
        if let Some(ep) = self.active.take() {
            if ep.announced {
                out.push(GestureEvent::new(ep.last_t, GestureKind::CutEnd { seg: [ep.start_pos, ep.last_pos] }));
            }
        }
    }
}
