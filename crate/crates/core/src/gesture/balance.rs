//! Right-hand steadiness over non-overlapping windows.
//!
//! The frame that opens a window supplies the reference height and is not
//! scored itself. Every later frame is scored as in band when its height is
//! within `balance_band_m` of the reference. The first frame at or past
//! `balance_window_ms` after the opening frame is scored, closes the window
//! with a report, and opens the next window as its reference.

use crate::config::GestureThresholds;
use crate::types::{GestureEvent, GestureKind};

#[derive(Debug, Clone, Copy, PartialEq)]
struct Window {
    start_t: u64,
    reference_y: f64,
    in_band: u32,
    total: u32,
}

impl Window {
    fn open(t: u64, y: f64) -> Self {
        Self { start_t: t, reference_y: y, in_band: 0, total: 0 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BalanceMeter {
    window: Option<Window>,
}

impl BalanceMeter {
    pub fn step(&mut self, t: u64, y: f64, th: &GestureThresholds) -> Option<GestureEvent> {
        let Some(w) = self.window.as_mut() else {
            self.window = Some(Window::open(t, y));
            return None;
        };
        w.total += 1;
        if (y - w.reference_y).abs() <= th.balance_band_m {
            w.in_band += 1;
        }
        if t - w.start_t >= th.balance_window_ms {
            let score = w.in_band as f64 / w.total as f64;
            self.window = Some(Window::open(t, y));
            return Some(GestureEvent::new(t, GestureKind::Balance { score }));
        }
        None
    }
}
