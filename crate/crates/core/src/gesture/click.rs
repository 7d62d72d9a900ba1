//! Left-hand push toward the sensor.
//!
//! The baseline depth is the median left-hand z over the preceding second of
//! idle frames. A click fires when the hand is at least `click_dz_m` closer
//! than the baseline, the hand was last at rest (less than half that depth)
//! no more than `click_window_ms` earlier, and the previous click is at least
//! `click_refractory_ms` old. The press releases once the hand returns to
//! within `click_dz_m / 2` of the frozen baseline.

use crate::config::GestureThresholds;
use crate::pointer::median;
use std::collections::VecDeque;

pub const BASELINE_SPAN_MS: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClickTransition {
    Press,
    Release,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Phase {
    Idle,
    Pressed { baseline: f64 },
}

#[derive(Debug, Clone)]
pub struct ClickDetector {
    history: VecDeque<(u64, f64)>,
    baseline: Option<f64>,
    phase: Phase,
    rest_t: Option<u64>,
    last_click_t: Option<u64>,
}

impl Default for ClickDetector {
    fn default() -> Self {
        Self { history: VecDeque::new(), baseline: None, phase: Phase::Idle, rest_t: None, last_click_t: None }
    }
}

impl ClickDetector {
    pub fn is_pressed(&self) -> bool {
        matches!(self.phase, Phase::Pressed { .. })
    }

    pub fn step(&mut self, t: u64, z: f64, th: &GestureThresholds) -> Option<ClickTransition> {
        match self.phase {
            Phase::Pressed { baseline } => {
                if baseline - z <= th.click_dz_m / 2.0 {
                    self.phase = Phase::Idle;
                    self.rest_t = Some(t);
                    self.history.push_back((t, z));
                    Some(ClickTransition::Release)
                } else {
                    None
                }
            }
            Phase::Idle => {
                while self.history.front().is_some_and(|&(ts, _)| t - ts > BASELINE_SPAN_MS) {
                    self.history.pop_front();
                }
                if !self.history.is_empty() {
                    let mut zs: Vec<f64> = self.history.iter().map(|&(_, z)| z).collect();
                    self.baseline = Some(median(&mut zs));
                }
                let Some(baseline) = self.baseline else {
                    self.history.push_back((t, z));
                    return None;
                };
                let depth = baseline - z;
                if depth < th.click_dz_m / 2.0 {
                    self.rest_t = Some(t);
                }
                let recent_rest = self.rest_t.is_some_and(|r| t - r <= th.click_window_ms);
                let refractory = self.last_click_t.is_some_and(|c| t - c < th.click_refractory_ms);
                if depth >= th.click_dz_m && recent_rest && !refractory {
                    self.phase = Phase::Pressed { baseline };
                    self.last_click_t = Some(t);
                    return Some(ClickTransition::Press);
                }
                self.history.push_back((t, z));
                None
            }
        }
    }
}
