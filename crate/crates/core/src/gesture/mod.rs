//! Gesture state machines over filtered skeleton frames.
//!
//! Hand roles: the left hand clicks (push toward the sensor) and cuts (fast
//! planar sweep); the right hand localizes the pointer, drags while the click
//! latch is held, rotates and balances. "Moving" is the continuous pointer
//! stream rather than a discrete event.
//!
//! Per frame the detectors run in a fixed order, so events sharing a
//! timestamp always come out as Click < Cut < Drag < Rotation < Balance.

mod balance;
mod click;
mod cut;
mod drag;
mod rotation;

pub use balance::BalanceMeter;
pub use click::{ClickDetector, ClickTransition, BASELINE_SPAN_MS};
pub use cut::{CutDetector, CutSample};
pub use drag::DragDetector;
pub use rotation::{wrap_angle, RotationDetector};

use crate::config::GestureThresholds;
use crate::filter::estimate_velocity;
use crate::pointer::{map_hand_to_pointer, press_left, to_screen, ButtonState, MovementBox};
use crate::types::{GestureEvent, GestureKind, PointerSample, ScreenDims, SkeletonFrame};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub thresholds: GestureThresholds,
    pub screen: ScreenDims,
    /// Samples in the left-hand velocity window.
    pub velocity_window: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { thresholds: GestureThresholds::default(), screen: ScreenDims::default(), velocity_window: 5 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub pointer: PointerSample,
    pub events: Vec<GestureEvent>,
}

/// All per-session detector state.
#[derive(Debug, Clone)]
pub struct EngineState {
    click: ClickDetector,
    cut: CutDetector,
    drag: DragDetector,
    rotation: RotationDetector,
    balance: BalanceMeter,
    button: ButtonState,
    left_track: Vec<CutSample>,
    last_pointer: Option<PointerSample>,
}

impl EngineState {
    pub fn new(velocity_window: usize) -> Self {
        Self {
            click: ClickDetector::default(),
            cut: CutDetector::default(),
            drag: DragDetector::default(),
            rotation: RotationDetector::default(),
            balance: BalanceMeter::default(),
            button: ButtonState::default(),
            left_track: Vec::with_capacity(velocity_window.max(2)),
            last_pointer: None,
        }
    }

    pub fn button(&self) -> ButtonState {
        self.button
    }

    pub fn last_pointer(&self) -> Option<PointerSample> {
        self.last_pointer
    }

    pub fn cut_active(&self) -> bool {
        self.cut.is_active()
    }

    pub fn drag_active(&self) -> bool {
        self.drag.is_dragging()
    }
}

#[derive(Debug, Clone)]
pub struct GestureEngine {
    config: EngineConfig,
    state: EngineState,
}

impl GestureEngine {
    pub fn new(config: EngineConfig) -> Self {
        Self { state: EngineState::new(config.velocity_window), config }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn state(&self) -> &EngineState {
        &self.state
    }

    /// Advances every detector by one frame. The pointer follows the right
    /// hand through `mbox`.
    pub fn step(&mut self, frame: &SkeletonFrame, mbox: &MovementBox) -> StepOutput {
        let th = &self.config.thresholds;
        let screen = self.config.screen;
        let st = &mut self.state;
        let t = frame.t;
        let pointer = map_hand_to_pointer(mbox.origin, frame.hand_right, mbox, t);
        let cursor = to_screen(&pointer, screen);
        let mut events = Vec::new();

        let mut edge = None;
        if let Some(transition) = st.click.step(t, frame.hand_left.z, th) {
            let pressed = transition == ClickTransition::Press;
            if pressed {
                events.push(GestureEvent::new(t, GestureKind::Click { pos: cursor }));
            }
            let (button, e) = press_left(st.button, pressed);
            st.button = button;
            edge = e;
        }

        let left_screen = to_screen(&map_hand_to_pointer(mbox.origin, frame.hand_left, mbox, t), screen);
        if st.left_track.len() == self.config.velocity_window.max(2) {
            st.left_track.remove(0);
        }
        st.left_track.push(CutSample { t, hand: frame.hand_left, screen: left_screen });
        let window: Vec<_> = st.left_track.iter().map(|s| (s.t, s.hand)).collect();
        let speed = estimate_velocity(&window).ok().map(|m| m.planar_speed());
        st.cut.step(&st.left_track, speed, th, &mut events);

        events.extend(st.drag.step(edge, t));
        events.extend(st.rotation.step(t, frame.hand_right.x, frame.hand_right.y, th));
        events.extend(st.balance.step(t, frame.hand_right.y, th));

        st.last_pointer = Some(pointer);
        StepOutput { pointer, events }
    }

    /// Flushes episodes still open at end of stream.
    pub fn finish(&mut self) -> Vec<GestureEvent> {
        let mut out = Vec::new();
        self.state.cut.finish(&mut out);
        out
    }
}
