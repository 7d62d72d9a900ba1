//! One stream's full path: validation, per-hand filtering, movement box,
//! gesture engine.

use crate::config::Config;
use crate::filter::JointFilter;
use crate::gesture::{EngineConfig, GestureEngine, StepOutput};
use crate::pointer::MovementBox;
use crate::types::{FrameError, FrameValidator, GestureEvent, PointerSample, RawFrame, SkeletonFrame};

#[derive(Debug, Clone)]
pub struct Pipeline {
    config: Config,
    validator: FrameValidator,
    left: JointFilter,
    right: JointFilter,
    mbox: Option<MovementBox>,
    engine: GestureEngine,
}

impl Pipeline {
    /// Pipeline whose movement box is derived from the first frame's
    /// shoulder center (or the configured absolute origin).
    pub fn new(config: &Config) -> Self {
        let p = &config.pipeline;
        Self {
            config: *config,
            validator: FrameValidator::new(),
            left: JointFilter::new(p.smoothing_alpha, p.dead_zone_m),
            right: JointFilter::new(p.smoothing_alpha, p.dead_zone_m),
            mbox: None,
            engine: GestureEngine::new(EngineConfig {
                thresholds: config.gestures,
                screen: p.screen,
                velocity_window: p.velocity_window,
            }),
        }
    }

    /// Pipeline with a fixed, already calibrated box.
    pub fn with_box(config: &Config, mbox: MovementBox) -> Self {
        Self { mbox: Some(mbox), ..Self::new(config) }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn movement_box(&self) -> Option<MovementBox> {
        self.mbox
    }

    pub fn last_t(&self) -> Option<u64> {
        self.validator.last_t()
    }

    pub fn engine(&self) -> &GestureEngine {
        &self.engine
    }

    /// Validates and processes one raw frame. A rejected frame leaves the
    /// pipeline untouched.
    pub fn process(&mut self, raw: &RawFrame) -> Result<StepOutput, FrameError> {
        let frame = self.validator.accept(raw)?;
        Ok(self.step(frame))
    }

    pub fn process_frame(&mut self, frame: &SkeletonFrame) -> Result<StepOutput, FrameError> {
        self.process(&RawFrame::from(*frame))
    }

    fn step(&mut self, mut frame: SkeletonFrame) -> StepOutput {
        let mbox = *self.mbox.get_or_insert_with(|| self.config.pipeline.movement_box(frame.shoulder_center));
        frame.hand_left = self.left.apply(frame.hand_left);
        frame.hand_right = self.right.apply(frame.hand_right);
        self.engine.step(&frame, &mbox)
    }

    /// Flushes open episodes at end of stream. The events carry the last
    /// frame's timestamp; callers merging them into that frame's output
    /// should keep the same-timestamp family order.
    pub fn finish(&mut self) -> Vec<GestureEvent> {
        self.engine.finish()
    }
}

/// Everything a replay produces.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ReplayOutput {
    pub pointers: Vec<PointerSample>,
    pub events: Vec<GestureEvent>,
}

/// Runs an already validated frame sequence through a fresh pipeline.
pub fn replay(config: &Config, frames: &[SkeletonFrame]) -> Result<ReplayOutput, FrameError> {
    let mut pipeline = Pipeline::new(config);
    let mut out = ReplayOutput::default();
    for frame in frames {
        let step = pipeline.process_frame(frame)?;
        out.pointers.push(step.pointer);
        out.events.extend(step.events);
    }
    for e in pipeline.finish() {
        let key = (e.t, e.kind.family().emit_rank());
        let at = out.events.partition_point(|x| (x.t, x.kind.family().emit_rank()) <= key);
        out.events.insert(at, e);
    }
    Ok(out)
}
