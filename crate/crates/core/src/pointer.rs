//! Hand-to-absolute-pointer mapping.
//!
//! A hand position inside the movement box is normalized onto the
//! `[0, 65536]` absolute grid, clamped at both ends, with the y axis flipped
//! so that raising the hand moves the cursor toward the top of the screen.
//! The grid deliberately tops out at 65536, not 65535.

use crate::types::{Hand, Point3D, PointerSample, ScreenDims, ScreenPos, SkeletonFrame, POINTER_MAX};
use thiserror::Error;

const GRID: f64 = POINTER_MAX as f64;

/// Calibrated reach rectangle. `origin` is its upper-left corner in skeleton
/// space (minimal x, maximal y).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MovementBox {
    pub origin: Point3D,
    pub move_width: f64,
    pub move_height: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxError {
    #[error("movement box extents must be positive and finite (width {0}, height {1})")]
    NonPositiveExtent(f64, f64),
    #[error("movement box origin must be finite")]
    NonFiniteOrigin,
}

impl MovementBox {
    pub fn new(origin: Point3D, move_width: f64, move_height: f64) -> Result<Self, BoxError> {
        if !origin.is_finite() {
            return Err(BoxError::NonFiniteOrigin);
        }
        if !(move_width.is_finite() && move_height.is_finite() && move_width > 0.0 && move_height > 0.0) {
            return Err(BoxError::NonPositiveExtent(move_width, move_height));
        }
        Ok(Self { origin, move_width, move_height })
    }

    /// Box anchored on the shoulder: origin at shoulder + (−0.25, +0.25, 0),
    /// 0.5 × 0.5 m.
    pub fn default_for_shoulder(shoulder: Point3D) -> Self {
        Self::anchored(shoulder, -0.25, 0.25, 0.5, 0.5)
    }

    pub fn anchored(shoulder: Point3D, dx: f64, dy: f64, width: f64, height: f64) -> Self {
        Self {
            origin: Point3D::new(shoulder.x + dx, shoulder.y + dy, shoulder.z),
            move_width: width,
            move_height: height,
        }
    }
}

/// Normalizes one axis: `d` is the signed offset from the box edge.
fn axis(d: f64, extent: f64) -> u32 {
    if d > extent {
        POINTER_MAX
    } else if d < 0.0 {
        0
    } else {
        // Banker's rounding, same as the integer conversion of the reference
        // implementation. The quotient lies in [0, 1] so the cast is exact.
        (d / extent * GRID).round_ties_even() as u32
    }
}

/// Maps `target` (usually the right hand) into absolute pointer space
/// relative to `origin`. Only x and y take part; z is ignored.
pub fn map_hand_to_pointer(origin: Point3D, target: Point3D, mbox: &MovementBox, t: u64) -> PointerSample {
    let d_width = target.x - origin.x;
    let d_height = origin.y - target.y;
    PointerSample { u: axis(d_width, mbox.move_width), v: axis(d_height, mbox.move_height), t }
}

fn screen_axis(coord: u32, extent: u32) -> u32 {
    // floor(coord / 65536 * extent), computed exactly in integers
    let scaled = (coord as u64 * extent as u64) / POINTER_MAX as u64;
    (scaled as u32).min(extent - 1)
}

/// Converts an absolute pointer sample to a pixel position.
pub fn to_screen(p: &PointerSample, screen: ScreenDims) -> ScreenPos {
    ScreenPos { px: screen_axis(p.u, screen.width_px), py: screen_axis(p.v, screen.height_px) }
}

/// Left-button latch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ButtonState {
    pub left_down: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ButtonEdge {
    Down,
    Up,
}

/// Sets the left button; an edge is reported only on an actual change.
pub fn press_left(state: ButtonState, is_press: bool) -> (ButtonState, Option<ButtonEdge>) {
    let edge = match (state.left_down, is_press) {
        (false, true) => Some(ButtonEdge::Down),
        (true, false) => Some(ButtonEdge::Up),
        _ => None,
    };
    (ButtonState { left_down: is_press }, edge)
}

pub const MIN_CALIBRATION_FRAMES: usize = 30;
const BOX_FLOOR_M: f64 = 0.1;
const DEGENERATE_EXTENT_M: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("calibration needs at least {MIN_CALIBRATION_FRAMES} frames, got {0}")]
    TooFewFrames(usize),
}

/// Result of a calibration sweep. `degenerate` is set when the observed
/// extent was under 1 cm on either axis and the 0.1 m floor took over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub mbox: MovementBox,
    pub degenerate: bool,
}

/// Derives a movement box from a reach sweep of one hand.
pub fn calibrate_box(frames: &[SkeletonFrame], hand: Hand) -> Result<Calibration, CalibrationError> {
    if frames.len() < MIN_CALIBRATION_FRAMES {
        return Err(CalibrationError::TooFewFrames(frames.len()));
    }
    let joint = hand.joint();
    let points: Vec<Point3D> = frames.iter().map(|f| f.joint(joint)).collect();
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &points {
        min_x = min_x.min(p.x);
        max_x = max_x.max(p.x);
        min_y = min_y.min(p.y);
        max_y = max_y.max(p.y);
    }
    let mut zs: Vec<f64> = points.iter().map(|p| p.z).collect();
    let z = median(&mut zs);
    let (width, height) = (max_x - min_x, max_y - min_y);
    Ok(Calibration {
        mbox: MovementBox {
            origin: Point3D::new(min_x, max_y, z),
            move_width: width.max(BOX_FLOOR_M),
            move_height: height.max(BOX_FLOOR_M),
        },
        degenerate: width < DEGENERATE_EXTENT_M || height < DEGENERATE_EXTENT_M,
    })
}

/// Median of a non-empty slice (mean of the middle pair for even lengths).
/// Reorders the slice.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}
