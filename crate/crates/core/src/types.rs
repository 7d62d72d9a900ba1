//! Shared domain vocabulary: joints, frames, pointer coordinates, gesture events.
//!
//! Skeleton space is fixed as x to the subject's right (as seen from the
//! sensor), y up, z away from the sensor, all in meters. Timestamps are
//! integer milliseconds since stream start.

use thiserror::Error;

/// Upper end of the internal absolute pointer grid. Note this is one past the
/// 16-bit maximum; the wire boundary clamps to [`WIRE_MAX`].
pub const POINTER_MAX: u32 = 65536;
/// Largest coordinate ever written to the service wire.
pub const WIRE_MAX: u32 = 65535;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3D {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3D {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: Point3D) -> Point3D {
        Point3D::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Point3D) -> Point3D {
        Point3D::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn scale(self, k: f64) -> Point3D {
        Point3D::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(self, o: Point3D) -> f64 {
        self.sub(o).norm()
    }
}

/// Tracked joints carried by every frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Joint {
    HandLeft,
    HandRight,
    ShoulderCenter,
}

impl Joint {
    pub const ALL: [Joint; 3] = [Joint::HandLeft, Joint::HandRight, Joint::ShoulderCenter];

    /// Short key used by the line formats (`hl`, `hr`, `sc`).
    pub fn key(self) -> &'static str {
        match self {
            Joint::HandLeft => "hl",
            Joint::HandRight => "hr",
            Joint::ShoulderCenter => "sc",
        }
    }

    pub fn from_key(key: &str) -> Option<Joint> {
        match key {
            "hl" => Some(Joint::HandLeft),
            "hr" => Some(Joint::HandRight),
            "sc" => Some(Joint::ShoulderCenter),
            _ => None,
        }
    }
}

/// Which hand an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn joint(self) -> Joint {
        match self {
            Hand::Left => Joint::HandLeft,
            Hand::Right => Joint::HandRight,
        }
    }
}

impl std::str::FromStr for Hand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Hand::Left),
            "right" => Ok(Hand::Right),
            other => Err(format!("unknown hand `{other}` (expected left|right)")),
        }
    }
}

/// One validated skeleton sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkeletonFrame {
    pub t: u64,
    pub hand_left: Point3D,
    pub hand_right: Point3D,
    pub shoulder_center: Point3D,
}

impl SkeletonFrame {
    pub fn joint(&self, joint: Joint) -> Point3D {
        match joint {
            Joint::HandLeft => self.hand_left,
            Joint::HandRight => self.hand_right,
            Joint::ShoulderCenter => self.shoulder_center,
        }
    }

    pub fn joint_mut(&mut self, joint: Joint) -> &mut Point3D {
        match joint {
            Joint::HandLeft => &mut self.hand_left,
            Joint::HandRight => &mut self.hand_right,
            Joint::ShoulderCenter => &mut self.shoulder_center,
        }
    }
}

/// Candidate frame as parsed from a recording line or a wire message, before
/// any invariant has been checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawFrame {
    pub t: i64,
    pub hand_left: Option<[f64; 3]>,
    pub hand_right: Option<[f64; 3]>,
    pub shoulder_center: Option<[f64; 3]>,
}

impl From<SkeletonFrame> for RawFrame {
    fn from(f: SkeletonFrame) -> Self {
        RawFrame {
            t: f.t as i64,
            hand_left: Some(f.hand_left.to_array()),
            hand_right: Some(f.hand_right.to_array()),
            shoulder_center: Some(f.shoulder_center.to_array()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    #[error("joint `{joint}` has a non-finite coordinate")]
    NonFiniteCoordinate { joint: &'static str },
    #[error("joint `{joint}` has negative depth z={z}")]
    NegativeDepth { joint: &'static str, z: f64 },
    #[error("negative timestamp {0}")]
    NegativeTimestamp(i64),
    #[error("missing joint `{0}`")]
    MissingJoint(&'static str),
    #[error("timestamp {t} does not follow previous accepted timestamp {prev}")]
    NonMonotoneTimestamp { t: u64, prev: u64 },
}

impl FrameError {
    /// Stable snake_case code used on the wire.
    pub fn code(&self) -> &'static str {
        match self {
            FrameError::NonMonotoneTimestamp { .. } => "non_monotone_timestamp",
            _ => "frame_invalid",
        }
    }
}

/// Checks a raw frame against every [`SkeletonFrame`] invariant. `prev_t` is
/// the timestamp of the previously accepted frame of the same stream.
pub fn validate_frame(raw: &RawFrame, prev_t: Option<u64>) -> Result<SkeletonFrame, FrameError> {
    if raw.t < 0 {
        return Err(FrameError::NegativeTimestamp(raw.t));
    }
    let t = raw.t as u64;
    let joint = |joint: Joint, value: Option<[f64; 3]>| -> Result<Point3D, FrameError> {
        let p = Point3D::from_array(value.ok_or(FrameError::MissingJoint(joint.key()))?);
        if !p.is_finite() {
            return Err(FrameError::NonFiniteCoordinate { joint: joint.key() });
        }
        if p.z < 0.0 {
            return Err(FrameError::NegativeDepth { joint: joint.key(), z: p.z });
        }
        Ok(p)
    };
    let frame = SkeletonFrame {
        t,
        hand_left: joint(Joint::HandLeft, raw.hand_left)?,
        hand_right: joint(Joint::HandRight, raw.hand_right)?,
        shoulder_center: joint(Joint::ShoulderCenter, raw.shoulder_center)?,
    };
    if let Some(prev) = prev_t {
        if t <= prev {
            return Err(FrameError::NonMonotoneTimestamp { t, prev });
        }
    }
    Ok(frame)
}

/// Caller-owned ordering state for one stream.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrameValidator {
    last_t: Option<u64>,
}

impl FrameValidator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn last_t(&self) -> Option<u64> {
        self.last_t
    }

    /// Validates `raw`; the stored timestamp only advances on success.
    pub fn accept(&mut self, raw: &RawFrame) -> Result<SkeletonFrame, FrameError> {
        let frame = validate_frame(raw, self.last_t)?;
        self.last_t = Some(frame.t);
        Ok(frame)
    }
}

/// Absolute pointer position on the `[0, 65536]²` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointerSample {
    pub u: u32,
    pub v: u32,
    pub t: u64,
}

impl PointerSample {
    /// Coordinates clamped into the 16-bit wire range.
    pub fn wire(&self) -> (u32, u32) {
        (self.u.min(WIRE_MAX), self.v.min(WIRE_MAX))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScreenDims {
    pub width_px: u32,
    pub height_px: u32,
}

impl Default for ScreenDims {
    fn default() -> Self {
        Self { width_px: 640, height_px: 480 }
    }
}

impl ScreenDims {
    pub fn new(width_px: u32, height_px: u32) -> Option<Self> {
        (width_px >= 1 && height_px >= 1).then_some(Self { width_px, height_px })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScreenPos {
    pub px: u32,
    pub py: u32,
}

impl ScreenPos {
    pub const fn new(px: u32, py: u32) -> Self {
        Self { px, py }
    }

    pub fn distance(self, o: ScreenPos) -> f64 {
        let dx = self.px as f64 - o.px as f64;
        let dy = self.py as f64 - o.py as f64;
        dx.hypot(dy)
    }
}

/// Kind-specific gesture data. Payload-carrying kinds hold their payload
/// inline so a payload exists exactly when the kind requires one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GestureKind {
    Click {
        pos: ScreenPos,
    },
    CutStart,
    CutEnd {
        seg: [ScreenPos; 2],
    },
    DragStart,
    DragEnd,
    /// Signed accumulated angle, counter-clockwise positive in the x–y plane.
    Rotation {
        deg: f64,
    },
    Balance {
        score: f64,
    },
}

/// The five gesture families used for evaluation columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GestureFamily {
    Click,
    Cutting,
    Drag,
    Balancing,
    Rotation,
}

impl GestureFamily {
    /// Position among events sharing a timestamp.
    pub fn emit_rank(self) -> u8 {
        match self {
            GestureFamily::Click => 0,
            GestureFamily::Cutting => 1,
            GestureFamily::Drag => 2,
            GestureFamily::Rotation => 3,
            GestureFamily::Balancing => 4,
        }
    }

    /// Column order of the accuracy table.
    pub const COLUMNS: [GestureFamily; 5] = [
        GestureFamily::Click,
        GestureFamily::Cutting,
        GestureFamily::Drag,
        GestureFamily::Balancing,
        GestureFamily::Rotation,
    ];

    pub fn label(self) -> &'static str {
        match self {
            GestureFamily::Click => "Click",
            GestureFamily::Cutting => "Cutting",
            GestureFamily::Drag => "Drag",
            GestureFamily::Balancing => "Balancing",
            GestureFamily::Rotation => "Rotation",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            GestureFamily::Click => "click",
            GestureFamily::Cutting => "cutting",
            GestureFamily::Drag => "drag",
            GestureFamily::Balancing => "balancing",
            GestureFamily::Rotation => "rotation",
        }
    }
}

impl GestureKind {
    /// Wire tag of the kind.
    pub fn tag(&self) -> &'static str {
        match self {
            GestureKind::Click { .. } => "click",
            GestureKind::CutStart => "cut_start",
            GestureKind::CutEnd { .. } => "cut_end",
            GestureKind::DragStart => "drag_start",
            GestureKind::DragEnd => "drag_end",
            GestureKind::Rotation { .. } => "rotation",
            GestureKind::Balance { .. } => "balance",
        }
    }

    /// Tie-break rank for events sharing a timestamp:
    /// Click < Cut < Drag < Rotation < Balance.
    pub fn rank(&self) -> u8 {
        match self {
            GestureKind::Click { .. } => 0,
            GestureKind::CutStart | GestureKind::CutEnd { .. } => 1,
            GestureKind::DragStart | GestureKind::DragEnd => 2,
            GestureKind::Rotation { .. } => 3,
            GestureKind::Balance { .. } => 4,
        }
    }

    pub fn family(&self) -> GestureFamily {
        match self {
            GestureKind::Click { .. } => GestureFamily::Click,
            GestureKind::CutStart | GestureKind::CutEnd { .. } => GestureFamily::Cutting,
            GestureKind::DragStart | GestureKind::DragEnd => GestureFamily::Drag,
            GestureKind::Rotation { .. } => GestureFamily::Rotation,
            GestureKind::Balance { .. } => GestureFamily::Balancing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GestureEvent {
    pub t: u64,
    pub kind: GestureKind,
}

impl GestureEvent {
    pub fn new(t: u64, kind: GestureKind) -> Self {
        Self { t, kind }
    }
}
