use super::json::{real, string, ObjectWriter};
use super::numbered_lines;
use super::recording::Recording;
use crate::types::{Joint, Point3D, SkeletonFrame};
use serde::Deserialize;
use std::io::{self, Read, Write};
use thiserror::Error;

pub const FORMAT_TAG: &str = "skelscript";
pub const VERSION: u64 = 1;

/// Rest pose used for joints no segment mentions.
pub const REST_SHOULDER: Point3D = Point3D::new(0.0, 0.5, 2.0);
pub const REST_HAND_LEFT: Point3D = Point3D::new(-0.2, 0.3, 2.0);
pub const REST_HAND_RIGHT: Point3D = Point3D::new(0.2, 0.3, 2.0);

pub fn rest_position(joint: Joint) -> Point3D {
    match joint {
        Joint::HandLeft => REST_HAND_LEFT,
        Joint::HandRight => REST_HAND_RIGHT,
        Joint::ShoulderCenter => REST_SHOULDER,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interp {
    Linear,
    Hold,
}

impl Interp {
    pub fn tag(self) -> &'static str {
        match self {
            Interp::Linear => "linear",
            Interp::Hold => "hold",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub joint: Joint,
    pub interp: Interp,
    /// `(t_ms, position)` waypoints.
    pub points: Vec<(u64, Point3D)>,
}

impl Segment {
    pub fn new(joint: Joint, interp: Interp, points: Vec<(u64, Point3D)>) -> Self {
        Self { joint, interp, points }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryScript {
    pub fps: f64,
    pub segments: Vec<Segment>,
}

impl Default for TrajectoryScript {
    fn default() -> Self {
        Self { fps: 30.0, segments: Vec::new() }
    }
}

#[derive(Debug, Error)]
pub enum ScriptError {
    #[error("script has no waypoints")]
    EmptyScript,
    #[error("fps must be positive, got {0}")]
    InvalidFps(f64),
    #[error("joint `{joint}`: waypoint times must strictly increase ({t} after {prev})")]
    NonIncreasingTime { joint: &'static str, t: u64, prev: u64 },
    #[error("joint `{joint}`: waypoint at t={t} is not a valid position")]
    InvalidPoint { joint: &'static str, t: u64 },
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: malformed: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

struct Waypoint {
    t: u64,
    p: Point3D,
    segment: usize,
    interp: Interp,
}

impl TrajectoryScript {
    pub fn validate(&self) -> Result<(), ScriptError> {
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(ScriptError::InvalidFps(self.fps));
        }
        if self.segments.iter().all(|s| s.points.is_empty()) {
            return Err(ScriptError::EmptyScript);
        }
        for joint in Joint::ALL {
            let mut prev: Option<u64> = None;
            for (t, p) in self.segments.iter().filter(|s| s.joint == joint).flat_map(|s| &s.points) {
                if !p.is_finite() || p.z < 0.0 {
                    return Err(ScriptError::InvalidPoint { joint: joint.key(), t: *t });
                }
                if let Some(prev) = prev.filter(|&prev| *t <= prev) {
                    return Err(ScriptError::NonIncreasingTime { joint: joint.key(), t: *t, prev });
                }
                prev = Some(*t);
            }
        }
        Ok(())
    }

    fn waypoints(&self, joint: Joint) -> Vec<Waypoint> {
        self.segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.joint == joint)
            .flat_map(|(i, s)| s.points.iter().map(move |&(t, p)| Waypoint { t, p, segment: i, interp: s.interp }))
            .collect()
    }

    /// Last waypoint time over all joints.
    pub fn duration_ms(&self) -> u64 {
        self.segments.iter().flat_map(|s| s.points.last()).map(|(t, _)| *t).max().unwrap_or(0)
    }
}

/// Position at `t` along a joint's waypoints. Before the first and after the
/// last waypoint the end value holds; between two waypoints of the same
/// linear segment the position is interpolated, otherwise the earlier
/// waypoint holds.
fn position_at(way: &[Waypoint], t: u64) -> Option<Point3D> {
    let first = way.first()?;
    if t <= first.t {
        return Some(first.p);
    }
    let i = way.partition_point(|w| w.t <= t) - 1;
    let a = &way[i];
    let Some(b) = way.get(i + 1) else {
        return Some(a.p);
    };
    if a.segment == b.segment && a.interp == Interp::Linear {
        let f = (t - a.t) as f64 / (b.t - a.t) as f64;
        Some(a.p.add(b.p.sub(a.p).scale(f)))
    } else {
        Some(a.p)
    }
}

/// Frame timestamps `round(i·1000/fps)` up to `end_ms`, duplicates dropped.
pub fn frame_times(fps: f64, end_ms: u64) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for i in 0u64.. {
        let t = (i as f64 * 1000.0 / fps).round() as u64;
        if t > end_ms {
            break;
        }
        if out.last() != Some(&t) {
            out.push(t);
        }
    }
    out
}

/// Renders a script into a recording. Deterministic.
pub fn generate(script: &TrajectoryScript) -> Result<Recording, ScriptError> {
    script.validate()?;
    let ways: Vec<Vec<Waypoint>> = Joint::ALL.iter().map(|&j| script.waypoints(j)).collect();
    let at = |k: usize, t: u64| position_at(&ways[k], t).unwrap_or_else(|| rest_position(Joint::ALL[k]));
    let frames = frame_times(script.fps, script.duration_ms())
        .into_iter()
        .map(|t| SkeletonFrame { t, hand_left: at(0, t), hand_right: at(1, t), shoulder_center: at(2, t) })
        .collect();
    Ok(Recording::new(script.fps, frames))
}

pub fn header_line(fps: f64) -> String {
    ObjectWriter::new().str("fmt", FORMAT_TAG).int("v", VERSION).raw("fps", &real(fps)).finish()
}

pub fn segment_line(s: &Segment) -> String {
    let points: Vec<String> =
        s.points.iter().map(|(t, p)| format!("[{t},{},{},{}]", real(p.x), real(p.y), real(p.z))).collect();
    ObjectWriter::new()
        .raw("joint", &string(s.joint.key()))
        .str("interp", s.interp.tag())
        .raw("points", &format!("[{}]", points.join(",")))
        .finish()
}

impl TrajectoryScript {
    pub fn to_text(&self) -> String {
        let mut out = header_line(self.fps);
        out.push('\n');
        for s in &self.segments {
            out.push_str(&segment_line(s));
            out.push('\n');
        }
        out
    }

    /// Parses and validates a script document.
    pub fn from_text(text: &str) -> Result<Self, ScriptError> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Header {
            fmt: String,
            v: u64,
            #[serde(default = "default_fps")]
            fps: f64,
        }
        fn default_fps() -> f64 {
            30.0
        }
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct SegmentLine {
            joint: String,
            interp: String,
            points: Vec<[f64; 4]>,
        }

        let mut lines = numbered_lines(text);
        let (_, header) = lines.next().ok_or_else(|| ScriptError::BadHeader("empty input".into()))?;
        let h: Header = serde_json::from_str(header).map_err(|e| ScriptError::BadHeader(e.to_string()))?;
        if h.fmt != FORMAT_TAG || h.v != VERSION {
            return Err(ScriptError::BadHeader(format!("expected {FORMAT_TAG} v{VERSION}, got {} v{}", h.fmt, h.v)));
        }
        let mut script = TrajectoryScript { fps: h.fps, segments: Vec::new() };
        for (line, body) in lines {
            let bad = |reason: String| ScriptError::MalformedLine { line, reason };
            let s: SegmentLine = serde_json::from_str(body).map_err(|e| bad(e.to_string()))?;
            let joint = Joint::from_key(&s.joint).ok_or_else(|| bad(format!("unknown joint `{}`", s.joint)))?;
            let interp = match s.interp.as_str() {
                "linear" => Interp::Linear,
                "hold" => Interp::Hold,
                other => return Err(bad(format!("unknown interpolation `{other}`"))),
            };
            let mut points = Vec::with_capacity(s.points.len());
            for [t, x, y, z] in s.points {
                if !(t >= 0.0 && t.fract() == 0.0 && t < 9.0e15) {
                    return Err(bad(format!("waypoint time {t} is not a non-negative integer")));
                }
                points.push((t as u64, Point3D::new(x, y, z)));
            }
            script.segments.push(Segment { joint, interp, points });
        }
        script.validate()?;
        Ok(script)
    }
}

pub fn read_script(mut source: impl Read) -> Result<TrajectoryScript, ScriptError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    TrajectoryScript::from_text(&text)
}

pub fn write_script(script: &TrajectoryScript, mut sink: impl Write) -> io::Result<()> {
    sink.write_all(script.to_text().as_bytes())?;
    sink.flush()
}
