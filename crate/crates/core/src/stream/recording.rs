use super::json::{real, triple, ObjectWriter};
use super::numbered_lines;
use crate::types::{validate_frame, FrameError, RawFrame, SkeletonFrame};
use serde::Deserialize;
use serde_json::Value;
use std::io::{self, Read, Write};
use thiserror::Error;

pub const FORMAT_TAG: &str = "skelrec";
pub const VERSION: u64 = 1;
pub const COORDS_TAG: &str = "x-right,y-up,z-away,m";

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: malformed: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: invalid frame: {cause}")]
    FrameInvalid { line: usize, cause: FrameError },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl StreamError {
    pub fn line(&self) -> Option<usize> {
        match self {
            StreamError::BadHeader(_) => Some(1),
            StreamError::MalformedLine { line, .. } | StreamError::FrameInvalid { line, .. } => Some(*line),
            StreamError::Io(_) => None,
        }
    }
}

/// A validated skeleton recording.
#[derive(Debug, Clone, PartialEq)]
pub struct Recording {
    pub fps: f64,
    pub frames: Vec<SkeletonFrame>,
}

impl Recording {
    pub fn new(fps: f64, frames: Vec<SkeletonFrame>) -> Self {
        Self { fps, frames }
    }

    pub fn to_text(&self) -> String {
        let mut out = header_line(self.fps);
        out.push('\n');
        for f in &self.frames {
            out.push_str(&frame_line(f));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, StreamError> {
        let mut lines = numbered_lines(text);
        let Some((_, header)) = lines.next() else {
            return Err(StreamError::BadHeader("empty input".into()));
        };
        let fps = parse_header(header)?;
        let mut frames = Vec::new();
        let mut prev = None;
        for (line, body) in lines {
            let value: Value =
                serde_json::from_str(body).map_err(|e| StreamError::MalformedLine { line, reason: e.to_string() })?;
            let raw = raw_frame_from_value(value).map_err(|reason| StreamError::MalformedLine { line, reason })?;
            let frame = validate_frame(&raw, prev).map_err(|cause| StreamError::FrameInvalid { line, cause })?;
            prev = Some(frame.t);
            frames.push(frame);
        }
        Ok(Self { fps, frames })
    }
}

pub fn header_line(fps: f64) -> String {
    ObjectWriter::new()
        .str("fmt", FORMAT_TAG)
        .int("v", VERSION)
        .raw("fps", &real(fps))
        .str("coords", COORDS_TAG)
        .finish()
}

fn parse_header(line: &str) -> Result<f64, StreamError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Header {
        fmt: String,
        v: u64,
        fps: f64,
        coords: String,
    }
    let h: Header = serde_json::from_str(line).map_err(|e| StreamError::BadHeader(e.to_string()))?;
    if h.fmt != FORMAT_TAG {
        return Err(StreamError::BadHeader(format!("format `{}` is not `{FORMAT_TAG}`", h.fmt)));
    }
    if h.v != VERSION {
        return Err(StreamError::BadHeader(format!("unsupported version {}", h.v)));
    }
    if !(h.fps.is_finite() && h.fps > 0.0) {
        return Err(StreamError::BadHeader(format!("fps must be positive, got {}", h.fps)));
    }
    if h.coords != COORDS_TAG {
        return Err(StreamError::BadHeader(format!("unknown coordinate convention `{}`", h.coords)));
    }
    Ok(h.fps)
}

/// Canonical frame object, `{"t":..,"hl":[..],"hr":[..],"sc":[..]}`.
pub fn frame_line(f: &SkeletonFrame) -> String {
    frame_writer(f).finish()
}

pub(crate) fn frame_writer(f: &SkeletonFrame) -> ObjectWriter {
    ObjectWriter::new()
        .int("t", f.t)
        .raw("hl", &triple(f.hand_left.to_array()))
        .raw("hr", &triple(f.hand_right.to_array()))
        .raw("sc", &triple(f.shoulder_center.to_array()))
}

/// Structural parse of a frame object; invariants are checked separately.
pub fn raw_frame_from_value(value: Value) -> Result<RawFrame, String> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct FrameLine {
        t: i64,
        hl: Option<Vec<f64>>,
        hr: Option<Vec<f64>>,
        sc: Option<Vec<f64>>,
    }
    let f: FrameLine = serde_json::from_value(value).map_err(|e| e.to_string())?;
    let xyz = |key: &str, v: Option<Vec<f64>>| -> Result<Option<[f64; 3]>, String> {
        v.map(|v| {
            <[f64; 3]>::try_from(v.as_slice()).map_err(|_| format!("`{key}` needs 3 coordinates, got {}", v.len()))
        })
        .transpose()
    };
    Ok(RawFrame {
        t: f.t,
        hand_left: xyz("hl", f.hl)?,
        hand_right: xyz("hr", f.hr)?,
        shoulder_center: xyz("sc", f.sc)?,
    })
}

pub fn read_recording(mut source: impl Read) -> Result<Recording, StreamError> {
    let mut text = String::new();
    source.read_to_string(&mut text).map_err(|e| match e.kind() {
        io::ErrorKind::InvalidData => StreamError::BadHeader("input is not UTF-8".into()),
        _ => StreamError::Io(e),
    })?;
    Recording::from_text(&text)
}

pub fn write_recording(r: &Recording, mut sink: impl Write) -> io::Result<()> {
    sink.write_all(r.to_text().as_bytes())?;
    sink.flush()
}
