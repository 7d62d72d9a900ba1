use super::json::{real, ObjectWriter};
use super::numbered_lines;
use crate::types::{GestureEvent, GestureKind, ScreenPos};
use serde::Deserialize;
use serde_json::{Map, Value};
use std::io::{self, Read, Write};
use thiserror::Error;

pub const FORMAT_TAG: &str = "gestev";
pub const VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum EventStreamError {
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: malformed: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn header_line() -> String {
    ObjectWriter::new().str("fmt", FORMAT_TAG).int("v", VERSION).finish()
}

fn pos_json(p: ScreenPos) -> String {
    format!("[{},{}]", p.px, p.py)
}

/// Canonical payload object of an event kind; `{}` for kinds without one.
pub fn payload_json(kind: &GestureKind) -> String {
    let w = ObjectWriter::new();
    match kind {
        GestureKind::Click { pos } => w.raw("pos", &pos_json(*pos)),
        GestureKind::CutEnd { seg } => w.raw("seg", &format!("[{},{}]", pos_json(seg[0]), pos_json(seg[1]))),
        GestureKind::Rotation { deg } => w.raw("deg", &real(*deg)),
        GestureKind::Balance { score } => w.raw("score", &real(*score)),
        GestureKind::CutStart | GestureKind::DragStart | GestureKind::DragEnd => w,
    }
    .finish()
}

/// Canonical event object, `{"t":..,"kind":..,"payload":{..}}`.
pub fn event_line(e: &GestureEvent) -> String {
    event_writer(e).finish()
}

pub(crate) fn event_writer(e: &GestureEvent) -> ObjectWriter {
    ObjectWriter::new().int("t", e.t).str("kind", e.kind.tag()).raw("payload", &payload_json(&e.kind))
}

fn parse_pos(v: &Value) -> Result<ScreenPos, String> {
    let pair: [u32; 2] = serde_json::from_value(v.clone()).map_err(|e| format!("bad screen position: {e}"))?;
    Ok(ScreenPos::new(pair[0], pair[1]))
}

fn parse_real(v: &Value, key: &str) -> Result<f64, String> {
    v.as_f64().ok_or_else(|| format!("`{key}` must be a number"))
}

/// Builds a kind from its tag and payload, requiring exactly the payload
/// keys of that kind.
pub fn kind_from_parts(tag: &str, payload: &Map<String, Value>) -> Result<GestureKind, String> {
    let expected: &[&str] = match tag {
        "click" => &["pos"],
        "cut_end" => &["seg"],
        "rotation" => &["deg"],
        "balance" => &["score"],
        "cut_start" | "drag_start" | "drag_end" => &[],
        other => return Err(format!("unknown kind `{other}`")),
    };
    if payload.len() != expected.len() || !expected.iter().all(|k| payload.contains_key(*k)) {
        return Err(format!("kind `{tag}` needs payload keys {expected:?}"));
    }
    Ok(match tag {
        "click" => GestureKind::Click { pos: parse_pos(&payload["pos"])? },
        "cut_end" => {
            let seg = payload["seg"].as_array().filter(|a| a.len() == 2).ok_or("`seg` must hold two positions")?;
            GestureKind::CutEnd { seg: [parse_pos(&seg[0])?, parse_pos(&seg[1])?] }
        }
        "rotation" => GestureKind::Rotation { deg: parse_real(&payload["deg"], "deg")? },
        "balance" => GestureKind::Balance { score: parse_real(&payload["score"], "score")? },
        "cut_start" => GestureKind::CutStart,
        "drag_start" => GestureKind::DragStart,
        _ => GestureKind::DragEnd,
    })
}

pub fn event_from_value(value: Value) -> Result<GestureEvent, String> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct EventLine {
        t: u64,
        kind: String,
        payload: Map<String, Value>,
    }
    let e: EventLine = serde_json::from_value(value).map_err(|e| e.to_string())?;
    Ok(GestureEvent::new(e.t, kind_from_parts(&e.kind, &e.payload)?))
}

pub fn parse_event_line(line: &str) -> Result<GestureEvent, String> {
    event_from_value(serde_json::from_str(line).map_err(|e| e.to_string())?)
}

pub fn events_to_text(events: &[GestureEvent]) -> String {
    let mut out = header_line();
    out.push('\n');
    for e in events {
        out.push_str(&event_line(e));
        out.push('\n');
    }
    out
}

pub fn events_from_text(text: &str) -> Result<Vec<GestureEvent>, EventStreamError> {
    let mut lines = numbered_lines(text);
    let (_, header) = lines.next().ok_or_else(|| EventStreamError::BadHeader("empty input".into()))?;
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Header {
        fmt: String,
        v: u64,
    }
    let h: Header = serde_json::from_str(header).map_err(|e| EventStreamError::BadHeader(e.to_string()))?;
    if h.fmt != FORMAT_TAG || h.v != VERSION {
        return Err(EventStreamError::BadHeader(format!("expected {FORMAT_TAG} v{VERSION}, got {} v{}", h.fmt, h.v)));
    }
    lines
        .map(|(line, body)| parse_event_line(body).map_err(|reason| EventStreamError::MalformedLine { line, reason }))
        .collect()
}

pub fn read_events(mut source: impl Read) -> Result<Vec<GestureEvent>, EventStreamError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    events_from_text(&text)
}

pub fn write_events(events: &[GestureEvent], mut sink: impl Write) -> io::Result<()> {
    sink.write_all(events_to_text(events).as_bytes())?;
    sink.flush()
}
