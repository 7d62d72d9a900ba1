//! Line-delimited stream formats: skeleton recordings, gesture event streams
//! and trajectory scripts, plus the synthetic trajectory generator.
//!
//! Every format is UTF-8 with one JSON object per line; line 1 is a header.

pub mod events;
pub mod json;
pub mod recording;
pub mod script;

pub use events::{
    event_line, events_from_text, events_to_text, parse_event_line, read_events, write_events, EventStreamError,
};
pub use recording::{
    frame_line, raw_frame_from_value, read_recording, write_recording, Recording, StreamError, COORDS_TAG,
};
pub use script::{generate, read_script, write_script, Interp, ScriptError, Segment, TrajectoryScript};

/// Splits a document into `(line_number, text)` pairs, 1-based. A single
/// trailing newline does not produce an empty final line.
pub(crate) fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l))
}
