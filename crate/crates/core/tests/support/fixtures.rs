//! Builders for the committed fixture files.

use super::scenarios::{self, Gesture, Variant};
use gesturemouse::pipeline::replay;
use gesturemouse::stream::{events_to_text, Recording};
use gesturemouse::Config;

pub const FPS: f64 = 30.0;

/// The variants committed as recordings, four per gesture.
pub const RECORDED: [Variant; 4] = [Variant::Fire, Variant::NearMiss, Variant::Slow, Variant::Noisy];

pub fn recording_text(frames: Vec<gesturemouse::SkeletonFrame>) -> String {
    Recording::new(FPS, frames).to_text()
}

/// (path relative to the fixtures dir, contents) for every generated file.
pub fn generated() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for g in Gesture::ALL {
        for v in RECORDED {
            let s = scenarios::scenario(g, v);
            out.push((format!("recordings/{}.skelrec", s.name()), recording_text(s.frames)));
        }
    }
    let composite = scenarios::composite();
    let reference = replay(&Config::default(), &composite).expect("composite frames are valid").events;
    out.push(("bench/composite.skelrec".into(), recording_text(composite)));
    out.push(("bench/composite.gestev".into(), events_to_text(&reference)));
    out.push(("bench/clicks4.skelrec".into(), recording_text(scenarios::four_pushes())));
    out.push(("bench/empty.skelrec".into(), recording_text(Vec::new())));
    out
}
