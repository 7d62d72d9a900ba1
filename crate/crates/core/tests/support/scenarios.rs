//! Scripted hand trajectories: five variants for each gesture plus a few
//! composite streams.

use gesturemouse::types::{GestureEvent, GestureFamily, GestureKind, Point3D, SkeletonFrame};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub const REST_LEFT: Point3D = Point3D::new(-0.2, 0.3, 2.0);
pub const REST_RIGHT: Point3D = Point3D::new(0.2, 0.3, 2.0);
pub const SHOULDER: Point3D = Point3D::new(0.0, 0.5, 2.0);

/// 30 fps timestamps up to `end_ms` inclusive.
pub fn times(end_ms: u64) -> Vec<u64> {
    (0u64..).map(|i| (i as f64 * 1000.0 / 30.0).round() as u64).take_while(|&t| t <= end_ms).collect()
}

/// Frames from per-time (left, right) hand positions.
pub fn build(end_ms: u64, hands: impl Fn(u64) -> (Point3D, Point3D)) -> Vec<SkeletonFrame> {
    times(end_ms)
        .into_iter()
        .map(|t| {
            let (l, r) = hands(t);
            SkeletonFrame { t, hand_left: l, hand_right: r, shoulder_center: SHOULDER }
        })
        .collect()
}

/// Uniform jitter of ±`amp` on every coordinate of every joint.
pub fn with_noise(frames: &[SkeletonFrame], amp: f64, seed: u64) -> Vec<SkeletonFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jitter = |p: Point3D| {
        Point3D::new(
            p.x + rng.random_range(-amp..=amp),
            p.y + rng.random_range(-amp..=amp),
            p.z + rng.random_range(-amp..=amp),
        )
    };
    frames
        .iter()
        .map(|f| SkeletonFrame {
            t: f.t,
            hand_left: jitter(f.hand_left),
            hand_right: jitter(f.hand_right),
            shoulder_center: jitter(f.shoulder_center),
        })
        .collect()
}

/// 0 before `start`, rising linearly to 1 over `dur` ms.
pub fn ramp(t: u64, start: u64, dur: u64) -> f64 {
    if t <= start {
        0.0
    } else if dur == 0 || t >= start + dur {
        1.0
    } else {
        (t - start) as f64 / dur as f64
    }
}

pub fn lerp(a: Point3D, b: Point3D, s: f64) -> Point3D {
    a.add(b.sub(a).scale(s))
}

/// Trapezoid push depth: down, hold, up.
pub fn push_depth(t: u64, start: u64, down: u64, hold: u64, up: u64, depth: f64) -> f64 {
    let release = start + down + hold;
    depth * (ramp(t, start, down) - ramp(t, release, up))
}

pub fn pushed(p: Point3D, depth: f64) -> Point3D {
    Point3D { z: p.z - depth, ..p }
}

/// Right hand circling `center` after `start`; before it rests on the
/// circle at angle 0.
pub fn circling(t: u64, center: Point3D, radius: f64, start: u64, period_ms: u64, turns: f64, ccw: bool) -> Point3D {
    let phase = (t.saturating_sub(start) as f64 / period_ms as f64).min(turns);
    let a = TAU * phase * if ccw { 1.0 } else { -1.0 };
    Point3D::new(center.x + radius * a.cos(), center.y + radius * a.sin(), center.z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gesture {
    Click,
    Cut,
    Drag,
    Rotation,
    Balance,
}

impl Gesture {
    pub const ALL: [Gesture; 5] = [Gesture::Click, Gesture::Cut, Gesture::Drag, Gesture::Rotation, Gesture::Balance];

    pub fn family(self) -> GestureFamily {
        match self {
            Gesture::Click => GestureFamily::Click,
            Gesture::Cut => GestureFamily::Cutting,
            Gesture::Drag => GestureFamily::Drag,
            Gesture::Rotation => GestureFamily::Rotation,
            Gesture::Balance => GestureFamily::Balancing,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gesture::Click => "click",
            Gesture::Cut => "cut",
            Gesture::Drag => "drag",
            Gesture::Rotation => "rotation",
            Gesture::Balance => "balance",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Fire,
    NearMiss,
    Slow,
    Short,
    Noisy,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::Fire, Variant::NearMiss, Variant::Slow, Variant::Short, Variant::Noisy];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Fire => "fire",
            Variant::NearMiss => "near_miss",
            Variant::Slow => "slow",
            Variant::Short => "short",
            Variant::Noisy => "noisy",
        }
    }
}

/// What the scenario is built to show, checked on the gesture's own family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Expect {
    Fires,
    Silent,
    /// Balance reports whose scores are all below 1.
    Unsteady,
    /// No assertion beyond agreeing with the oracle.
    Any,
}

pub struct Scenario {
    pub gesture: Gesture,
    pub variant: Variant,
    pub frames: Vec<SkeletonFrame>,
    pub expect: Expect,
}

impl Scenario {
    pub fn name(&self) -> String {
        format!("{}_{}", self.gesture.name(), self.variant.name())
    }

    pub fn check(&self, events: &[GestureEvent]) -> bool {
        let own: Vec<_> = events.iter().filter(|e| e.kind.family() == self.gesture.family()).collect();
        match self.expect {
            Expect::Fires => match self.gesture {
                Gesture::Balance => {
                    !own.is_empty() && own.iter().all(|e| e.kind == GestureKind::Balance { score: 1.0 })
                }
                Gesture::Cut => own.iter().any(|e| matches!(e.kind, GestureKind::CutEnd { .. })),
                Gesture::Drag => {
                    own.iter().any(|e| e.kind == GestureKind::DragStart)
                        && own.iter().any(|e| e.kind == GestureKind::DragEnd)
                }
                _ => !own.is_empty(),
            },
            Expect::Silent => own.is_empty(),
            Expect::Unsteady => {
                !own.is_empty() && own.iter().all(|e| matches!(e.kind, GestureKind::Balance { score } if score < 1.0))
            }
            Expect::Any => true,
        }
    }
}

const NOISE_M: f64 = 0.003;

fn click_push(down: u64, hold: u64, up: u64, depth: f64) -> Vec<SkeletonFrame> {
    build(3000, |t| (pushed(REST_LEFT, push_depth(t, 1500, down, hold, up, depth)), REST_RIGHT))
}

fn cut_sweep(sweep_ms: u64, dx: f64, end: u64) -> Vec<SkeletonFrame> {
    let raised = Point3D::new(-0.2, 0.5, 2.0);
    build(end, |t| {
        let lifted = lerp(REST_LEFT, raised, ramp(t, 200, 600));
        let swept = lerp(lifted, Point3D { x: raised.x + dx, ..raised }, ramp(t, 1000, sweep_ms));
        (swept, REST_RIGHT)
    })
}

fn drag_hold(down: u64, hold: u64, up: u64, depth: f64) -> Vec<SkeletonFrame> {
    let target = Point3D::new(0.0, 0.5, 2.0);
    build(3500, |t| {
        let l = pushed(REST_LEFT, push_depth(t, 1000, down, hold, up, depth));
        let r = lerp(REST_RIGHT, target, ramp(t, 1200, 700));
        (l, r)
    })
}

fn rotation(radius: f64, period_ms: u64, turns: f64) -> Vec<SkeletonFrame> {
    let center = Point3D::new(0.1, 0.5, 2.0);
    let end = 1000 + (period_ms as f64 * turns) as u64 + 800;
    build(end, |t| (REST_LEFT, circling(t, center, radius, 1000, period_ms, turns, true)))
}

pub fn scenario(gesture: Gesture, variant: Variant) -> Scenario {
    use Expect::*;
    let (frames, expect) = match (gesture, variant) {
        (Gesture::Click, Variant::Fire) => (click_push(150, 300, 150, 0.2), Fires),
        (Gesture::Click, Variant::NearMiss) => (click_push(150, 300, 150, 0.10), Silent),
        (Gesture::Click, Variant::Slow) => (click_push(2000, 300, 300, 0.2), Silent),
        (Gesture::Click, Variant::Short) => (click_push(30, 0, 30, 0.2), Any),
        (Gesture::Click, Variant::Noisy) => (with_noise(&click_push(150, 300, 150, 0.2), NOISE_M, 11), Fires),

        (Gesture::Cut, Variant::Fire) => (cut_sweep(200, 0.5, 2500), Fires),
        (Gesture::Cut, Variant::NearMiss) => (cut_sweep(450, 0.5, 2500), Silent),
        (Gesture::Cut, Variant::Slow) => (cut_sweep(1000, 0.5, 2500), Silent),
        (Gesture::Cut, Variant::Short) => (cut_sweep(50, 0.12, 2500), Silent),
        (Gesture::Cut, Variant::Noisy) => (with_noise(&cut_sweep(200, 0.5, 2500), NOISE_M, 12), Fires),

        (Gesture::Drag, Variant::Fire) => (drag_hold(150, 1000, 150, 0.2), Fires),
        (Gesture::Drag, Variant::NearMiss) => (drag_hold(150, 1000, 150, 0.10), Silent),
        (Gesture::Drag, Variant::Slow) => (drag_hold(2000, 500, 300, 0.2), Silent),
        (Gesture::Drag, Variant::Short) => (drag_hold(100, 0, 100, 0.2), Any),
        (Gesture::Drag, Variant::Noisy) => (with_noise(&drag_hold(150, 1000, 150, 0.2), NOISE_M, 13), Fires),

        (Gesture::Rotation, Variant::Fire) => (rotation(0.1, 1500, 1.0), Fires),
        (Gesture::Rotation, Variant::NearMiss) => (rotation(0.04, 1500, 1.0), Silent),
        (Gesture::Rotation, Variant::Slow) => (rotation(0.1, 4000, 1.0), Silent),
        (Gesture::Rotation, Variant::Short) => (rotation(0.1, 1500, 0.6), Silent),
        (Gesture::Rotation, Variant::Noisy) => (with_noise(&rotation(0.1, 1500, 1.0), NOISE_M, 14), Fires),

        (Gesture::Balance, Variant::Fire) => (build(4100, |_| (REST_LEFT, REST_RIGHT)), Fires),
        (Gesture::Balance, Variant::NearMiss) => (
            build(4100, |t| {
                let up = (t / 200) % 2 == 1;
                (REST_LEFT, Point3D { y: REST_RIGHT.y + if up { 0.12 } else { 0.0 }, ..REST_RIGHT })
            }),
            Unsteady,
        ),
        (Gesture::Balance, Variant::Slow) => (
            build(4100, |t| (REST_LEFT, lerp(REST_RIGHT, Point3D { y: 0.5, ..REST_RIGHT }, ramp(t, 0, 4100)))),
            Unsteady,
        ),
        (Gesture::Balance, Variant::Short) => (build(1900, |_| (REST_LEFT, REST_RIGHT)), Silent),
        (Gesture::Balance, Variant::Noisy) => {
            (with_noise(&build(4100, |_| (REST_LEFT, REST_RIGHT)), NOISE_M, 15), Fires)
        }
    };
    Scenario { gesture, variant, frames, expect }
}

pub fn all() -> Vec<Scenario> {
    Gesture::ALL.iter().flat_map(|&g| Variant::ALL.iter().map(move |&v| scenario(g, v))).collect()
}

/// A seven-second stream with a click-drag, a cut, a rotation and balance
/// reports.
pub fn composite() -> Vec<SkeletonFrame> {
    let raised = Point3D::new(-0.2, 0.5, 2.0);
    let circle_center = Point3D::new(0.1, 0.5, 2.0);
    let circle_start = Point3D::new(0.2, 0.5, 2.0);
    build(7000, |t| {
        let mut l = pushed(REST_LEFT, push_depth(t, 1000, 150, 300, 150, 0.2));
        l = lerp(l, raised, ramp(t, 1800, 500));
        l = lerp(l, Point3D { x: 0.3, ..raised }, ramp(t, 2500, 200));
        l = lerp(l, REST_LEFT, ramp(t, 3000, 800));
        let r = if t < 4000 {
            lerp(REST_RIGHT, circle_start, ramp(t, 3200, 700))
        } else {
            circling(t, circle_center, 0.1, 4000, 1500, 1.0, true)
        };
        (l, r)
    })
}

/// Four pushes: three quick ones and a slow one the detector rejects.
pub fn four_pushes() -> Vec<SkeletonFrame> {
    build(9000, |t| {
        let depth = push_depth(t, 1000, 150, 300, 150, 0.2)
            + push_depth(t, 2500, 150, 300, 150, 0.2)
            + push_depth(t, 4000, 150, 300, 150, 0.2)
            + push_depth(t, 5500, 2000, 300, 300, 0.2);
        (pushed(REST_LEFT, depth), REST_RIGHT)
    })
}

/// A long mixed stream: periodic pushes, sweeps and circles.
pub fn long_session(end_ms: u64) -> Vec<SkeletonFrame> {
    let raised = Point3D::new(-0.2, 0.5, 2.0);
    let center = Point3D::new(0.1, 0.5, 2.0);
    build(end_ms, |t| {
        let local = t % 6000;
        let base = t - local;
        let mut l = pushed(REST_LEFT, push_depth(t, base + 500, 150, 300, 150, 0.2));
        l = lerp(l, raised, ramp(t, base + 1500, 400) - ramp(t, base + 3000, 600));
        l = Point3D { x: l.x + 0.5 * (ramp(t, base + 2200, 200) - ramp(t, base + 3000, 600)), ..l };
        let r = if (3600..5100).contains(&local) {
            circling(t, center, 0.1, base + 3600, 1500, 1.0, true)
        } else {
            lerp(REST_RIGHT, Point3D::new(0.2, 0.5, 2.0), ramp(t, base + 3000, 500) - ramp(t, base + 5200, 500))
        };
        (l, r)
    })
}

/// Piecewise-linear wandering of both hands, with occasional fast moves and
/// pushes, reproducible from `seed`.
pub fn random_stream(seed: u64) -> Vec<SkeletonFrame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let end: u64 = rng.random_range(2000..6000);
    let mut track = |x: (f64, f64), y: (f64, f64), z: (f64, f64)| {
        let mut pts = vec![(0u64, Point3D::new(rng.random_range(x.0..x.1), rng.random_range(y.0..y.1), z.1))];
        let mut t = 0;
        while t < end {
            t += rng.random_range(60..700);
            let depth = if rng.random_bool(0.3) { z.0 } else { z.1 };
            pts.push((t, Point3D::new(rng.random_range(x.0..x.1), rng.random_range(y.0..y.1), depth)));
        }
        pts
    };
    let left = track((-0.5, 0.3), (0.1, 0.9), (1.75, 2.0));
    let right = track((-0.1, 0.5), (0.1, 0.9), (1.9, 2.0));
    build(end, |t| (piecewise(&left, t), piecewise(&right, t)))
}

fn piecewise(pts: &[(u64, Point3D)], t: u64) -> Point3D {
    let i = pts.partition_point(|&(pt, _)| pt <= t);
    if i == 0 {
        return pts[0].1;
    }
    if i == pts.len() {
        return pts[i - 1].1;
    }
    let (t0, a) = pts[i - 1];
    let (t1, b) = pts[i];
    lerp(a, b, (t - t0) as f64 / (t1 - t0) as f64)
}
