mod support;

use gesturemouse::filter::{estimate_velocity, JointFilter};
use gesturemouse::pipeline::replay;
use gesturemouse::pointer::to_screen;
use gesturemouse::stream::events_to_text;
use gesturemouse::types::GestureFamily;
use gesturemouse::{Config, GestureKind, SkeletonFrame};
use proptest::prelude::*;
use support::{oracle, scenarios};

fn family_rank(f: GestureFamily) -> u8 {
    match f {
        GestureFamily::Click => 0,
        GestureFamily::Cutting => 1,
        GestureFamily::Drag => 2,
        GestureFamily::Rotation => 3,
        GestureFamily::Balancing => 4,
    }
}

fn cut_count(cfg: &Config, frames: &[SkeletonFrame]) -> usize {
    let out = replay(cfg, frames).unwrap();
    out.events.iter().filter(|e| matches!(e.kind, GestureKind::CutEnd { .. })).count()
}

/// Highest windowed planar speed of the filtered left hand.
fn peak_left_speed(cfg: &Config, frames: &[SkeletonFrame]) -> f64 {
    let p = &cfg.pipeline;
    let mut filter = JointFilter::new(p.smoothing_alpha, p.dead_zone_m);
    let track: Vec<_> = frames.iter().map(|f| (f.t, filter.apply(f.hand_left))).collect();
    let k = p.velocity_window.max(2);
    (1..track.len())
        .map(|i| &track[i.saturating_sub(k - 1)..=i])
        .filter_map(|w| estimate_velocity(w).ok())
        .map(|m| m.planar_speed())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn stream_invariants(seed in any::<u64>()) {
        let cfg = Config::default();
        let g = &cfg.gestures;
        let frames = scenarios::random_stream(seed);
        let out = replay(&cfg, &frames).unwrap();

        oracle::same_events(&out.events, &oracle::run(&cfg, &frames).1).map_err(TestCaseError::fail)?;

        for p in &out.pointers {
            prop_assert!(p.u <= 65536 && p.v <= 65536);
            let s = to_screen(p, cfg.pipeline.screen);
            prop_assert!(s.px < cfg.pipeline.screen.width_px && s.py < cfg.pipeline.screen.height_px);
        }

        for w in out.events.windows(2) {
            prop_assert!(w[0].t <= w[1].t);
            if w[0].t == w[1].t {
                prop_assert!(family_rank(w[0].kind.family()) <= family_rank(w[1].kind.family()));
            }
        }

        let mut cutting = false;
        let mut dragging = false;
        let mut last_click: Option<u64> = None;
        for e in &out.events {
            match e.kind {
                GestureKind::CutStart => { prop_assert!(!cutting); cutting = true; }
                GestureKind::CutEnd { .. } => { prop_assert!(cutting); cutting = false; }
                GestureKind::DragStart => { prop_assert!(!dragging); dragging = true; }
                GestureKind::DragEnd => { prop_assert!(dragging); dragging = false; }
                GestureKind::Click { .. } => {
                    if let Some(prev) = last_click {
                        prop_assert!(e.t - prev >= g.click_refractory_ms);
                    }
                    last_click = Some(e.t);
                }
                GestureKind::Balance { score } => prop_assert!((0.0..=1.0).contains(&score)),
                GestureKind::Rotation { deg } => prop_assert!(deg.abs() >= g.rot_min_angle_deg),
            }
        }
        prop_assert!(!cutting, "unpaired cut_start");

        let again = replay(&cfg, &frames).unwrap();
        prop_assert_eq!(events_to_text(&out.events), events_to_text(&again.events));
    }

    #[test]
    fn raising_cut_speed_never_adds_cuts(seed in any::<u64>(), factor in 1.0f64..3.0) {
        let base = Config::default();
        let mut raised = base;
        raised.gestures.cut_speed_mps *= factor;
        let frames = scenarios::random_stream(seed);
        prop_assert!(cut_count(&raised, &frames) <= cut_count(&base, &frames));
    }

    #[test]
    fn doubling_time_silences_cuts_below_twice_threshold(seed in any::<u64>()) {
        let cfg = Config::default();
        let frames = scenarios::random_stream(seed);
        let slow: Vec<_> = frames.iter().map(|f| SkeletonFrame { t: f.t * 2, ..*f }).collect();
        let peak = peak_left_speed(&cfg, &frames);
        if peak / 2.0 < cfg.gestures.cut_speed_mps * (1.0 - 1e-9) {
            prop_assert_eq!(cut_count(&cfg, &slow), 0);
        }
    }
}

#[test]
fn doubling_time_silences_the_fire_scenario() {
    let cfg = Config::default();
    let s = scenarios::scenario(scenarios::Gesture::Cut, scenarios::Variant::Fire);
    let peak = peak_left_speed(&cfg, &s.frames);
    assert!(peak / 2.0 < cfg.gestures.cut_speed_mps, "peak {peak}");
    assert_eq!(cut_count(&cfg, &s.frames), 1);
    let slow: Vec<_> = s.frames.iter().map(|f| SkeletonFrame { t: f.t * 2, ..*f }).collect();
    assert_eq!(cut_count(&cfg, &slow), 0);
}
