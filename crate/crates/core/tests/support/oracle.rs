//! Reference implementations written from the rule definitions, in batch
//! style over whole trajectories. They share no code with the library
//! beyond plain data types.

use gesturemouse::types::{GestureEvent, GestureKind, ScreenPos, SkeletonFrame};
use gesturemouse::Config;

/// .NET `Convert.ToInt32(double)`: nearest integer, halves to even.
#[allow(clippy::if_same_then_else)]
pub fn convert_to_int32(x: f64) -> i64 {
    let f = x.floor();
    let frac = x - f;
    let base = f as i64;
    if frac > 0.5 {
        base + 1
    } else if frac < 0.5 {
        base
    } else if base % 2 == 0 {
        base
    } else {
        base + 1
    }
}

/// The absolute-move coordinate rule, one axis per call:
/// `d > Move → 65536; d < 0 → 0; else Convert.ToInt32(d / Move * 65536)`.
pub fn mouse_axis(d: f64, move_extent: f64) -> i64 {
    if d > move_extent {
        65536
    } else if d < 0.0 {
        0
    } else {
        convert_to_int32(d / move_extent * 65536.0)
    }
}

/// `(mouseX, mouseY)` for origin/target x,y and box extents.
pub fn mouse_xy(origin: (f64, f64), target: (f64, f64), move_w: f64, move_h: f64) -> (i64, i64) {
    let d_width = target.0 - origin.0;
    let d_height = origin.1 - target.1;
    (mouse_axis(d_width, move_w), mouse_axis(d_height, move_h))
}

fn screen_px(coord: i64, extent: u32) -> u32 {
    let v = (coord as u128 * extent as u128 / 65536) as u32;
    v.min(extent - 1)
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn wrap(mut d: f64) -> f64 {
    use std::f64::consts::PI;
    while d > PI {
        d -= 2.0 * PI;
    }
    while d <= -PI {
        d += 2.0 * PI;
    }
    d
}

type P3 = [f64; 3];

/// Smoothing then dead zone over a whole track.
fn filter_track(raw: &[P3], alpha: f64, dz: f64) -> Vec<P3> {
    let mut smoothed: Vec<P3> = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        smoothed.push(if i == 0 {
            *r
        } else {
            let l = smoothed[i - 1];
            [
                alpha * r[0] + (1.0 - alpha) * l[0],
                alpha * r[1] + (1.0 - alpha) * l[1],
                alpha * r[2] + (1.0 - alpha) * l[2],
            ]
        });
    }
    let mut out: Vec<P3> = Vec::with_capacity(raw.len());
    for (i, s) in smoothed.iter().enumerate() {
        if i == 0 {
            out.push(*s);
            continue;
        }
        let prev = out[i - 1];
        let d = ((s[0] - prev[0]).powi(2) + (s[1] - prev[1]).powi(2) + (s[2] - prev[2]).powi(2)).sqrt();
        out.push(if d < dz { prev } else { *s });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOutput {
    pub t: u64,
    pub u: i64,
    pub v: i64,
}

/// Pointer samples and gesture events for a validated frame sequence.
pub fn run(cfg: &Config, frames: &[SkeletonFrame]) -> (Vec<OracleOutput>, Vec<GestureEvent>) {
    let p = &cfg.pipeline;
    let g = &cfg.gestures;
    let n = frames.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let ts: Vec<u64> = frames.iter().map(|f| f.t).collect();
    let left = filter_track(
        &frames.iter().map(|f| f.hand_left.to_array()).collect::<Vec<_>>(),
        p.smoothing_alpha,
        p.dead_zone_m,
    );
    let right = filter_track(
        &frames.iter().map(|f| f.hand_right.to_array()).collect::<Vec<_>>(),
        p.smoothing_alpha,
        p.dead_zone_m,
    );

    // movement box from the first frame's shoulder
    let sc = frames[0].shoulder_center;
    let origin = match (p.box_origin_x_m, p.box_origin_y_m) {
        (Some(x), Some(y)) => (x, y),
        _ => (sc.x + p.box_offset_x_m, sc.y + p.box_offset_y_m),
    };
    let (w, h) = (p.box_width_m, p.box_height_m);
    let screen = |hand: &P3| {
        let (mx, my) = mouse_xy(origin, (hand[0], hand[1]), w, h);
        ScreenPos::new(screen_px(mx, p.screen.width_px), screen_px(my, p.screen.height_px))
    };
    let pointers: Vec<OracleOutput> = (0..n)
        .map(|i| {
            let (u, v) = mouse_xy(origin, (right[i][0], right[i][1]), w, h);
            OracleOutput { t: ts[i], u, v }
        })
        .collect();

    let mut per_frame: Vec<Vec<GestureEvent>> = vec![Vec::new(); n];

    // click + drag
    let mut in_history = vec![false; n];
    let mut baseline: Option<f64> = None;
    let mut frozen: Option<f64> = None;
    let mut rest_t: Option<u64> = None;
    let mut last_click: Option<u64> = None;
    for i in 0..n {
        let (t, z) = (ts[i], left[i][2]);
        if let Some(b) = frozen {
            if b - z <= g.click_dz_m / 2.0 {
                frozen = None;
                rest_t = Some(t);
                in_history[i] = true;
                per_frame[i].push(GestureEvent::new(t, GestureKind::DragEnd));
            }
            continue;
        }
        let recent: Vec<f64> = (0..i).filter(|&j| in_history[j] && t - ts[j] <= 1000).map(|j| left[j][2]).collect();
        if !recent.is_empty() {
            baseline = Some(median(recent));
        }
        let Some(b) = baseline else {
            in_history[i] = true;
            continue;
        };
        let depth = b - z;
        if depth < g.click_dz_m / 2.0 {
            rest_t = Some(t);
        }
        let rested = rest_t.is_some_and(|r| t - r <= g.click_window_ms);
        let cooled = last_click.is_none_or(|c| t - c >= g.click_refractory_ms);
        if depth >= g.click_dz_m && rested && cooled {
            frozen = Some(b);
            last_click = Some(t);
            per_frame[i].push(GestureEvent::new(t, GestureKind::Click { pos: screen(&right[i]) }));
            per_frame[i].push(GestureEvent::new(t, GestureKind::DragStart));
        } else {
            in_history[i] = true;
        }
    }

    // cut
    let k = p.velocity_window.max(2);
    let planar = |a: &P3, b: &P3| (b[0] - a[0]).hypot(b[1] - a[1]);
    let speed = |i: usize| -> Option<f64> {
        let first = (i + 1).saturating_sub(k);
        if i == first || ts[i] <= ts[first] {
            return None;
        }
        let inv = 1.0 / ((ts[i] - ts[first]) as f64 / 1000.0);
        let vx = (left[i][0] - left[first][0]) * inv;
        let vy = (left[i][1] - left[first][1]) * inv;
        Some(vx.hypot(vy))
    };
    struct Open {
        start: usize,
        path: f64,
        peak: f64,
        announced: bool,
    }
    let mut open: Option<Open> = None;
    let mut cut_events: Vec<Vec<GestureEvent>> = vec![Vec::new(); n];
    for i in 0..n {
        let release = if g.cut_release_mps < g.cut_speed_mps { g.cut_release_mps } else { g.cut_speed_mps };
        let v = speed(i);
        let fast = matches!(v, Some(s) if s >= release);
        let qualifies = |o: &Open| {
            o.path >= g.cut_min_path_m && ts[i] - ts[o.start] >= g.cut_min_dur_ms && o.peak >= g.cut_speed_mps
        };
        match open.as_mut() {
            None if fast => {
                let start = (i + 1).saturating_sub(k);
                let path = (start..i).map(|j| planar(&left[j], &left[j + 1])).sum();
                let mut o = Open { start, path, peak: v.unwrap_or(0.0), announced: false };
                if qualifies(&o) {
                    o.announced = true;
                    cut_events[i].push(GestureEvent::new(ts[i], GestureKind::CutStart));
                }
                open = Some(o);
            }
            None => {}
            Some(o) => {
                o.path += planar(&left[i - 1], &left[i]);
                if let Some(s) = v {
                    if s > o.peak {
                        o.peak = s;
                    }
                }
                if !o.announced && qualifies(o) {
                    o.announced = true;
                    cut_events[i].push(GestureEvent::new(ts[i], GestureKind::CutStart));
                }
                if !fast {
                    if o.announced {
                        let seg = [screen(&left[o.start]), screen(&left[i])];
                        cut_events[i].push(GestureEvent::new(ts[i], GestureKind::CutEnd { seg }));
                    }
                    open = None;
                }
            }
        }
    }

    // rotation
    let mut rot_events: Vec<Option<GestureEvent>> = vec![None; n];
    let mut fired: Option<u64> = None;
    for i in 0..n {
        let window: Vec<usize> = (0..=i).filter(|&j| ts[i] - ts[j] < g.rot_window_ms).collect();
        if window.len() < 3 {
            continue;
        }
        let m = window.len() as f64;
        let cx = window.iter().map(|&j| right[j][0]).sum::<f64>() / m;
        let cy = window.iter().map(|&j| right[j][1]).sum::<f64>() / m;
        let mut run_from = window[0];
        for &j in &window {
            let inside = (right[j][0] - cx).hypot(right[j][1] - cy) < g.rot_min_radius_m;
            if inside || fired.is_some_and(|f| ts[j] <= f) {
                run_from = j + 1;
            }
        }
        let angles: Vec<f64> = (run_from..=i).map(|j| (right[j][1] - cy).atan2(right[j][0] - cx)).collect();
        let swept: f64 = angles.windows(2).map(|a| wrap(a[1] - a[0])).sum();
        let deg = swept.to_degrees();
        if deg.abs() >= g.rot_min_angle_deg {
            fired = Some(ts[i]);
            rot_events[i] = Some(GestureEvent::new(ts[i], GestureKind::Rotation { deg }));
        }
    }

    // balance
    let mut bal_events: Vec<Option<GestureEvent>> = vec![None; n];
    let mut open_at = 0usize;
    let (mut inside, mut total) = (0u32, 0u32);
    for i in 1..n {
        total += 1;
        if (right[i][1] - right[open_at][1]).abs() <= g.balance_band_m {
            inside += 1;
        }
        if ts[i] - ts[open_at] >= g.balance_window_ms {
            bal_events[i] =
                Some(GestureEvent::new(ts[i], GestureKind::Balance { score: inside as f64 / total as f64 }));
            open_at = i;
            inside = 0;
            total = 0;
        }
    }

    let mut events = Vec::new();
    for i in 0..n {
        let (clicks, drags): (Vec<GestureEvent>, Vec<GestureEvent>) =
            per_frame[i].iter().copied().partition(|e| matches!(e.kind, GestureKind::Click { .. }));
        events.extend(clicks);
        events.extend(cut_events[i].iter().copied());
        events.extend(drags);
        events.extend(rot_events[i]);
        events.extend(bal_events[i]);
    }
    if let Some(o) = open.filter(|o| o.announced) {
        let seg = [screen(&left[o.start]), screen(&left[n - 1])];
        // lands after the last frame's click and cut events, ahead of the rest
        let last_t = ts[n - 1];
        let at = events
            .iter()
            .position(|e| e.t == last_t && !matches!(e.kind, GestureKind::Click { .. } | GestureKind::CutStart))
            .unwrap_or(events.len());
        events.insert(at, GestureEvent::new(last_t, GestureKind::CutEnd { seg }));
    }
    (pointers, events)
}

/// Event-by-event comparison: same length, kinds, times and integer
/// payloads; real payloads within 1e-9.
pub fn same_events(a: &[GestureEvent], b: &[GestureEvent]) -> Result<(), String> {
    if a.len() != b.len() {
        return Err(format!("{} events vs {} events\n{a:?}\n{b:?}", a.len(), b.len()));
    }
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        let ok = x.t == y.t
            && match (x.kind, y.kind) {
                (GestureKind::Rotation { deg: p }, GestureKind::Rotation { deg: q }) => (p - q).abs() <= 1e-9,
                (GestureKind::Balance { score: p }, GestureKind::Balance { score: q }) => (p - q).abs() <= 1e-9,
                (p, q) => p == q,
            };
        if !ok {
            return Err(format!("event {i} differs: {x:?} vs {y:?}"));
        }
    }
    Ok(())
}
