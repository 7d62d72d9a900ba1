use crate::config::GameConfig;
use crate::types::ScreenDims;
use rand::{Rng, RngExt};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FruitState {
    pub id: u32,
    /// Screen px, y down.
    pub center: [f64; 2],
    pub radius_px: f64,
    /// px/s
    pub velocity: [f64; 2],
    pub spawn_t: u64,
    pub alive: bool,
}

impl FruitState {
    /// Milliseconds from spawn to the top of the arc.
    pub fn apex_delay_ms(&self, gravity_px_s2: f64) -> f64 {
        (-self.velocity[1] / gravity_px_s2 * 1000.0).max(0.0)
    }
}

/// Launches a fruit from the bottom edge. The launch speed is drawn so the
/// apex lies between `apex_min_frac` and `apex_max_frac` of the screen
/// height above the edge; the horizontal speed is mirrored when needed so
/// the apex stays inside the spawn band.
pub fn spawn_fruit<R: Rng + ?Sized>(rng: &mut R, cfg: &GameConfig, screen: ScreenDims, id: u32, t: u64) -> FruitState {
    let w = screen.width_px as f64;
    let h = screen.height_px as f64;
    let (x_lo, x_hi) = (cfg.spawn_x_min_frac * w, cfg.spawn_x_max_frac * w);
    let x = rng.random_range(x_lo..x_hi);
    let rise = rng.random_range(cfg.apex_min_frac..=cfg.apex_max_frac) * h;
    let vy = -(2.0 * cfg.gravity_px_s2 * rise).sqrt();
    let mut vx = if cfg.fruit_vx_max_px_s > 0.0 {
        rng.random_range(-cfg.fruit_vx_max_px_s..=cfg.fruit_vx_max_px_s)
    } else {
        0.0
    };
    let apex_x = x + vx * (-vy / cfg.gravity_px_s2);
    if !(x_lo..=x_hi).contains(&apex_x) {
        vx = -vx;
    }
    FruitState { id, center: [x, h], radius_px: cfg.fruit_radius_px, velocity: [vx, vy], spawn_t: t, alive: true }
}

/// Exact ballistic step under downward gravity. The fruit dies once it is
/// below `height_px` while falling.
pub fn advance(f: &FruitState, dt_ms: u64, gravity_px_s2: f64, height_px: f64) -> FruitState {
    let dt = dt_ms as f64 / 1000.0;
    let mut n = *f;
    n.center[0] += f.velocity[0] * dt;
    n.center[1] += f.velocity[1] * dt + 0.5 * gravity_px_s2 * dt * dt;
    n.velocity[1] += gravity_px_s2 * dt;
    if n.center[1] > height_px && n.velocity[1] > 0.0 {
        n.alive = false;
    }
    n
}

/// Distance from `p` to the closed segment `a`–`b`. Computed from
/// coordinate differences with the endpoints in a fixed order, so the result
/// does not depend on endpoint order and exact translations leave it as is.
pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (a, b) = if (a[0], a[1]) <= (b[0], b[1]) { (a, b) } else { (b, a) };
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let (px, py) = (p[0] - a[0], p[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let s = if len2 == 0.0 { 0.0 } else { ((px * dx + py * dy) / len2).clamp(0.0, 1.0) };
    (px - s * dx).hypot(py - s * dy)
}

pub fn fruit_hit_test(seg: [[f64; 2]; 2], fruit: &FruitState) -> bool {
    fruit.alive && point_segment_distance(fruit.center, seg[0], seg[1]) <= fruit.radius_px
}
