use crate::config::GameConfig;
use crate::types::{ScreenDims, ScreenPos};
use rand::{Rng, RngExt};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeGeometry {
    Circle {
        center: [f64; 2],
        radius: f64,
    },
    /// Upper-left corner and extent, px.
    Rect {
        corner: [f64; 2],
        extent: [f64; 2],
    },
}

impl ShapeGeometry {
    pub fn tag(&self) -> &'static str {
        match self {
            ShapeGeometry::Circle { .. } => "circle",
            ShapeGeometry::Rect { .. } => "rect",
        }
    }

    pub fn center(&self) -> [f64; 2] {
        match *self {
            ShapeGeometry::Circle { center, .. } => center,
            ShapeGeometry::Rect { corner, extent } => [corner[0] + extent[0] / 2.0, corner[1] + extent[1] / 2.0],
        }
    }

    /// Inclusive containment.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        match *self {
            ShapeGeometry::Circle { center, radius } => {
                let (dx, dy) = (p[0] - center[0], p[1] - center[1]);
                dx * dx + dy * dy <= radius * radius
            }
            ShapeGeometry::Rect { corner, extent } => {
                (corner[0]..=corner[0] + extent[0]).contains(&p[0])
                    && (corner[1]..=corner[1] + extent[1]).contains(&p[1])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeTarget {
    pub id: u32,
    pub geometry: ShapeGeometry,
    pub appear_t: u64,
    pub expire_t: u64,
}

impl ShapeTarget {
    pub fn is_live(&self, t: u64) -> bool {
        (self.appear_t..self.expire_t).contains(&t)
    }
}

/// Places a circle or rectangle fully inside the screen. Sizes are drawn
/// from `[shape_min_px, shape_max_px]` as radius or half side.
pub fn spawn_shape<R: Rng + ?Sized>(rng: &mut R, cfg: &GameConfig, screen: ScreenDims, id: u32, t: u64) -> ShapeTarget {
    let w = screen.width_px as f64;
    let h = screen.height_px as f64;
    let size = |rng: &mut R| rng.random_range(cfg.shape_min_px..=cfg.shape_max_px);
    let geometry = if rng.random_range(0..2u8) == 0 {
        let radius = size(rng);
        let center = [rng.random_range(radius..=w - radius), rng.random_range(radius..=h - radius)];
        ShapeGeometry::Circle { center, radius }
    } else {
        let extent = [2.0 * size(rng), 2.0 * size(rng)];
        let corner = [rng.random_range(0.0..=w - extent[0]), rng.random_range(0.0..=h - extent[1])];
        ShapeGeometry::Rect { corner, extent }
    };
    ShapeTarget { id, geometry, appear_t: t, expire_t: t + cfg.shape_lifetime_ms }
}

/// Hit iff the target is live at `t` (half-open lifetime) and the pointer
/// lies inside the shape, boundary included.
pub fn shape_hit_test(pointer: ScreenPos, target: &ShapeTarget, t: u64) -> bool {
    target.is_live(t) && target.geometry.contains([pointer.px as f64, pointer.py as f64])
}
