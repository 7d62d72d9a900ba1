//! Synthetic players: event streams built from the seeded session timeline.

use super::world::{Entity, GameKind, World};
use crate::config::GameConfig;
use crate::types::{GestureEvent, GestureKind, ScreenDims, ScreenPos};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Player {
    /// Slices every fruit at (or before) its apex; clicks every shape the
    /// moment it appears.
    Perfect,
    /// Does nothing.
    Null,
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "perfect" => Ok(Player::Perfect),
            "null" => Ok(Player::Null),
            other => Err(format!("unknown player `{other}` (expected perfect or null)")),
        }
    }
}

/// Half length of the perfect player's slicing stroke, px.
const STROKE_HALF_PX: f64 = 40.0;

fn clamp_px(v: f64, extent: u32) -> u32 {
    v.round().clamp(0.0, (extent - 1) as f64) as u32
}

/// The event stream a player produces for the session with this seed,
/// sorted by time.
pub fn player_events(
    player: Player,
    kind: GameKind,
    cfg: &GameConfig,
    screen: ScreenDims,
    seed: u64,
) -> Vec<GestureEvent> {
    if player == Player::Null {
        return Vec::new();
    }
    let world = World::new(kind, cfg, screen, seed, 0);
    let mut events = Vec::new();
    for entity in world.planned() {
        match entity {
            Entity::Fruit(f) => {
                let apex = f.spawn_t + f.apex_delay_ms(cfg.gravity_px_s2).floor() as u64;
                let t = apex.min(world.end_t() - 1);
                let c = world.fruit_at(f, t).center;
                let y = clamp_px(c[1], screen.height_px);
                let seg = [
                    ScreenPos::new(clamp_px(c[0] - STROKE_HALF_PX, screen.width_px), y),
                    ScreenPos::new(clamp_px(c[0] + STROKE_HALF_PX, screen.width_px), y),
                ];
                events.push(GestureEvent::new(t.saturating_sub(100).max(f.spawn_t), GestureKind::CutStart));
                events.push(GestureEvent::new(t, GestureKind::CutEnd { seg }));
            }
            Entity::Shape(s) => {
                let c = s.geometry.center();
                let pos = ScreenPos::new(clamp_px(c[0], screen.width_px), clamp_px(c[1], screen.height_px));
                events.push(GestureEvent::new(s.appear_t, GestureKind::Click { pos }));
            }
        }
    }
    events.sort_by_key(|e| (e.t, e.kind.rank()));
    events
}
