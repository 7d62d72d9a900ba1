//! Deterministic fruit-slicing and shape-touch games, synthetic players and
//! the accuracy / hit-rate metrics.

pub mod eval;
pub mod fruit;
pub mod player;
pub mod report;
pub mod shape;
pub mod world;

pub use eval::{accuracy_vs_reference, match_events, EvalError, EvalReport, FamilyCount, Tolerance};
pub use fruit::{advance, fruit_hit_test, spawn_fruit, FruitState};
pub use player::{player_events, Player};
pub use report::Aggregate;
pub use shape::{shape_hit_test, spawn_shape, ShapeGeometry, ShapeTarget};
pub use world::{run_session, DespawnReason, Entity, GameKind, Notice, SessionStats, World};

use crate::config::GameConfig;
use crate::types::{GestureEvent, ScreenDims};

/// Where a batch of sessions gets its gesture events.
#[derive(Debug, Clone)]
pub enum EventSource {
    Player(Player),
    /// The same stream for every session.
    Events(Vec<GestureEvent>),
}

/// Runs `count` sessions with seeds `seed, seed+1, …`.
pub fn simulate(
    source: &EventSource,
    game: GameKind,
    cfg: &GameConfig,
    screen: ScreenDims,
    seed: u64,
    count: usize,
) -> Vec<(u64, SessionStats)> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let stats = match source {
                EventSource::Player(p) => run_session(&player_events(*p, game, cfg, screen, s), game, cfg, screen, s),
                EventSource::Events(events) => run_session(events, game, cfg, screen, s),
            };
            (s, stats)
        })
        .collect()
}
