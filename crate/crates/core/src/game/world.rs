use super::fruit::{advance, fruit_hit_test, spawn_fruit, FruitState};
use super::shape::{shape_hit_test, spawn_shape, ShapeTarget};
use crate::config::GameConfig;
use crate::types::{GestureEvent, GestureKind, ScreenDims};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameKind {
    Fruit,
    Shape,
}

impl GameKind {
    pub fn tag(self) -> &'static str {
        match self {
            GameKind::Fruit => "fruit",
            GameKind::Shape => "shape",
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fruit" => Ok(GameKind::Fruit),
            "shape" => Ok(GameKind::Shape),
            other => Err(format!("unknown game `{other}` (expected fruit or shape)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Entity {
    /// Launch state of the fruit.
    Fruit(FruitState),
    Shape(ShapeTarget),
}

impl Entity {
    pub fn id(&self) -> u32 {
        match self {
            Entity::Fruit(f) => f.id,
            Entity::Shape(s) => s.id,
        }
    }

    pub fn spawn_t(&self) -> u64 {
        match self {
            Entity::Fruit(f) => f.spawn_t,
            Entity::Shape(s) => s.appear_t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionStats {
    pub score: u64,
    pub hits: u32,
    pub misses: u32,
    pub spawned: u32,
    pub hit_rate: f64,
    pub duration_ms: u64,
}

impl SessionStats {
    pub fn new(score: u64, hits: u32, misses: u32, spawned: u32, duration_ms: u64) -> Self {
        let judged = hits + misses;
        let hit_rate = if judged > 0 { hits as f64 / judged as f64 } else { 0.0 };
        Self { score, hits, misses, spawned, hit_rate, duration_ms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DespawnReason {
    /// Fruit fell below the screen unhit.
    Missed,
    /// Shape lifetime ran out unclicked.
    Expired,
    /// Still on screen when the session ended.
    SessionEnd,
}

impl DespawnReason {
    pub fn tag(self) -> &'static str {
        match self {
            DespawnReason::Missed => "missed",
            DespawnReason::Expired => "expired",
            DespawnReason::SessionEnd => "session_end",
        }
    }
}

/// Observable game-state change, in the order it happened.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Notice {
    Spawn { t: u64, entity: Entity },
    Despawn { t: u64, id: u32, reason: DespawnReason },
    Hit { t: u64, id: u32, points: u32, score: u64 },
    End { t: u64, stats: SessionStats },
}

/// One game session on a fixed timeline `[t0, t0 + session_ms)`. Every
/// spawn is drawn up front from the seed, so the timeline does not depend
/// on how finely the world is advanced.
#[derive(Debug, Clone)]
pub struct World {
    kind: GameKind,
    cfg: GameConfig,
    screen: ScreenDims,
    t0: u64,
    end_t: u64,
    planned: Vec<Entity>,
    next: usize,
    live: Vec<Entity>,
    hits: u32,
    misses: u32,
    score: u64,
    now: u64,
    ended_at: Option<u64>,
}

impl World {
    pub fn new(kind: GameKind, cfg: &GameConfig, screen: ScreenDims, seed: u64, t0: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let end_t = t0 + cfg.session_ms;
        let mut planned = Vec::new();
        for k in 0u64.. {
            let t = t0 + k * cfg.spawn_interval_ms;
            if t >= end_t {
                break;
            }
            let id = k as u32 + 1;
            planned.push(match kind {
                GameKind::Fruit => Entity::Fruit(spawn_fruit(&mut rng, cfg, screen, id, t)),
                GameKind::Shape => Entity::Shape(spawn_shape(&mut rng, cfg, screen, id, t)),
            });
        }
        Self {
            kind,
            cfg: *cfg,
            screen,
            t0,
            end_t,
            planned,
            next: 0,
            live: Vec::new(),
            hits: 0,
            misses: 0,
            score: 0,
            now: t0,
            ended_at: None,
        }
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn start_t(&self) -> u64 {
        self.t0
    }

    pub fn end_t(&self) -> u64 {
        self.end_t
    }

    /// Every entity the session will spawn, in spawn order.
    pub fn planned(&self) -> &[Entity] {
        &self.planned
    }

    pub fn is_finished(&self) -> bool {
        self.ended_at.is_some()
    }

    /// Fruit state at `t` from its launch state.
    pub fn fruit_at(&self, launch: &FruitState, t: u64) -> FruitState {
        advance(launch, t.saturating_sub(launch.spawn_t), self.cfg.gravity_px_s2, self.screen.height_px as f64)
    }

    pub fn stats(&self) -> SessionStats {
        let end = self.ended_at.unwrap_or(self.now);
        SessionStats::new(self.score, self.hits, self.misses, self.next as u32, end - self.t0)
    }

    /// Spawns due entities and retires fallen fruit and expired shapes. At
    /// or past the session end the session closes.
    pub fn advance_to(&mut self, t: u64) -> Vec<Notice> {
        let mut out = Vec::new();
        if self.is_finished() {
            return out;
        }
        let t = t.max(self.now).min(self.end_t);
        while let Some(entity) = self.planned.get(self.next).filter(|e| e.spawn_t() <= t).copied() {
            self.next += 1;
            self.live.push(entity);
            out.push(Notice::Spawn { t: entity.spawn_t(), entity });
        }
        let mut kept = Vec::with_capacity(self.live.len());
        for entity in std::mem::take(&mut self.live) {
            let gone = match &entity {
                Entity::Fruit(f) => (!self.fruit_at(f, t).alive).then_some(DespawnReason::Missed),
                Entity::Shape(s) => (s.expire_t <= t).then_some(DespawnReason::Expired),
            };
            match gone {
                Some(reason) => {
                    self.misses += 1;
                    out.push(Notice::Despawn { t, id: entity.id(), reason });
                }
                None => kept.push(entity),
            }
        }
        self.live = kept;
        self.now = t;
        if t >= self.end_t {
            out.extend(self.close(t));
        }
        out
    }

    /// Feeds one gesture event: cut segments slice fruit, clicks touch
    /// shapes. Events outside the session window only advance time.
    pub fn apply(&mut self, event: &GestureEvent) -> Vec<Notice> {
        let mut out = self.advance_to(event.t);
        if self.is_finished() || event.t < self.t0 {
            return out;
        }
        let t = self.now;
        let kind = self.kind;
        let mut kept = Vec::with_capacity(self.live.len());
        for entity in std::mem::take(&mut self.live) {
            let hit = match (kind, &event.kind, &entity) {
                (GameKind::Fruit, GestureKind::CutEnd { seg }, Entity::Fruit(f)) => {
                    let s = seg.map(|p| [p.px as f64, p.py as f64]);
                    fruit_hit_test(s, &self.fruit_at(f, t))
                }
                (GameKind::Shape, GestureKind::Click { pos }, Entity::Shape(s)) => shape_hit_test(*pos, s, t),
                _ => false,
            };
            if hit {
                self.hits += 1;
                self.score += self.cfg.score_per_hit as u64;
                out.push(Notice::Hit { t, id: entity.id(), points: self.cfg.score_per_hit, score: self.score });
            } else {
                kept.push(entity);
            }
        }
        self.live = kept;
        out
    }

    /// Ends the session early at `t` (or at its natural end if earlier).
    pub fn stop(&mut self, t: u64) -> Vec<Notice> {
        let mut out = self.advance_to(t);
        if !self.is_finished() {
            out.extend(self.close(self.now));
        }
        out
    }

    /// Runs the session to its natural end.
    pub fn finish(&mut self) -> Vec<Notice> {
        self.advance_to(self.end_t)
    }

    fn close(&mut self, t: u64) -> Vec<Notice> {
        let mut out = Vec::new();
        for entity in std::mem::take(&mut self.live) {
            self.misses += 1;
            out.push(Notice::Despawn { t, id: entity.id(), reason: DespawnReason::SessionEnd });
        }
        self.now = t;
        self.ended_at = Some(t);
        out.push(Notice::End { t, stats: self.stats() });
        out
    }
}

/// Plays one full session over a time-ordered event stream. The session
/// timeline starts at t = 0.
pub fn run_session(
    events: &[GestureEvent],
    kind: GameKind,
    cfg: &GameConfig,
    screen: ScreenDims,
    seed: u64,
) -> SessionStats {
    let mut world = World::new(kind, cfg, screen, seed, 0);
    for e in events {
        world.apply(e);
    }
    world.finish();
    world.stats()
}
