//! Per-connection protocol state machine. Pure: one inbound text message in,
//! the ordered outbound text messages back.

use crate::config::Config;
use crate::game::{Entity, GameKind, Notice, SessionStats, ShapeGeometry, World};
use crate::pipeline::Pipeline;
use crate::stream::events::event_writer;
use crate::stream::json::{value, ObjectWriter};
use crate::stream::raw_frame_from_value;
use crate::stream::script::REST_SHOULDER;
use crate::types::{GestureEvent, Point3D, RawFrame};
use serde_json::{Map, Value};
use std::time::Instant;

/// Stable error codes carried by `error` replies.
pub mod code {
    pub const BAD_JSON: &str = "bad_json";
    pub const BAD_MESSAGE: &str = "bad_message";
    pub const UNKNOWN_TYPE: &str = "unknown_type";
    pub const BAD_CONFIG: &str = "bad_config";
    pub const NO_SESSION: &str = "no_session";
    pub const SESSION_ALREADY_OPEN: &str = "session_already_open";
    pub const FRAME_INVALID: &str = "frame_invalid";
    pub const NON_MONOTONE_TIMESTAMP: &str = "non_monotone_timestamp";
    pub const RATE_EXCEEDED: &str = "rate_exceeded";
    pub const GAME_ALREADY_RUNNING: &str = "game_already_running";
    pub const NO_GAME_RUNNING: &str = "no_game_running";
}

pub fn error_message(code: &str, detail: &str) -> String {
    ObjectWriter::new().str("type", "error").str("code", code).str("detail", detail).finish()
}

/// Token bucket: `rate` tokens per second, holding at most `rate`.
#[derive(Debug, Clone)]
pub struct RateLimiter {
    rate: f64,
    tokens: f64,
    last: Option<Instant>,
}

impl RateLimiter {
    pub fn new(per_second: u32) -> Self {
        Self { rate: per_second as f64, tokens: per_second as f64, last: None }
    }

    pub fn try_take(&mut self, now: Instant) -> bool {
        if let Some(last) = self.last {
            let dt = now.saturating_duration_since(last).as_secs_f64();
            self.tokens = (self.tokens + dt * self.rate).min(self.rate);
        }
        self.last = Some(now);
        if self.tokens >= 1.0 {
            self.tokens -= 1.0;
            true
        } else {
            false
        }
    }
}

struct ActiveGame {
    world: World,
    seed: u64,
}

struct Open {
    config: Config,
    pipeline: Pipeline,
    limiter: RateLimiter,
    game: Option<ActiveGame>,
}

pub struct Session {
    id: String,
    defaults: Config,
    open: Option<Open>,
}

type Reply = Vec<String>;

fn err(code: &str, detail: impl AsRef<str>) -> Reply {
    vec![error_message(code, detail.as_ref())]
}

impl Session {
    pub fn new(id: impl Into<String>, defaults: Config) -> Self {
        Self { id: id.into(), defaults, open: None }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn is_open(&self) -> bool {
        self.open.is_some()
    }

    /// Handles one inbound message. Never fails: problems become `error`
    /// replies and the session stays usable.
    pub fn handle(&mut self, text: &str, now: Instant) -> Reply {
        let value: Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return err(code::BAD_JSON, e.to_string()),
        };
        let Value::Object(mut msg) = value else {
            return err(code::BAD_MESSAGE, "message must be an object");
        };
        let kind = match msg.remove("type") {
            Some(Value::String(s)) => s,
            Some(_) => return err(code::BAD_MESSAGE, "`type` must be a string"),
            None => return err(code::BAD_MESSAGE, "missing `type`"),
        };
        match kind.as_str() {
            "hello" => self.hello(msg),
            "frame" | "hand" | "game_start" | "game_stop" => {
                let Some(open) = self.open.as_mut() else {
                    return err(code::NO_SESSION, "send hello first");
                };
                match kind.as_str() {
                    "frame" => open.frame(msg, now),
                    "hand" => open.hand(msg, now),
                    "game_start" => open.game_start(msg),
                    _ => open.game_stop(msg),
                }
            }
            other => err(code::UNKNOWN_TYPE, format!("unknown message type `{other}`")),
        }
    }

    fn hello(&mut self, mut msg: Map<String, Value>) -> Reply {
        if self.open.is_some() {
            return err(code::SESSION_ALREADY_OPEN, "hello already accepted");
        }
        let overrides = msg.remove("config");
        if let Some(k) = msg.keys().next() {
            return err(code::BAD_MESSAGE, format!("unexpected field `{k}` in hello"));
        }
        let mut config = self.defaults;
        match overrides {
            None | Some(Value::Null) => {}
            Some(Value::Object(obj)) => {
                if let Err(e) = config.apply_object(&obj) {
                    return err(code::BAD_CONFIG, e.to_string());
                }
            }
            Some(_) => return err(code::BAD_CONFIG, "`config` must be an object"),
        }
        let mut echo = ObjectWriter::new();
        for (key, v) in config.echo() {
            echo = echo.raw(key, &value(&v));
        }
        self.open = Some(Open {
            config,
            pipeline: Pipeline::new(&config),
            limiter: RateLimiter::new(config.service.max_frame_rate),
            game: None,
        });
        vec![ObjectWriter::new().str("type", "ready").str("session", &self.id).raw("config", &echo.finish()).finish()]
    }
}

fn pointer_message(u: u32, v: u32, t: u64) -> String {
    ObjectWriter::new().str("type", "pointer").int("u", u).int("v", v).int("t", t).finish()
}

fn gesture_message(e: &GestureEvent) -> String {
    let body = event_writer(e).finish();
    format!("{{\"type\":\"gesture\",{}", &body[1..])
}

fn stats_message(game: GameKind, seed: u64, s: &SessionStats) -> String {
    let body = crate::game::report::stats_writer(s).finish();
    let head = ObjectWriter::new().str("type", "stats").str("game", game.tag()).int("seed", seed).finish();
    format!("{},{}", &head[..head.len() - 1], &body[1..])
}

fn notice_message(n: &Notice, game: GameKind, seed: u64) -> String {
    match *n {
        Notice::Spawn { t, entity } => {
            let w = ObjectWriter::new().str("type", "spawn").int("id", entity.id()).int("t", t);
            match entity {
                Entity::Fruit(f) => w
                    .str("shape", "fruit")
                    .real("x", f.center[0])
                    .real("y", f.center[1])
                    .real("r", f.radius_px)
                    .real("vx", f.velocity[0])
                    .real("vy", f.velocity[1]),
                Entity::Shape(s) => {
                    let w = w.str("shape", s.geometry.tag());
                    match s.geometry {
                        ShapeGeometry::Circle { center, radius } => {
                            w.real("x", center[0]).real("y", center[1]).real("r", radius)
                        }
                        ShapeGeometry::Rect { corner, extent } => {
                            w.real("x", corner[0]).real("y", corner[1]).real("w", extent[0]).real("h", extent[1])
                        }
                    }
                    .int("expire_t", s.expire_t)
                }
            }
            .finish()
        }
        Notice::Despawn { t, id, reason } => {
            ObjectWriter::new().str("type", "despawn").int("id", id).int("t", t).str("reason", reason.tag()).finish()
        }
        Notice::Hit { t, id, points, score } => ObjectWriter::new()
            .str("type", "hit")
            .int("id", id)
            .int("t", t)
            .int("points", points)
            .int("score", score)
            .finish(),
        Notice::End { stats, .. } => stats_message(game, seed, &stats),
    }
}

fn field_f64(msg: &Map<String, Value>, key: &str) -> Result<Option<f64>, String> {
    match msg.get(key) {
        None => Ok(None),
        Some(v) => v.as_f64().map(Some).ok_or_else(|| format!("`{key}` must be a number")),
    }
}

impl Open {
    fn frame(&mut self, msg: Map<String, Value>, now: Instant) -> Reply {
        if !self.limiter.try_take(now) {
            return err(code::RATE_EXCEEDED, "frame dropped: rate limit exceeded");
        }
        match raw_frame_from_value(Value::Object(msg)) {
            Ok(raw) => self.ingest(&raw),
            Err(e) => err(code::BAD_MESSAGE, e),
        }
    }

    /// Virtual hand: panel coordinates in [0,1] (y down) placed inside the
    /// movement box for both hands; `push` moves the left hand toward the
    /// sensor by 1.5 click depths.
    fn hand(&mut self, msg: Map<String, Value>, now: Instant) -> Reply {
        if !self.limiter.try_take(now) {
            return err(code::RATE_EXCEEDED, "hand dropped: rate limit exceeded");
        }
        if let Some(k) = msg.keys().find(|k| !matches!(k.as_str(), "x" | "y" | "push" | "t")) {
            return err(code::BAD_MESSAGE, format!("unexpected field `{k}` in hand"));
        }
        let (x, y) = match (field_f64(&msg, "x"), field_f64(&msg, "y")) {
            (Ok(Some(x)), Ok(Some(y))) if (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) => (x, y),
            _ => return err(code::BAD_MESSAGE, "`x` and `y` must be numbers in [0,1]"),
        };
        let push = match msg.get("push") {
            None => false,
            Some(Value::Bool(b)) => *b,
            Some(_) => return err(code::BAD_MESSAGE, "`push` must be a boolean"),
        };
        let t = match msg.get("t") {
            None => self.pipeline.last_t().map_or(0, |t| t + self.config.pipeline.nominal_frame_ms()),
            Some(v) => match v.as_u64() {
                Some(t) => t,
                None => return err(code::BAD_MESSAGE, "`t` must be a non-negative integer"),
            },
        };
        let mbox = self.pipeline.movement_box().unwrap_or_else(|| self.config.pipeline.movement_box(REST_SHOULDER));
        let z = mbox.origin.z;
        let hand = Point3D::new(mbox.origin.x + x * mbox.move_width, mbox.origin.y - y * mbox.move_height, z);
        let left = if push { Point3D { z: z - 1.5 * self.config.gestures.click_dz_m, ..hand } } else { hand };
        let raw = RawFrame {
            t: t as i64,
            hand_left: Some(left.to_array()),
            hand_right: Some(hand.to_array()),
            shoulder_center: Some(REST_SHOULDER.to_array()),
        };
        self.ingest(&raw)
    }

    fn ingest(&mut self, raw: &RawFrame) -> Reply {
        let step = match self.pipeline.process(raw) {
            Ok(step) => step,
            Err(e) => return err(e.code(), e.to_string()),
        };
        let (u, v) = step.pointer.wire();
        let mut out = vec![pointer_message(u, v, step.pointer.t)];
        out.extend(step.events.iter().map(gesture_message));
        if let Some(game) = self.game.as_mut() {
            let kind = game.world.kind();
            let mut notices = game.world.advance_to(step.pointer.t);
            for e in &step.events {
                notices.extend(game.world.apply(e));
            }
            out.extend(notices.iter().map(|n| notice_message(n, kind, game.seed)));
            if game.world.is_finished() {
                self.game = None;
            }
        }
        out
    }

    fn game_start(&mut self, msg: Map<String, Value>) -> Reply {
        if let Some(k) = msg.keys().find(|k| !matches!(k.as_str(), "game" | "seed")) {
            return err(code::BAD_MESSAGE, format!("unexpected field `{k}` in game_start"));
        }
        let kind: GameKind = match msg.get("game").and_then(Value::as_str).map(str::parse) {
            Some(Ok(k)) => k,
            Some(Err(e)) => return err(code::BAD_MESSAGE, e),
            None => return err(code::BAD_MESSAGE, "`game` must be \"fruit\" or \"shape\""),
        };
        let seed = match msg.get("seed") {
            None => self.config.game.seed,
            Some(v) => match v.as_u64() {
                Some(s) => s,
                None => return err(code::BAD_MESSAGE, "`seed` must be a non-negative integer"),
            },
        };
        if self.game.is_some() {
            return err(code::GAME_ALREADY_RUNNING, "stop the running game first");
        }
        let t0 = self.pipeline.last_t().unwrap_or(0);
        let mut world = World::new(kind, &self.config.game, self.config.pipeline.screen, seed, t0);
        let notices = world.advance_to(t0);
        self.game = Some(ActiveGame { world, seed });
        notices.iter().map(|n| notice_message(n, kind, seed)).collect()
    }

    fn game_stop(&mut self, msg: Map<String, Value>) -> Reply {
        if let Some(k) = msg.keys().next() {
            return err(code::BAD_MESSAGE, format!("unexpected field `{k}` in game_stop"));
        }
        let Some(mut game) = self.game.take() else {
            return err(code::NO_GAME_RUNNING, "no game is running");
        };
        let t = self.pipeline.last_t().unwrap_or(0);
        let kind = game.world.kind();
        game.world.stop(t).iter().map(|n| notice_message(n, kind, game.seed)).collect()
    }
}
