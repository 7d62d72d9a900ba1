//! Run configuration: pipeline, gesture thresholds, game constants and
//! service settings, addressed by namespaced keys (`pipeline.*`,
//! `gestures.*`, `game.*`, `service.*`).
//!
//! Values are merged defaults ← config file ← overrides. Unknown keys and
//! out-of-range values are rejected. [`Config::echo`] renders every field in
//! a fixed order so reports and the service can echo the effective settings.

use crate::pointer::MovementBox;
use crate::types::{Point3D, ScreenDims};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("config key `{key}`: {reason}")]
    BadValue { key: String, reason: String },
    #[error("config must be a JSON object: {0}")]
    NotAnObject(String),
}

/// Gesture detector thresholds. Every value is configurable and echoed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GestureThresholds {
    /// Push depth toward the sensor that counts as a click (m).
    pub click_dz_m: f64,
    pub click_window_ms: u64,
    pub click_refractory_ms: u64,
    /// Peak planar hand speed a sweep must reach to count as a cut (m/s).
    pub cut_speed_mps: f64,
    /// Planar speed delimiting a sweep episode (m/s). Values above
    /// `cut_speed_mps` are capped to it.
    pub cut_release_mps: f64,
    pub cut_min_path_m: f64,
    pub cut_min_dur_ms: u64,
    pub rot_min_angle_deg: f64,
    pub rot_min_radius_m: f64,
    /// Span of the trailing window the rotation centroid is taken over.
    pub rot_window_ms: u64,
    pub balance_band_m: f64,
    pub balance_window_ms: u64,
}

impl Default for GestureThresholds {
    fn default() -> Self {
        Self {
            click_dz_m: 0.12,
            click_window_ms: 400,
            click_refractory_ms: 300,
            cut_speed_mps: 1.5,
            cut_release_mps: 0.5,
            cut_min_path_m: 0.25,
            cut_min_dur_ms: 100,
            rot_min_angle_deg: 270.0,
            rot_min_radius_m: 0.05,
            rot_window_ms: 1500,
            balance_band_m: 0.05,
            balance_window_ms: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub fps_nominal: f64,
    pub smoothing_alpha: f64,
    pub dead_zone_m: f64,
    pub velocity_window: usize,
    pub screen: ScreenDims,
    pub box_width_m: f64,
    pub box_height_m: f64,
    /// Offset of the default box origin from the shoulder center.
    pub box_offset_x_m: f64,
    pub box_offset_y_m: f64,
    /// Absolute box origin; when both are set the shoulder anchor is unused.
    pub box_origin_x_m: Option<f64>,
    pub box_origin_y_m: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            fps_nominal: 30.0,
            smoothing_alpha: 0.5,
            dead_zone_m: 0.01,
            velocity_window: 5,
            screen: ScreenDims::default(),
            box_width_m: 0.5,
            box_height_m: 0.5,
            box_offset_x_m: -0.25,
            box_offset_y_m: 0.25,
            box_origin_x_m: None,
            box_origin_y_m: None,
        }
    }
}

impl PipelineConfig {
    /// Movement box for a stream whose first frame has this shoulder center.
    pub fn movement_box(&self, shoulder: Point3D) -> MovementBox {
        match (self.box_origin_x_m, self.box_origin_y_m) {
            (Some(x), Some(y)) => MovementBox {
                origin: Point3D::new(x, y, shoulder.z),
                move_width: self.box_width_m,
                move_height: self.box_height_m,
            },
            _ => MovementBox::anchored(
                shoulder,
                self.box_offset_x_m,
                self.box_offset_y_m,
                self.box_width_m,
                self.box_height_m,
            ),
        }
    }

    /// Nominal gap between frames, used when a message carries no timestamp.
    pub fn nominal_frame_ms(&self) -> u64 {
        ((1000.0 / self.fps_nominal).round() as u64).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConfig {
    pub seed: u64,
    pub session_ms: u64,
    pub spawn_interval_ms: u64,
    pub score_per_hit: u32,
    pub gravity_px_s2: f64,
    pub fruit_radius_px: f64,
    pub spawn_x_min_frac: f64,
    pub spawn_x_max_frac: f64,
    pub fruit_vx_max_px_s: f64,
    /// Apex height range as a fraction of screen height.
    pub apex_min_frac: f64,
    pub apex_max_frac: f64,
    pub shape_lifetime_ms: u64,
    pub shape_min_px: f64,
    pub shape_max_px: f64,
    pub match_dt_ms: u64,
    pub match_dist_px: f64,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            session_ms: 60_000,
            spawn_interval_ms: 1000,
            score_per_hit: 10,
            gravity_px_s2: 600.0,
            fruit_radius_px: 24.0,
            spawn_x_min_frac: 0.1,
            spawn_x_max_frac: 0.9,
            fruit_vx_max_px_s: 120.0,
            apex_min_frac: 0.4,
            apex_max_frac: 0.9,
            shape_lifetime_ms: 1500,
            shape_min_px: 20.0,
            shape_max_px: 40.0,
            match_dt_ms: 200,
            match_dist_px: 30.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ServiceConfig {
    pub port: u16,
    /// Per-session frame budget per second; excess frames are dropped.
    pub max_frame_rate: u32,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { port: 8765, max_frame_rate: 1000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Config {
    pub pipeline: PipelineConfig,
    pub gestures: GestureThresholds,
    pub game: GameConfig,
    pub service: ServiceConfig,
}

fn bad(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue { key: key.to_string(), reason: reason.into() }
}

fn real(key: &str, v: &Value) -> Result<f64, ConfigError> {
    v.as_f64().filter(|x| x.is_finite()).ok_or_else(|| bad(key, format!("expected a finite number, got {v}")))
}

fn positive(key: &str, v: &Value) -> Result<f64, ConfigError> {
    let x = real(key, v)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(bad(key, format!("must be > 0, got {x}")))
    }
}

fn nonneg(key: &str, v: &Value) -> Result<f64, ConfigError> {
    let x = real(key, v)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(bad(key, format!("must be >= 0, got {x}")))
    }
}

fn unit(key: &str, v: &Value) -> Result<f64, ConfigError> {
    let x = real(key, v)?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(bad(key, format!("must be within [0, 1], got {x}")))
    }
}

fn uint(key: &str, v: &Value, min: u64, max: u64) -> Result<u64, ConfigError> {
    let n = v.as_u64().ok_or_else(|| bad(key, format!("expected a non-negative integer, got {v}")))?;
    if (min..=max).contains(&n) {
        Ok(n)
    } else {
        Err(bad(key, format!("must be within [{min}, {max}], got {n}")))
    }
}

fn optional_real(key: &str, v: &Value) -> Result<Option<f64>, ConfigError> {
    if v.is_null() {
        Ok(None)
    } else {
        real(key, v).map(Some)
    }
}

fn opt_json(x: Option<f64>) -> Value {
    x.map_or(Value::Null, Value::from)
}

impl Config {
    /// Every key in echo order.
    pub const KEYS: [&'static str; 42] = [
        "pipeline.fps_nominal",
        "pipeline.smoothing_alpha",
        "pipeline.dead_zone_m",
        "pipeline.velocity_window",
        "pipeline.screen_width",
        "pipeline.screen_height",
        "pipeline.box_width_m",
        "pipeline.box_height_m",
        "pipeline.box_offset_x_m",
        "pipeline.box_offset_y_m",
        "pipeline.box_origin_x_m",
        "pipeline.box_origin_y_m",
        "gestures.click_dz_m",
        "gestures.click_window_ms",
        "gestures.click_refractory_ms",
        "gestures.cut_speed_mps",
        "gestures.cut_release_mps",
        "gestures.cut_min_path_m",
        "gestures.cut_min_dur_ms",
        "gestures.rot_min_angle_deg",
        "gestures.rot_min_radius_m",
        "gestures.rot_window_ms",
        "gestures.balance_band_m",
        "gestures.balance_window_ms",
        "game.seed",
        "game.session_ms",
        "game.spawn_interval_ms",
        "game.score_per_hit",
        "game.gravity_px_s2",
        "game.fruit_radius_px",
        "game.spawn_x_min_frac",
        "game.spawn_x_max_frac",
        "game.fruit_vx_max_px_s",
        "game.apex_min_frac",
        "game.apex_max_frac",
        "game.shape_lifetime_ms",
        "game.shape_min_px",
        "game.shape_max_px",
        "game.match_dt_ms",
        "game.match_dist_px",
        "service.port",
        "service.max_frame_rate",
    ];

    /// Sets one namespaced key, checking its individual range.
    pub fn set(&mut self, key: &str, v: &Value) -> Result<(), ConfigError> {
        const DAY_MS: u64 = 86_400_000;
        let p = &mut self.pipeline;
        let g = &mut self.gestures;
        let gm = &mut self.game;
        match key {
            "pipeline.fps_nominal" => p.fps_nominal = positive(key, v)?,
            "pipeline.smoothing_alpha" => p.smoothing_alpha = unit(key, v)?,
            "pipeline.dead_zone_m" => p.dead_zone_m = nonneg(key, v)?,
            "pipeline.velocity_window" => p.velocity_window = uint(key, v, 2, 120)? as usize,
            "pipeline.screen_width" => p.screen.width_px = uint(key, v, 1, 65536)? as u32,
            "pipeline.screen_height" => p.screen.height_px = uint(key, v, 1, 65536)? as u32,
            "pipeline.box_width_m" => p.box_width_m = positive(key, v)?,
            "pipeline.box_height_m" => p.box_height_m = positive(key, v)?,
            "pipeline.box_offset_x_m" => p.box_offset_x_m = real(key, v)?,
            "pipeline.box_offset_y_m" => p.box_offset_y_m = real(key, v)?,
            "pipeline.box_origin_x_m" => p.box_origin_x_m = optional_real(key, v)?,
            "pipeline.box_origin_y_m" => p.box_origin_y_m = optional_real(key, v)?,
            "gestures.click_dz_m" => g.click_dz_m = positive(key, v)?,
            "gestures.click_window_ms" => g.click_window_ms = uint(key, v, 1, DAY_MS)?,
            "gestures.click_refractory_ms" => g.click_refractory_ms = uint(key, v, 1, DAY_MS)?,
            "gestures.cut_speed_mps" => g.cut_speed_mps = positive(key, v)?,
            "gestures.cut_release_mps" => g.cut_release_mps = positive(key, v)?,
            "gestures.cut_min_path_m" => g.cut_min_path_m = positive(key, v)?,
            "gestures.cut_min_dur_ms" => g.cut_min_dur_ms = uint(key, v, 1, DAY_MS)?,
            "gestures.rot_min_angle_deg" => g.rot_min_angle_deg = positive(key, v)?,
            "gestures.rot_min_radius_m" => g.rot_min_radius_m = positive(key, v)?,
            "gestures.rot_window_ms" => g.rot_window_ms = uint(key, v, 1, DAY_MS)?,
            "gestures.balance_band_m" => g.balance_band_m = positive(key, v)?,
            "gestures.balance_window_ms" => g.balance_window_ms = uint(key, v, 1, DAY_MS)?,
            "game.seed" => gm.seed = uint(key, v, 0, u64::MAX)?,
            "game.session_ms" => gm.session_ms = uint(key, v, 1, DAY_MS)?,
            "game.spawn_interval_ms" => gm.spawn_interval_ms = uint(key, v, 1, DAY_MS)?,
            "game.score_per_hit" => gm.score_per_hit = uint(key, v, 1, 1_000_000)? as u32,
            "game.gravity_px_s2" => gm.gravity_px_s2 = positive(key, v)?,
            "game.fruit_radius_px" => gm.fruit_radius_px = positive(key, v)?,
            "game.spawn_x_min_frac" => gm.spawn_x_min_frac = unit(key, v)?,
            "game.spawn_x_max_frac" => gm.spawn_x_max_frac = unit(key, v)?,
            "game.fruit_vx_max_px_s" => gm.fruit_vx_max_px_s = nonneg(key, v)?,
            "game.apex_min_frac" => gm.apex_min_frac = unit(key, v)?,
            "game.apex_max_frac" => gm.apex_max_frac = unit(key, v)?,
            "game.shape_lifetime_ms" => gm.shape_lifetime_ms = uint(key, v, 1, DAY_MS)?,
            "game.shape_min_px" => gm.shape_min_px = positive(key, v)?,
            "game.shape_max_px" => gm.shape_max_px = positive(key, v)?,
            "game.match_dt_ms" => gm.match_dt_ms = uint(key, v, 0, DAY_MS)?,
            "game.match_dist_px" => gm.match_dist_px = nonneg(key, v)?,
            "service.port" => self.service.port = uint(key, v, 0, 65535)? as u16,
            "service.max_frame_rate" => self.service.max_frame_rate = uint(key, v, 1, 1_000_000)? as u32,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Checks constraints spanning several keys. Call after merging.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let gm = &self.game;
        if gm.spawn_x_min_frac >= gm.spawn_x_max_frac {
            return Err(bad("game.spawn_x_min_frac", "must be below game.spawn_x_max_frac"));
        }
        if gm.apex_min_frac <= 0.0 || gm.apex_min_frac > gm.apex_max_frac {
            return Err(bad("game.apex_min_frac", "must be > 0 and <= game.apex_max_frac"));
        }
        if gm.shape_min_px > gm.shape_max_px {
            return Err(bad("game.shape_min_px", "must be <= game.shape_max_px"));
        }
        let screen = self.pipeline.screen;
        if 2.0 * gm.shape_max_px >= screen.width_px.min(screen.height_px) as f64 {
            return Err(bad("game.shape_max_px", "shapes must fit on the screen"));
        }
        if self.pipeline.box_origin_x_m.is_some() != self.pipeline.box_origin_y_m.is_some() {
            return Err(bad("pipeline.box_origin_x_m", "box_origin_x_m and box_origin_y_m must be set together"));
        }
        Ok(())
    }

    /// Applies every entry of a JSON object. Keys may be dotted
    /// (`{"pipeline.smoothing_alpha": 0.8}`) or nested
    /// (`{"pipeline": {"smoothing_alpha": 0.8}}`).
    pub fn apply_object(&mut self, obj: &Map<String, Value>) -> Result<(), ConfigError> {
        let mut flat = Vec::new();
        flatten("", obj, &mut flat);
        for (key, value) in flat {
            self.set(&key, value)?;
        }
        self.validate()
    }

    /// Parses a config document (one JSON object) over the current values.
    pub fn apply_json(&mut self, text: &str) -> Result<(), ConfigError> {
        let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::NotAnObject(e.to_string()))?;
        match value {
            Value::Object(obj) => self.apply_object(&obj),
            other => Err(ConfigError::NotAnObject(format!("got {other}"))),
        }
    }

    /// All fields, in [`Config::KEYS`] order.
    pub fn echo(&self) -> Vec<(&'static str, Value)> {
        let p = &self.pipeline;
        let g = &self.gestures;
        let gm = &self.game;
        let values: [Value; 42] = [
            p.fps_nominal.into(),
            p.smoothing_alpha.into(),
            p.dead_zone_m.into(),
            (p.velocity_window as u64).into(),
            p.screen.width_px.into(),
            p.screen.height_px.into(),
            p.box_width_m.into(),
            p.box_height_m.into(),
            p.box_offset_x_m.into(),
            p.box_offset_y_m.into(),
            opt_json(p.box_origin_x_m),
            opt_json(p.box_origin_y_m),
            g.click_dz_m.into(),
            g.click_window_ms.into(),
            g.click_refractory_ms.into(),
            g.cut_speed_mps.into(),
            g.cut_release_mps.into(),
            g.cut_min_path_m.into(),
            g.cut_min_dur_ms.into(),
            g.rot_min_angle_deg.into(),
            g.rot_min_radius_m.into(),
            g.rot_window_ms.into(),
            g.balance_band_m.into(),
            g.balance_window_ms.into(),
            gm.seed.into(),
            gm.session_ms.into(),
            gm.spawn_interval_ms.into(),
            gm.score_per_hit.into(),
            gm.gravity_px_s2.into(),
            gm.fruit_radius_px.into(),
            gm.spawn_x_min_frac.into(),
            gm.spawn_x_max_frac.into(),
            gm.fruit_vx_max_px_s.into(),
            gm.apex_min_frac.into(),
            gm.apex_max_frac.into(),
            gm.shape_lifetime_ms.into(),
            gm.shape_min_px.into(),
            gm.shape_max_px.into(),
            gm.match_dt_ms.into(),
            gm.match_dist_px.into(),
            self.service.port.into(),
            self.service.max_frame_rate.into(),
        ];
        Self::KEYS.into_iter().zip(values).collect()
    }
}

fn flatten<'a>(prefix: &str, obj: &'a Map<String, Value>, out: &mut Vec<(String, &'a Value)>) {
    for (k, v) in obj {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) if prefix.is_empty() && !k.contains('.') => flatten(&key, inner, out),
            _ => out.push((key, v)),
        }
    }
}
