//! Report documents (line-delimited, canonical) and plain-text tables.

use super::eval::EvalReport;
use super::world::{GameKind, SessionStats};
use crate::config::Config;
use crate::stream::json::{real, value, ObjectWriter};
use crate::types::GestureFamily;

pub const FORMAT_TAG: &str = "gmreport";
pub const VERSION: u64 = 1;

fn header(report: &str) -> String {
    ObjectWriter::new().str("fmt", FORMAT_TAG).int("v", VERSION).str("report", report).finish()
}

/// `{"config":{...}}` with every key in canonical order.
pub fn config_line(cfg: &Config) -> String {
    let mut w = ObjectWriter::new();
    for (key, v) in cfg.echo() {
        w = w.raw(key, &value(&v));
    }
    ObjectWriter::new().raw("config", &w.finish()).finish()
}

fn opt_real(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), real)
}

pub fn eval_object(r: &EvalReport) -> String {
    let mut acc = ObjectWriter::new();
    let mut matched = ObjectWriter::new();
    let mut reference = ObjectWriter::new();
    let mut candidate = ObjectWriter::new();
    for f in GestureFamily::COLUMNS {
        let c = r.count(f);
        acc = acc.raw(f.key(), &opt_real(r.accuracy(f)));
        matched = matched.int(f.key(), c.matched as u64);
        reference = reference.int(f.key(), c.reference as u64);
        candidate = candidate.int(f.key(), c.candidate as u64);
    }
    ObjectWriter::new()
        .raw("accuracy", &acc.finish())
        .raw("recognition_accuracy", &opt_real(r.recognition_accuracy()))
        .raw("miss_rate", &opt_real(r.miss_rate()))
        .raw("matched", &matched.finish())
        .raw("reference", &reference.finish())
        .raw("candidate", &candidate.finish())
        .int("tol_ms", r.tol.dt_ms)
        .real("tol_px", r.tol.dist_px)
        .finish()
}

pub fn bench_document(cfg: &Config, r: &EvalReport) -> String {
    let eval = ObjectWriter::new().raw("eval", &eval_object(r)).finish();
    format!("{}\n{}\n{}\n", header("bench"), config_line(cfg), eval)
}

pub fn stats_writer(s: &SessionStats) -> ObjectWriter {
    ObjectWriter::new()
        .int("score", s.score)
        .int("hits", s.hits)
        .int("misses", s.misses)
        .int("spawned", s.spawned)
        .real("hit_rate", s.hit_rate)
        .int("duration_ms", s.duration_ms)
}

/// Mean over a batch of sessions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aggregate {
    pub count: usize,
    pub mean_hit_rate: f64,
    pub mean_score: f64,
    pub hits: u64,
    pub misses: u64,
    pub spawned: u64,
}

impl Aggregate {
    pub fn of(sessions: &[SessionStats]) -> Self {
        let n = sessions.len();
        let mean = |f: &dyn Fn(&SessionStats) -> f64| {
            if n == 0 {
                0.0
            } else {
                sessions.iter().map(f).sum::<f64>() / n as f64
            }
        };
        Self {
            count: n,
            mean_hit_rate: mean(&|s| s.hit_rate),
            mean_score: mean(&|s| s.score as f64),
            hits: sessions.iter().map(|s| s.hits as u64).sum(),
            misses: sessions.iter().map(|s| s.misses as u64).sum(),
            spawned: sessions.iter().map(|s| s.spawned as u64).sum(),
        }
    }
}

pub fn simulate_document(cfg: &Config, game: GameKind, sessions: &[(u64, SessionStats)], agg: &Aggregate) -> String {
    let mut out = format!("{}\n{}\n", header("simulate"), config_line(cfg));
    for (i, (seed, s)) in sessions.iter().enumerate() {
        let line = ObjectWriter::new().raw(
            "session",
            &ObjectWriter::new().int("index", i as u64).str("game", game.tag()).int("seed", *seed).finish(),
        );
        out.push_str(&line.raw("stats", &stats_writer(s).finish()).finish());
        out.push('\n');
    }
    let aggregate = ObjectWriter::new()
        .str("game", game.tag())
        .int("count", agg.count as u64)
        .real("mean_hit_rate", agg.mean_hit_rate)
        .real("mean_score", agg.mean_score)
        .int("hits", agg.hits)
        .int("misses", agg.misses)
        .int("spawned", agg.spawned)
        .finish();
    out.push_str(&ObjectWriter::new().raw("aggregate", &aggregate).finish());
    out.push('\n');
    out
}

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.2}"))
}

/// Accuracy percentages per gesture family, one column each.
pub fn accuracy_table(r: &EvalReport) -> String {
    let cols = GestureFamily::COLUMNS;
    let mut out = String::from("Accuracy percentage by gesture\n");
    let width = |f: GestureFamily| f.label().len().max(7);
    let row = |cells: Vec<String>| {
        cells.iter().zip(cols).map(|(c, f)| format!("{c:>w$}", w = width(f))).collect::<Vec<_>>().join("  ")
    };
    out.push_str(&row(cols.iter().map(|f| f.label().to_string()).collect()));
    out.push('\n');
    out.push_str(&row(cols.iter().map(|f| pct(r.accuracy(*f))).collect()));
    out.push('\n');
    let frac = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.4}"));
    out.push_str(&format!(
        "Recognition accuracy {}  Miss rate {}  (tolerance {} ms, {} px)\n",
        frac(r.recognition_accuracy()),
        frac(r.miss_rate()),
        r.tol.dt_ms,
        r.tol.dist_px
    ));
    out
}

pub fn hit_rate_table(game: GameKind, agg: &Aggregate) -> String {
    format!(
        "Hit rate over {n} games\n{:<6}  {:>5}  {:>8}  {:>10}\n{:<6}  {:>5}  {:>8.3}  {:>10.2}\n",
        "Game",
        "Games",
        "Hit rate",
        "Mean score",
        game.tag(),
        agg.count,
        agg.mean_hit_rate,
        agg.mean_score,
        n = agg.count
    )
}
