//! Command-line front end: replay, bench, simulate, generate, calibrate,
//! serve. Configuration merges defaults ← `--config` file ← flags.

use crate::config::Config;
use crate::game::report::{accuracy_table, bench_document, hit_rate_table, simulate_document, Aggregate};
use crate::game::{accuracy_vs_reference, simulate, EventSource, GameKind, Player, Tolerance};
use crate::pipeline::replay;
use crate::pointer::calibrate_box;
use crate::stream::json::ObjectWriter;
use crate::stream::{events_from_text, events_to_text, generate, Recording, TrajectoryScript};
use crate::types::{GestureEvent, Hand};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "gesturemouse", version, about = "Hand-joint streams to pointer coordinates and gesture events")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a recording through the pipeline and write its event stream.
    Replay {
        /// Recording file (skelrec)
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Score the pipeline's events on a recording against a reference event stream.
    Bench {
        /// Recording file (skelrec)
        recording: PathBuf,
        /// Reference event stream (gestev)
        reference: PathBuf,
        /// Time tolerance for matching, ms
        #[arg(long = "tol-ms")]
        tol_ms: Option<u64>,
        /// Position tolerance for matching, px
        #[arg(long = "tol-px")]
        tol_px: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Play a batch of game sessions and report hit rates.
    Simulate {
        #[arg(long, default_value = "fruit")]
        game: GameKind,
        /// Seed of the first session; session i uses seed + i
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Built-in player: perfect or null
        #[arg(long, conflicts_with = "input")]
        player: Option<Player>,
        /// Recording (skelrec) or trajectory script (skelscript) driving every session
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Render a trajectory script into a recording.
    Generate {
        /// Trajectory script (skelscript)
        script: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive a movement box from a reach sweep; prints a config document.
    Calibrate {
        /// Recording of the sweep (skelrec)
        recording: PathBuf,
        #[arg(long, default_value = "right")]
        hand: Hand,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serve the WebSocket session endpoint until interrupted.
    Serve {
        #[arg(long)]
        port: Option<u16>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Config file: one JSON object with namespaced keys
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path (default: standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable or malformed file, invalid configuration.
    #[error("{0}")]
    Input(String),
    /// An internal invariant did not hold.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn input_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| input_err(path, e))
}

/// Defaults, then the config file, then flag overrides (key, value).
pub fn load_config(file: Option<&Path>, flags: &[(&str, Value)]) -> Result<Config, CliError> {
    let mut cfg = Config::default();
    if let Some(path) = file {
        cfg.apply_json(&read_text(path)?).map_err(|e| input_err(path, e))?;
    }
    for (key, v) in flags {
        cfg.set(key, v).map_err(|e| CliError::Input(e.to_string()))?;
    }
    cfg.validate().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(cfg)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| input_err(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}

fn read_recording_file(path: &Path) -> Result<Recording, CliError> {
    Recording::from_text(&read_text(path)?).map_err(|e| input_err(path, e))
}

fn pipeline_events(cfg: &Config, rec: &Recording) -> Result<Vec<GestureEvent>, CliError> {
    let out = replay(cfg, &rec.frames).map_err(|e| CliError::Internal(format!("validated frame rejected: {e}")))?;
    if !out.events.windows(2).all(|w| w[0].t <= w[1].t) {
        return Err(CliError::Internal("gesture events out of time order".into()));
    }
    Ok(out.events)
}

/// Recording or script, told apart by the header's `fmt`.
fn read_stream_input(path: &Path) -> Result<Recording, CliError> {
    let text = read_text(path)?;
    let fmt = text
        .lines()
        .next()
        .and_then(|h| serde_json::from_str::<Value>(h).ok())
        .and_then(|h| h.get("fmt").and_then(Value::as_str).map(str::to_string));
    if fmt.as_deref() == Some(crate::stream::script::FORMAT_TAG) {
        let script = TrajectoryScript::from_text(&text).map_err(|e| input_err(path, e))?;
        generate(&script).map_err(|e| input_err(path, e))
    } else {
        Recording::from_text(&text).map_err(|e| input_err(path, e))
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Replay { input, common } => {
            let cfg = load_config(common.config.as_deref(), &[])?;
            let rec = read_recording_file(&input)?;
            let events = pipeline_events(&cfg, &rec)?;
            log::info!("replayed {} frames, {} events", rec.frames.len(), events.len());
            emit(common.out.as_deref(), &events_to_text(&events))
        }
        Command::Bench { recording, reference, tol_ms, tol_px, common } => {
            let mut flags = Vec::new();
            if let Some(ms) = tol_ms {
                flags.push(("game.match_dt_ms", Value::from(ms)));
            }
            if let Some(px) = tol_px {
                flags.push(("game.match_dist_px", Value::from(px)));
            }
            let cfg = load_config(common.config.as_deref(), &flags)?;
            let rec = read_recording_file(&recording)?;
            let reference_events = events_from_text(&read_text(&reference)?).map_err(|e| input_err(&reference, e))?;
            let candidate = pipeline_events(&cfg, &rec)?;
            let tol = Tolerance { dt_ms: cfg.game.match_dt_ms, dist_px: cfg.game.match_dist_px };
            let report =
                accuracy_vs_reference(&candidate, &reference_events, tol).map_err(|e| input_err(&reference, e))?;
            emit(common.out.as_deref(), &bench_document(&cfg, &report))?;
            eprint!("{}", accuracy_table(&report));
            Ok(())
        }
        Command::Simulate { game, seed, count, player, input, common } => {
            let flags: Vec<_> = seed.map(|s| ("game.seed", Value::from(s))).into_iter().collect();
            let cfg = load_config(common.config.as_deref(), &flags)?;
            let source = match (player, input) {
                (Some(p), _) => EventSource::Player(p),
                (None, Some(path)) => EventSource::Events(pipeline_events(&cfg, &read_stream_input(&path)?)?),
                (None, None) => return Err(CliError::Input("simulate needs --player or --input".into())),
            };
            let sessions = simulate(&source, game, &cfg.game, cfg.pipeline.screen, cfg.game.seed, count);
            if let Some((seed, s)) = sessions.iter().find(|(_, s)| s.hits + s.misses != s.spawned) {
                return Err(CliError::Internal(format!("session with seed {seed} lost track of targets: {s:?}")));
            }
            let stats: Vec<_> = sessions.iter().map(|(_, s)| *s).collect();
            let agg = Aggregate::of(&stats);
            emit(common.out.as_deref(), &simulate_document(&cfg, game, &sessions, &agg))?;
            eprint!("{}", hit_rate_table(game, &agg));
            Ok(())
        }
        Command::Generate { script, out } => {
            let s = TrajectoryScript::from_text(&read_text(&script)?).map_err(|e| input_err(&script, e))?;
            let rec = generate(&s).map_err(|e| input_err(&script, e))?;
            log::info!("generated {} frames", rec.frames.len());
            emit(out.as_deref(), &rec.to_text())
        }
        Command::Calibrate { recording, hand, out } => {
            let rec = read_recording_file(&recording)?;
            let cal = calibrate_box(&rec.frames, hand).map_err(|e| input_err(&recording, e))?;
            if cal.degenerate {
                log::warn!("sweep extent under 1 cm on an axis; box floored to 0.1 m");
                eprintln!("warning: degenerate sweep, box extent floored");
            }
            let b = cal.mbox;
            let doc = ObjectWriter::new()
                .real("pipeline.box_origin_x_m", b.origin.x)
                .real("pipeline.box_origin_y_m", b.origin.y)
                .real("pipeline.box_width_m", b.move_width)
                .real("pipeline.box_height_m", b.move_height)
                .finish();
            emit(out.as_deref(), &format!("{doc}\n"))
        }
        Command::Serve { port, config } => {
            let mut cfg = load_config(config.as_deref(), &[])?;
            cfg.service.port = match port {
                Some(p) => p,
                None => crate::service::resolve_port(cfg.service.port).map_err(CliError::Input)?,
            };
            serve(cfg)
        }
    }
}

fn serve(cfg: Config) -> Result<(), CliError> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    rt.block_on(async move {
        let listener = crate::service::bind(cfg.service.port)
            .await
            .map_err(|e| CliError::Input(format!("cannot bind port {}: {e}", cfg.service.port)))?;
        let addr = listener.local_addr().map_err(|e| CliError::Internal(e.to_string()))?;
        println!("listening on ws://{addr}{} port {}", crate::service::PATH, addr.port());
        let _ = std::io::stdout().flush();
        tokio::select! {
            r = crate::service::serve(listener, cfg) => r.map_err(|e| CliError::Internal(e.to_string())),
            _ = tokio::signal::ctrl_c() => Ok(()),
        }
    })
}

/// Parses the process arguments, runs, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
