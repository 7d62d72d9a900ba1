//! Hand-gesture mouse: converts streams of 3D hand-joint positions into
//! absolute pointer coordinates and discrete gesture events, replays and
//! scores them against two small games, and serves the live pipeline over a
//! WebSocket.
//!
//! Stages, in pipeline order:
//!
//! - [`types`]: frames, pointer samples, gesture events, frame validation
//! - [`filter`]: smoothing, dead zone, velocity
//! - [`pointer`]: movement-box normalization onto the `[0, 65536]` grid
//! - [`gesture`]: click, cut, drag, rotation and balance state machines
//! - [`pipeline`]: the above wired together per stream
//! - [`stream`]: recording, event-stream and script line formats
//! - [`game`]: fruit and shape games, session stats, accuracy vs. reference
//! - [`service`]: per-session protocol and the WebSocket server
//! - [`cli`]: command implementations behind the `gesturemouse` binary

pub mod cli;
pub mod config;
pub mod filter;
pub mod game;
pub mod gesture;
pub mod pipeline;
pub mod pointer;
pub mod service;
pub mod stream;
pub mod types;

pub use config::{Config, GestureThresholds};
pub use pipeline::Pipeline;
pub use types::{GestureEvent, GestureKind, Point3D, PointerSample, ScreenDims, ScreenPos, SkeletonFrame};
