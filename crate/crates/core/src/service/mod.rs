//! Real-time service: skeleton frames or virtual-hand messages in, pointer,
//! gesture and game messages out, one session per WebSocket connection.

pub mod server;
pub mod session;

pub use server::{bind, resolve_port, serve, PATH, PORT_ENV};
pub use session::{code, RateLimiter, Session};
