//! WebSocket transport: one [`Session`] per connection at `/v1/session`.

use super::session::{code, error_message, Session};
use crate::config::Config;
use futures_util::{SinkExt, StreamExt};
use std::io;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Instant, SystemTime, UNIX_EPOCH};
use tokio::net::{TcpListener, TcpStream};
use tokio_tungstenite::tungstenite::handshake::server::{ErrorResponse, Request, Response};
use tokio_tungstenite::tungstenite::http::StatusCode;
use tokio_tungstenite::tungstenite::Message;

pub const PATH: &str = "/v1/session";
pub const PORT_ENV: &str = "GESTURE_PORT";

/// The configured port unless `GESTURE_PORT` is set.
pub fn resolve_port(configured: u16) -> Result<u16, String> {
    match std::env::var(PORT_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| format!("{PORT_ENV}={v:?} is not a port number")),
        Err(_) => Ok(configured),
    }
}

pub async fn bind(port: u16) -> io::Result<TcpListener> {
    TcpListener::bind(("127.0.0.1", port)).await
}

fn next_session_id() -> String {
    static COUNTER: AtomicU64 = AtomicU64::new(1);
    static EPOCH: std::sync::OnceLock<u64> = std::sync::OnceLock::new();
    let epoch = *EPOCH.get_or_init(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
    format!("s{epoch:x}-{}", COUNTER.fetch_add(1, Ordering::Relaxed))
}

/// Accepts connections forever; each runs on its own task.
pub async fn serve(listener: TcpListener, config: Config) -> io::Result<()> {
    loop {
        let (stream, peer) = listener.accept().await?;
        tokio::spawn(async move {
            if let Err(e) = connection(stream, peer, config).await {
                log::debug!("connection {peer} ended: {e}");
            }
        });
    }
}

async fn connection(
    stream: TcpStream,
    peer: SocketAddr,
    config: Config,
) -> Result<(), Box<dyn std::error::Error + Send + Sync>> {
    #[allow(clippy::result_large_err)]
    let check_path = |req: &Request, resp: Response| -> Result<Response, ErrorResponse> {
        if req.uri().path() == PATH {
            Ok(resp)
        } else {
            let mut not_found = ErrorResponse::new(Some(format!("websocket endpoint is {PATH}")));
            *not_found.status_mut() = StatusCode::NOT_FOUND;
            Err(not_found)
        }
    };
    let ws = tokio_tungstenite::accept_hdr_async(stream, check_path).await?;
    let mut session = Session::new(next_session_id(), config);
    log::info!("session {} opened from {peer}", session.id());
    let (mut tx, mut rx) = ws.split();
    while let Some(msg) = rx.next().await {
        let replies = match msg? {
            Message::Text(text) => session.handle(text.as_str(), Instant::now()),
            Message::Binary(_) => vec![error_message(code::BAD_MESSAGE, "binary messages are not supported")],
            Message::Close(_) => break,
            _ => continue,
        };
        for reply in replies {
            tx.feed(Message::text(reply)).await?;
        }
        tx.flush().await?;
    }
    log::info!("session {} closed", session.id());
    Ok(())
}
