//! WebSocket client helpers for driving an in-process server.

use super::scenarios;
use futures_util::{SinkExt, StreamExt};
use gesturemouse::service;
use gesturemouse::stream::frame_line;
use gesturemouse::Config;
use std::net::SocketAddr;
use tokio::net::TcpStream;
use tokio_tungstenite::tungstenite::Message;
use tokio_tungstenite::{MaybeTlsStream, WebSocketStream};

pub type Client = WebSocketStream<MaybeTlsStream<TcpStream>>;

/// Binds an ephemeral port and serves on a background task.
pub async fn start_server(cfg: Config) -> SocketAddr {
    let listener = service::bind(0).await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(service::serve(listener, cfg));
    addr
}

pub async fn connect(addr: SocketAddr) -> Client {
    let (ws, _) = tokio_tungstenite::connect_async(format!("ws://{addr}{}", service::PATH)).await.unwrap();
    ws
}

/// Sends one message and collects every reply to it. A ping follows the
/// message; the server answers it only after flushing the replies.
pub async fn exchange(ws: &mut Client, msg: Message) -> Vec<String> {
    ws.send(msg).await.unwrap();
    ws.send(Message::Ping(Vec::new().into())).await.unwrap();
    let mut replies = Vec::new();
    loop {
        match ws.next().await.expect("connection closed").unwrap() {
            Message::Text(t) => replies.push(t.as_str().to_string()),
            Message::Pong(_) => return replies,
            other => panic!("unexpected message {other:?}"),
        }
    }
}

pub fn frame_message(f: &gesturemouse::SkeletonFrame) -> String {
    format!("{{\"type\":\"frame\",{}", &frame_line(f)[1..])
}

/// hello, 150 frames, a seeded fruit game over 150 more frames, stop.
pub fn golden_script() -> Vec<String> {
    let frames = scenarios::long_session(10_000);
    let mut msgs = vec![r#"{"type":"hello"}"#.to_string()];
    msgs.extend(frames[..150].iter().map(frame_message));
    msgs.push(r#"{"type":"game_start","game":"fruit","seed":7}"#.to_string());
    msgs.extend(frames[150..300].iter().map(frame_message));
    msgs.push(r#"{"type":"game_stop"}"#.to_string());
    msgs
}

/// Runs `msgs` over a fresh connection and returns the transcript with the
/// session id replaced by a placeholder.
pub async fn transcript(addr: SocketAddr, msgs: &[String]) -> String {
    let mut ws = connect(addr).await;
    let mut out = String::new();
    let mut session_id: Option<String> = None;
    for m in msgs {
        out.push_str("> ");
        out.push_str(m);
        out.push('\n');
        for r in exchange(&mut ws, Message::text(m.clone())).await {
            if session_id.is_none() {
                let v: serde_json::Value = serde_json::from_str(&r).unwrap();
                if v["type"] == "ready" {
                    session_id = v["session"].as_str().map(str::to_string);
                }
            }
            out.push_str("< ");
            out.push_str(&r);
            out.push('\n');
        }
    }
    ws.close(None).await.unwrap();
    match session_id {
        Some(id) => out.replace(&format!("\"{id}\""), "\"<session>\""),
        None => out,
    }
}

pub const GOLDEN: &str = "service/golden.txt";
