//! Canonical number and line formatting shared by every line format.
//!
//! Reals are written in the shortest decimal that parses back to the same
//! `f64`, without exponent; integral values carry no fractional part and
//! negative zero is written as `0`.

use std::fmt::Write;

pub fn real(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn triple(p: [f64; 3]) -> String {
    format!("[{},{},{}]", real(p[0]), real(p[1]), real(p[2]))
}

/// Renders a JSON string literal.
pub fn string(s: &str) -> String {
    serde_json::Value::from(s).to_string()
}

/// Renders a `serde_json::Value` with canonical reals.
pub fn value(v: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v);
    out
}

fn write_value(out: &mut String, v: &serde_json::Value) {
    use serde_json::Value;
    match v {
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => write!(out, "{u}").unwrap(),
            (None, Some(i)) => write!(out, "{i}").unwrap(),
            _ => out.push_str(&real(n.as_f64().unwrap_or(0.0))),
        },
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_value(out, item);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&string(k));
                out.push(':');
                write_value(out, item);
            }
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Builds one single-line JSON object with fields in insertion order.
#[derive(Debug, Default)]
pub struct ObjectWriter {
    buf: String,
}

impl ObjectWriter {
    pub fn new() -> Self {
        Self { buf: String::from("{") }
    }

    fn key(&mut self, key: &str) -> &mut String {
        if self.buf.len() > 1 {
            self.buf.push(',');
        }
        self.buf.push_str(&string(key));
        self.buf.push(':');
        &mut self.buf
    }

    /// Inserts already-rendered JSON.
    pub fn raw(mut self, key: &str, json: &str) -> Self {
        self.key(key).push_str(json);
        self
    }

    pub fn str(self, key: &str, v: &str) -> Self {
        let s = string(v);
        self.raw(key, &s)
    }

    pub fn int(self, key: &str, v: impl Into<i128>) -> Self {
        let s = v.into().to_string();
        self.raw(key, &s)
    }

    pub fn real(self, key: &str, v: f64) -> Self {
        let s = real(v);
        self.raw(key, &s)
    }

    pub fn bool(self, key: &str, v: bool) -> Self {
        self.raw(key, if v { "true" } else { "false" })
    }

    pub fn value(self, key: &str, v: &serde_json::Value) -> Self {
        let s = value(v);
        self.raw(key, &s)
    }

    pub fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}
