#![allow(dead_code)]

pub mod fixtures;
pub mod oracle;
pub mod scenarios;
pub mod ws;

use std::path::PathBuf;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// Set `UPDATE_FIXTURES=1` to rewrite committed fixtures from their builders.
pub fn updating_fixtures() -> bool {
    std::env::var_os("UPDATE_FIXTURES").is_some_and(|v| v == "1")
}
