//! Output envelopes: every report carries its configuration and a content
//! hash of that configuration.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Git-style hash: SHA-256 of `blob <len>\0<content>`.
pub fn content_hash(content: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", content.len()).as_bytes());
    h.update(content);
    hex::encode(h.finalize())
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub config: &'a Value,
    pub input_hash: String,
    pub result: &'a T,
}

pub fn config_hash(command: &str, config: &Value) -> String {
    let canonical =
        serde_json::to_vec(&serde_json::json!({ "command": command, "config": config }))
            .expect("config serializes");
    content_hash(&canonical)
}

pub fn json_report<T: Serialize>(command: &str, config: &Value, result: &T) -> String {
    let env = Envelope {
        tool: "gapcert",
        version: TOOL_VERSION,
        command,
        config,
        input_hash: config_hash(command, config),
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

/// CSV body preceded by `#` lines carrying the configuration and hash.
pub fn csv_report(command: &str, config: &Value, body: &str) -> String {
    format!(
        "# gapcert {TOOL_VERSION} {command}\n# config: {}\n# input_hash: {}\n{body}",
        serde_json::to_string(config).expect("config serializes"),
        config_hash(command, config)
    )
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            o.flush()
        }
    }
}
