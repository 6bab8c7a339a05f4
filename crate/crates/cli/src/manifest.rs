use std::time::Duration;

use pisotlab::Ctx;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything needed to reproduce a run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub input: Value,
    pub precision: u32,
    pub precision_ceiling: u32,
    #[serde(default)]
    pub threads: Option<usize>,
    pub tool_version: String,
    /// Seconds, as a decimal string.
    pub wall_time: String,
    /// `sha256:` digest of the primary JSON output.
    pub result_digest: String,
}

pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    let hex: String = h.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl RunManifest {
    pub fn new(subcommand: &str, input: Value, ctx: &Ctx, threads: Option<usize>, wall: Duration, primary: &str) -> Self {
        RunManifest {
            subcommand: subcommand.into(),
            input,
            precision: ctx.prec,
            precision_ceiling: ctx.ceiling,
            threads,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            wall_time: format!("{:.3}", wall.as_secs_f64()),
            result_digest: digest(primary),
        }
    }
}
