//! Reports: a deterministic body keyed by the input digest, with timings kept
//! apart so that identical inputs give byte-identical bodies.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "demorgan";

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct Body {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input_sha256: Option<String>,
    pub result: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub body: Body,
    pub timings: Timings,
}

impl Report {
    pub fn new(command: &str, input: Option<&[u8]>, result: Value, total_ms: f64) -> Report {
        Report {
            body: Body {
                tool: TOOL,
                version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
                input_sha256: input.map(digest),
                result,
            },
            timings: Timings { total_ms },
        }
    }

    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("report bodies serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
