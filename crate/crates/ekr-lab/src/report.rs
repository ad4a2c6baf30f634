//! Report assembly and rendering.
//!
//! JSON is the machine contract: keys are sorted (serde_json's default map
//! is ordered), every mathematical numeric is tagged `{"exact": "p/q"}` or
//! `{"float": x}`, and the `timings` object holds deterministic work
//! counters rather than wall-clock values, so identical invocations yield
//! byte-identical documents.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// Canonical `p/q` rendering with positive denominator.
pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// An exact integer as a tagged scalar.
pub fn exact_int(v: i64) -> Value {
    json!({ "exact": format!("{v}/1") })
}

pub fn exact_rational(r: &BigRational) -> Value {
    json!({ "exact": rational_str(r) })
}

pub fn float_scalar(x: f64) -> Value {
    json!({ "float": x })
}

pub struct Report {
    pub command: &'static str,
    pub group: Value,
    pub payload: Value,
    pub timings: Value,
    pub verdicts: Value,
    /// Human-readable lines for text mode.
    pub text: Vec<String>,
    pub exit_code: u8,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "group": self.group,
            "payload": self.payload,
            "timings": self.timings,
            "verdicts": self.verdicts,
        })
    }

    pub fn render(&self, json_mode: bool) -> String {
        if json_mode {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
            s.push('\n');
            s
        } else {
            let mut out = String::new();
            for line in &self.text {
                out.push_str(line);
                out.push('\n');
            }
            out
        }
    }
}

/// Group descriptor block shared by all commands.
pub fn group_descriptor(descriptor: &str, source: &str, degree: usize, order: usize) -> Value {
    json!({
        "descriptor": descriptor,
        "source": source,
        "degree": degree,
        "order": order,
    })
}

/// FNV-1a 64-bit digest, hex; identifies group files in reports.
pub fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

pub fn counters(pairs: &[(&str, u64)]) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert((*k).to_string(), json!(v));
    }
    Value::Object(map)
}
