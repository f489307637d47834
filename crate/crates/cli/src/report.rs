//! Report envelope: every command emits JSON carrying the tool version, the
//! seed and tolerance in effect, and SHA-256 hashes of all input files, so a
//! verification claim can be reproduced byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use qindex_core::qpoly::to_pairs;
use qindex_core::HalfLaurent;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub tol: f64,
    /// input path → SHA-256 hex digest
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
}

impl Envelope {
    pub fn new(command: &str, seed: u64, tol: f64) -> Self {
        Envelope {
            tool: "qindex",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            tol,
            inputs: BTreeMap::new(),
            result: Value::Null,
        }
    }

    pub fn hash_input(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {}", path.display(), e)))?;
        let mut h = Sha256::new();
        h.update(&bytes);
        self.inputs
            .insert(path.display().to_string(), format!("{:x}", h.finalize()));
        Ok(())
    }

    /// Serialize deterministically (struct fields in declaration order, maps
    /// in key order) and write to `json_out` or stdout.
    pub fn emit(&self, json_out: Option<&Path>) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::numeric(format!("serialization failed: {}", e)))?;
        match json_out {
            Some(p) => std::fs::write(p, text + "\n")
                .map_err(|e| CliError::input(format!("cannot write {}: {}", p.display(), e))),
            None => {
                println!("{}", text);
                Ok(())
            }
        }
    }
}

/// JSON form of a half-integer-exponent polynomial: doubled exponent (as a
/// decimal string key) → integer coefficient string.
pub fn halflaurent_json(p: &HalfLaurent) -> Value {
    let mut m = Map::new();
    for (e, c) in to_pairs(p) {
        m.insert(e.to_string(), Value::String(c));
    }
    Value::Object(m)
}

/// Half-integer as "p/2"-style text: integers stay bare.
pub fn half_string(double_val: i64) -> String {
    if double_val % 2 == 0 {
        format!("{}", double_val / 2)
    } else {
        format!("{}/2", double_val)
    }
}
