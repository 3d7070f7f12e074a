//! Result records written by every CLI operation.

use serde_json::{json, Value};

use super::json::{canonical_json, sha256_hex};
use crate::TOOLKIT_VERSION;

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRecord {
    /// SHA-256 of the canonical JSON of the input.
    pub input_digest: String,
    pub operation: String,
    pub parameters: Value,
    pub output: Value,
    pub toolkit_version: String,
}

impl ResultRecord {
    pub fn new(operation: &str, input: &Value, parameters: Value, output: Value) -> Self {
        ResultRecord {
            input_digest: digest_of(input),
            operation: operation.to_string(),
            parameters,
            output,
            toolkit_version: TOOLKIT_VERSION.to_string(),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "input_digest": self.input_digest,
            "operation": self.operation,
            "parameters": self.parameters,
            "output": self.output,
            "toolkit_version": self.toolkit_version,
        })
    }

    /// Pretty-printed with sorted keys and a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("record serializes");
        s.push('\n');
        s
    }
}

/// Digest of a JSON input, independent of its formatting and key order.
pub fn digest_of(input: &Value) -> String {
    sha256_hex(canonical_json(input).as_bytes())
}
