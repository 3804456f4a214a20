//! Shared helpers for the CLI test suites: running the binary and
//! validating documents against the shipped JSON schema.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// Run the compiled binary with the given arguments and no extra
/// environment; returns (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, Vec<u8>, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_isocensus"));
    cmd.args(args);
    cmd.env_remove("ISOGENY_CENSUS_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary launches");
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn load_schema() -> Value {
    let path = manifest_dir().join("schema/isocensus-v1.schema.json");
    let text = std::fs::read_to_string(&path).expect("schema file readable");
    serde_json::from_str(&text).expect("schema file is valid JSON")
}

/// Validate a document against the subset of JSON Schema draft-07 used
/// by the shipped schema: `type`, `properties`, `required`,
/// `additionalProperties` (boolean), `items`, `enum`, `minimum`, and
/// `oneOf` (exactly-one semantics).
pub fn validates(schema: &Value, doc: &Value) -> bool {
    if let Some(branches) = schema.get("oneOf") {
        let n = branches
            .as_array()
            .expect("oneOf is an array")
            .iter()
            .filter(|s| validates(s, doc))
            .count();
        return n == 1;
    }
    if let Some(ty) = schema.get("type") {
        let ok = match ty.as_str().expect("type is a string") {
            "object" => doc.is_object(),
            "array" => doc.is_array(),
            "integer" => doc.is_i64() || doc.is_u64(),
            "number" => doc.is_number(),
            "string" => doc.is_string(),
            "boolean" => doc.is_boolean(),
            "null" => doc.is_null(),
            other => panic!("unsupported schema type {other:?}"),
        };
        if !ok {
            return false;
        }
    }
    if let Some(allowed) = schema.get("enum") {
        if !allowed.as_array().expect("enum is an array").iter().any(|v| v == doc) {
            return false;
        }
    }
    if let Some(min) = schema.get("minimum") {
        let min = min.as_i64().expect("minimum is an integer") as i128;
        let val = if let Some(v) = doc.as_i64() {
            v as i128
        } else if let Some(v) = doc.as_u64() {
            v as i128
        } else {
            return false;
        };
        if val < min {
            return false;
        }
    }
    if let Some(obj) = doc.as_object() {
        if let Some(required) = schema.get("required") {
            for key in required.as_array().expect("required is an array") {
                if !obj.contains_key(key.as_str().expect("required key is a string")) {
                    return false;
                }
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        let allow_extra = schema
            .get("additionalProperties")
            .and_then(Value::as_bool)
            .unwrap_or(true);
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => {
                    if !validates(sub, value) {
                        return false;
                    }
                }
                None => {
                    if !allow_extra {
                        return false;
                    }
                }
            }
        }
    }
    if let Some(arr) = doc.as_array() {
        if let Some(items) = schema.get("items") {
            if !arr.iter().all(|item| validates(items, item)) {
                return false;
            }
        }
    }
    true
}
