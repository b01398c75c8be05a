//! The published JSON schema of the `list --json` output, plus a small
//! structural validator (type / properties / required / items / enum
//! subset) used by the tests.

use anyhow::{bail, Result};
use serde_json::Value;

/// Schema of the catalog listing.
pub const LIST_SCHEMA: &str = r#"{
  "type": "object",
  "required": ["targets", "family_schema", "suites"],
  "properties": {
    "targets": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["id", "provenance"],
        "properties": {
          "id": {"type": "string"},
          "provenance": {"type": "string"},
          "kind": {"type": "string", "enum": ["spacelike", "timelike"]}
        }
      }
    },
    "family_schema": {
      "type": "object",
      "required": ["kinds", "parameters", "branches"],
      "properties": {
        "kinds": {"type": "array", "items": {"type": "string"}},
        "parameters": {"type": "array", "items": {"type": "string"}},
        "branches": {"type": "array", "items": {"type": "string"}}
      }
    },
    "integer_family_schema": {
      "type": "object",
      "required": ["prefixes", "parameters"],
      "properties": {
        "prefixes": {"type": "array", "items": {"type": "string"}},
        "parameters": {"type": "array", "items": {"type": "string"}}
      }
    },
    "suites": {"type": "array", "items": {"type": "string"}}
  }
}"#;

/// Validate `value` against the structural subset of JSON Schema used by
/// [`LIST_SCHEMA`].
pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<()> {
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "boolean" => value.is_boolean(),
            other => bail!("unsupported schema type `{other}`"),
        };
        if !ok {
            bail!("{path}: expected {ty}, got {value}");
        }
    }
    if let Some(enums) = schema.get("enum").and_then(Value::as_array) {
        if !enums.contains(value) {
            bail!("{path}: {value} not in enum");
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if value.get(key).is_none() {
                bail!("{path}: missing required key `{key}`");
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        if let Some(obj) = value.as_object() {
            for (key, sub) in props {
                if let Some(v) = obj.get(key) {
                    validate(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validator_catches_missing_keys() {
        let schema: Value = serde_json::from_str(LIST_SCHEMA).unwrap();
        let bad: Value = serde_json::json!({"targets": []});
        assert!(validate(&schema, &bad, "$").is_err());
    }
}
