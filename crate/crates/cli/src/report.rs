use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "cr-moser-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 over every input that determines a report: file contents and
/// the relevant flag values, each framed by a label and a length.
#[derive(Clone, Default)]
pub struct InputHash(Sha256);

impl InputHash {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, label: &str, bytes: &[u8]) -> &mut Self {
        for part in [label.as_bytes(), bytes] {
            self.0.update((part.len() as u64).to_le_bytes());
            self.0.update(part);
        }
        self
    }

    pub fn hex(&self) -> String {
        hex::encode(self.0.clone().finalize())
    }
}

/// Wraps a result object with the schema, version, command and input hash.
pub fn envelope(command: &str, input_sha256: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), SCHEMA.into());
    out.insert("version".into(), VERSION.into());
    out.insert("command".into(), command.into());
    out.insert("input_sha256".into(), input_sha256.into());
    match body {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hash_frames_inputs() {
        let a = InputHash::new().add("surface", b"ab").add("x", b"c").hex();
        let b = InputHash::new().add("surface", b"a").add("x", b"bc").hex();
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn envelope_fields_come_first() {
        let v = envelope("check", "00", json!({"passed": true}));
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["schema", "version", "command", "input_sha256", "passed"]);
    }
}
