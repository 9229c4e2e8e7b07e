use clap::ValueEnum;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Ordered key/value output, rendered as `key: value` lines or as a JSON
/// object with keys in insertion order.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let value = serde_json::to_value(value).expect("report values serialize");
        self.entries.push((key.to_string(), value));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                for (key, value) in &self.entries {
                    match value {
                        Value::Array(items) if items.iter().any(needs_own_line) => {
                            out.push_str(&format!("{key}:\n"));
                            for item in items {
                                out.push_str(&format!("  {}\n", scalar_text(item)));
                            }
                        }
                        _ => out.push_str(&format!("{key}: {}\n", scalar_text(value))),
                    }
                }
                out
            }
        }
    }
}

fn needs_own_line(v: &Value) -> bool {
    match v {
        Value::Array(_) | Value::Object(_) => true,
        Value::String(s) => s.contains(' '),
        _ => false,
    }
}

fn scalar_text(value: &Value) -> String {
    match value {
        Value::Null => "-".to_string(),
        Value::Array(items) if items.is_empty() => "-".to_string(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            items.iter().map(scalar_text).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (k, v) in &self.entries {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}
