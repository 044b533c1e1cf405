//! Output rendering: JSON with sorted keys and 17-digit floats, plain text,
//! and CSV with `#` comment headers.

use rdp_core::analysis::fmt17;
use serde_json::Value;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// The result of one subcommand in every format it supports.
pub struct Report {
    pub command: &'static str,
    pub input: Value,
    pub json: Value,
    pub text: Option<String>,
    pub csv: Option<String>,
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

impl Report {
    pub fn new(command: &'static str, input: Value, json: Value) -> Report {
        Report { command, input, json, text: None, csv: None }
    }

    pub fn text(mut self, t: String) -> Report {
        self.text = Some(t);
        self
    }

    pub fn csv(mut self, c: String) -> Report {
        self.csv = Some(c);
        self
    }

    /// Renders in `format`, or `None` when this report has no such form.
    pub fn render(&self, format: Format) -> Option<String> {
        let mut echo = String::new();
        write_json(&self.input, &mut echo, None);
        match format {
            Format::Json => {
                let mut root = serde_json::Map::new();
                root.insert("command".into(), self.command.into());
                root.insert("input".into(), self.input.clone());
                root.insert("result".into(), self.json.clone());
                root.insert("tool_version".into(), TOOL_VERSION.into());
                let mut s = String::new();
                write_json(&Value::Object(root), &mut s, Some(0));
                s.push('\n');
                Some(s)
            }
            Format::Text => {
                let body = self.text.as_ref()?;
                Some(format!("# rdp {TOOL_VERSION} {}\n# input {echo}\n{body}", self.command))
            }
            Format::Csv => {
                let body = self.csv.as_ref()?;
                Some(format!("# tool_version={TOOL_VERSION}\n# command={}\n# input={echo}\n{body}", self.command))
            }
        }
    }
}

fn indent(out: &mut String, level: usize) {
    out.push('\n');
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn all_scalar(items: &[Value]) -> bool {
    items.iter().all(|v| !v.is_array() && !v.is_object())
}

/// Writes `v` with object keys sorted and floats at 17 significant digits.
/// `pretty` carries the current indentation level; arrays of scalars stay
/// on one line.
pub fn write_json(v: &Value, out: &mut String, pretty: Option<usize>) {
    match v {
        Value::Null | Value::Bool(_) | Value::String(_) => out.push_str(&v.to_string()),
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => {
                let _ = write!(out, "{i}");
            }
            (_, Some(u), _) => {
                let _ = write!(out, "{u}");
            }
            (_, _, Some(f)) => out.push_str(&fmt17(f)),
            _ => out.push_str("null"),
        },
        Value::Array(items) => {
            let inner = pretty.filter(|_| !all_scalar(items)).map(|l| l + 1);
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                    if pretty.is_some() && inner.is_none() {
                        out.push(' ');
                    }
                }
                if let Some(l) = inner {
                    indent(out, l);
                }
                write_json(item, out, inner);
            }
            if let (Some(l), false) = (pretty, items.is_empty() || inner.is_none()) {
                indent(out, l);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let inner = pretty.map(|l| l + 1);
            out.push('{');
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if let Some(l) = inner {
                    indent(out, l);
                }
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push(':');
                if pretty.is_some() {
                    out.push(' ');
                }
                write_json(&map[*key], out, inner);
            }
            if let (Some(l), false) = (pretty, map.is_empty()) {
                indent(out, l);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_keep_17_digits() {
        let mut s = String::new();
        write_json(&json!({"b": [0.1, 2, -3], "a": {"z": null, "y": "t"}}), &mut s, None);
        assert_eq!(s, r#"{"a":{"y":"t","z":null},"b":[1.0000000000000001e-1,2,-3]}"#);
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"][0].as_f64(), Some(0.1));
    }

    #[test]
    fn pretty_layout() {
        let mut s = String::new();
        write_json(&json!({"r": [1, 2], "o": [{"k": 1}]}), &mut s, Some(0));
        assert_eq!(s, "{\n  \"o\": [\n    {\n      \"k\": 1\n    }\n  ],\n  \"r\": [1, 2]\n}");
    }

    #[test]
    fn headers_per_format() {
        let r = Report::new("x", json!({"a": "1/2"}), json!([1.5])).csv("v\n1\n".into());
        assert!(r.render(Format::Text).is_none());
        let c = r.render(Format::Csv).unwrap();
        assert!(c.starts_with("# tool_version="));
        assert!(c.ends_with("# input={\"a\":\"1/2\"}\nv\n1\n"));
        let j: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(j["result"][0], 1.5);
        assert_eq!(j["tool_version"], TOOL_VERSION);
    }
}
