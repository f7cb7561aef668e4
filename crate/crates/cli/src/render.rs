//! Plain-text rendering of command output: one `path: value` line per leaf.

use serde_json::Value;

use crate::commands::Output;

pub fn text(out: &Output) -> String {
    match out {
        Output::Diagram(doc) => doc.clone(),
        Output::Json(v) => {
            let mut lines = Vec::new();
            walk(v, String::new(), &mut lines);
            lines.iter().map(|l| format!("{l}\n")).collect()
        }
    }
}

pub fn json(out: &Output) -> String {
    match out {
        Output::Diagram(doc) => doc.clone(),
        Output::Json(v) => serde_json::to_string_pretty(v).expect("serializable") + "\n",
    }
}

fn walk(v: &Value, path: String, lines: &mut Vec<String>) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(map) if !map.is_empty() => {
            for (k, child) in map {
                walk(child, join(k), lines);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                walk(child, join(&i.to_string()), lines);
            }
        }
        Value::String(s) => lines.push(format!("{path}: {s}")),
        other => lines.push(format!("{path}: {other}")),
    }
}
