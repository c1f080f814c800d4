//! Plain-text rendering of JSON reports.
//!
//! The text form is derived from the JSON value only. Long numeric arrays
//! are summarized by length, max and mean.

use std::fmt::Write;

use serde_json::Value;

const INLINE_ARRAY: usize = 8;

pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(&mut out, v, 0);
    out
}

fn pad(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.len() <= INLINE_ARRAY && a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().filter_map(scalar).collect();
            Some(format!("[{}]", items.join(", ")))
        }
        Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_number) => {
            let xs: Vec<f64> = a.iter().filter_map(Value::as_f64).collect();
            let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            Some(format!("[{} values, max {max:e}, mean {mean:e}]", xs.len()))
        }
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// Objects carrying `id`, `name` and `passed` render as a status line.
fn status_line(o: &serde_json::Map<String, Value>) -> Option<String> {
    let id = o.get("id")?.as_u64()?;
    let name = o.get("name")?.as_str()?;
    let passed = o.get("passed")?.as_bool()?;
    Some(format!("[{}] {id:>2} {name}", if passed { "PASS" } else { "FAIL" }))
}

fn render(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Object(o) => {
            let status = status_line(o);
            if let Some(line) = &status {
                pad(out, depth);
                out.push_str(line);
                out.push('\n');
            }
            for (k, x) in o {
                if status.is_some() && matches!(k.as_str(), "id" | "name" | "passed") {
                    continue;
                }
                let inner = depth + usize::from(status.is_some());
                pad(out, inner);
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{k}:");
                        render(out, x, inner + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => {
                        pad(out, depth);
                        let _ = writeln!(out, "- {s}");
                    }
                    None => {
                        pad(out, depth);
                        out.push_str("-\n");
                        render(out, x, depth + 1);
                    }
                }
            }
        }
        other => {
            pad(out, depth);
            let _ = writeln!(out, "{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn criteria_render_as_status_lines() {
        let v = json!({ "seed": 7, "criteria": [
            { "id": 3, "name": "x", "passed": false, "detail": { "computed": "0" } }
        ]});
        let text = render_text(&v);
        assert!(text.contains("[FAIL]  3 x"), "{text}");
        assert!(text.contains("computed: 0"));
        assert!(text.starts_with("seed: 7\n"));
    }

    #[test]
    fn long_arrays_are_summarized() {
        let v = json!({ "r": (0..20).map(f64::from).collect::<Vec<_>>() });
        assert_eq!(render_text(&v), "r: [20 values, max 1.9e1, mean 9.5e0]\n");
    }
}
