use qforms_core::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// A failed request: the error tag, message and process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: String,
    pub message: String,
    pub exit: i32,
}

impl Failure {
    pub fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.to_string(), message: message.into(), exit: 1 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if e.is_resource_bound() { 2 } else { 1 };
        Failure { kind: e.kind().to_string(), message: e.to_string(), exit }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage("Json", e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage("Io", e.to_string())
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    Ok(serde_json::to_value(v)?)
}

/// Objects are backed by ordered maps, so keys come out sorted.
pub fn success(command: &str, input: Option<Value>, result: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    if let Some(i) = input {
        m.insert("input".into(), i);
    }
    m.insert("result".into(), result);
    Value::Object(m)
}

pub fn failure(command: &str, input: Option<Value>, f: &Failure, line: Option<usize>) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    if let Some(i) = input {
        m.insert("input".into(), i);
    }
    if let Some(l) = line {
        m.insert("line".into(), json!(l));
    }
    m.insert("error".into(), json!({ "kind": f.kind, "message": f.message }));
    Value::Object(m)
}

/// Indented key: value rendering for terminals.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
