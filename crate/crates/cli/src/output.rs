use serde_json::{Map, Value};
use verma_lc::poly::parse_rational;

/// A command result: a JSON object, plus the verdict compared against `--expect`.
pub struct Report {
    pub body: Map<String, Value>,
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new() -> Self {
        Report { body: Map::new(), verdict: None }
    }

    pub fn set(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.body.insert(key.to_string(), v.into());
        self
    }

    pub fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self.body.insert("verdict".into(), v.into());
        self
    }
}

/// Floating approximation of an exact rational string; `None` for integers
/// and non-numeric text.
fn approx(s: &str) -> Option<f64> {
    let r = parse_rational(s).ok()?;
    if r.is_integer() {
        return None;
    }
    let n: f64 = r.numer().to_string().parse().ok()?;
    let d: f64 = r.denom().to_string().parse().ok()?;
    Some(n / d)
}

fn approx_value(v: &Value) -> Value {
    match v {
        Value::String(s) => approx(s).map(Value::from).unwrap_or_else(|| v.clone()),
        Value::Array(a) => Value::Array(a.iter().map(approx_value).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), approx_value(x))).collect()),
        _ => v.clone(),
    }
}

pub fn render_json(r: &Report, float: bool) -> String {
    let mut body = r.body.clone();
    if float {
        body.insert("approx".into(), approx_value(&Value::Object(r.body.clone())));
        body.insert("approx_note".into(), "floating-point display only; exact values are authoritative".into());
    }
    serde_json::to_string_pretty(&Value::Object(body)).expect("JSON values serialize")
}

fn scalar(v: &Value, float: bool) -> Option<String> {
    match v {
        Value::String(s) if !s.contains('\n') => Some(match (float, approx(s)) {
            (true, Some(f)) => format!("{s} (~{f:.6})"),
            _ => s.clone(),
        }),
        Value::Bool(_) | Value::Number(_) | Value::Null => Some(v.to_string()),
        _ => None,
    }
}

fn render_into(out: &mut Vec<String>, key: &str, v: &Value, indent: usize, float: bool) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar(v, float) {
        out.push(format!("{pad}{key}: {s}"));
        return;
    }
    match v {
        Value::String(s) => {
            out.push(format!("{pad}{key}:"));
            out.extend(s.lines().map(|l| format!("{pad}  {l}")));
        }
        Value::Array(a) => {
            let items: Option<Vec<String>> = a.iter().map(|x| scalar(x, float)).collect();
            match items {
                Some(items) => out.push(format!("{pad}{key}: [{}]", items.join(", "))),
                None => {
                    out.push(format!("{pad}{key}:"));
                    for (i, x) in a.iter().enumerate() {
                        render_into(out, &format!("[{i}]"), x, indent + 1, float);
                    }
                }
            }
        }
        Value::Object(o) => {
            out.push(format!("{pad}{key}:"));
            for (k, x) in o {
                render_into(out, k, x, indent + 1, float);
            }
        }
        _ => unreachable!(),
    }
}

pub fn render_text(r: &Report, float: bool) -> String {
    let mut out = Vec::new();
    for (k, v) in &r.body {
        render_into(&mut out, k, v, 0, float);
    }
    out.join("\n")
}
