//! Structured-text key/value documents used for every report.
//!
//! Text form:
//!
//! ```text
//! # report: <kind>
//! key = value
//! ```
//!
//! One entry per line, keys are `[a-z0-9_.]+` in a fixed order per report
//! kind. Values are `true`/`false`, integers, reals printed with 12
//! significant digits, `none` for an absent measurement, or a
//! space-separated list of integers or reals. Labels are bare strings. The
//! JSON form is a flat object with the same keys plus `"report": <kind>`,
//! carrying the same rounded numbers.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value as Json};

use crate::error::{Error, Result};

/// Significant digits used for reals in every machine-readable output.
pub const SIG_DIGITS: usize = 12;

/// Round to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest text that reads back as `round_sig(x)`.
pub fn format_real(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".into()
    } else if !r.is_finite() || (1e-5..1e15).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Real(f64),
    Text(String),
    Ints(Vec<i64>),
    Reals(Vec<f64>),
    Missing,
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Bool(b) => b.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Real(x) => format_real(*x),
            Value::Text(s) => s.clone(),
            Value::Ints(v) => v.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            Value::Reals(v) => v.iter().map(|x| format_real(*x)).collect::<Vec<_>>().join(" "),
            Value::Missing => "none".into(),
        }
    }

    fn to_json(&self) -> Json {
        let real = |x: f64| Number::from_f64(round_sig(x)).map_or(Json::Null, Json::Number);
        match self {
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(i) => Json::from(*i),
            Value::Real(x) => real(*x),
            Value::Text(s) => Json::String(s.clone()),
            Value::Ints(v) => Json::Array(v.iter().map(|&i| Json::from(i)).collect()),
            Value::Reals(v) => Json::Array(v.iter().map(|&x| real(x)).collect()),
            Value::Missing => Json::Null,
        }
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Missing, Value::Real)
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(i: $t) -> Self {
                Value::Int(i as i64)
            }
        }
    )*};
}
int_value!(usize, u64, i64, u32);

impl From<&[f64]> for Value {
    fn from(v: &[f64]) -> Self {
        Value::Reals(v.to_vec())
    }
}

impl From<&[usize]> for Value {
    fn from(v: &[usize]) -> Self {
        Value::Ints(v.iter().map(|&i| i as i64).collect())
    }
}

/// Ordered key/value report.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    kind: String,
    entries: Vec<(String, Value)>,
}

impl Document {
    pub fn new(kind: &str) -> Self {
        Self {
            kind: kind.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.entries.push((key.into(), value.into()));
        self
    }

    /// Append every entry of `other` with keys prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: &Document) -> &mut Self {
        for (k, v) in &other.entries {
            self.entries.push((format!("{prefix}.{k}"), v.clone()));
        }
        self
    }

    pub fn entries(&self) -> &[(String, Value)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# report: {}\n", self.kind);
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {}", v.render());
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        map.insert("report".into(), Json::String(self.kind.clone()));
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.to_json());
        }
        Json::Object(map)
    }

    /// `key,value` rows under a `key,value` header; list items stay space-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,value\n");
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k},{}", csv_field(&v.render()));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Read the text form back as `(kind, [(key, raw value)])`.
pub fn parse_text(text: &str) -> Result<(String, Vec<(String, String)>)> {
    let mut kind = None;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("# report:") {
            kind = Some(rest.trim().to_string());
            continue;
        }
        let (k, v) = line.split_once(" = ").ok_or_else(|| Error::Parse {
            line: i + 1,
            message: "expected `key = value`".into(),
        })?;
        entries.push((k.trim().to_string(), v.trim().to_string()));
    }
    let kind = kind.ok_or(Error::Parse {
        line: 1,
        message: "missing `# report:` header".into(),
    })?;
    Ok((kind, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_real(27.633315322223), "27.6333153222");
        assert_eq!(format_real(2.0), "2");
        assert_eq!(format_real(-1.0 / 3.0), "-0.333333333333");
        assert_eq!(format_real(1.5e-9), "1.5e-9");
        assert_eq!(format_real(0.0), "0");
    }

    #[test]
    fn text_and_json_agree() {
        let mut d = Document::new("demo");
        d.push("n", 13usize)
            .push("energy", 27.633315322223)
            .push("ok", true)
            .push("x", &[0usize, 2, 5][..])
            .push("sigma", &[6.0, 2.302775637732][..])
            .push("gap", None::<f64>)
            .push("label", "a b");
        let text = d.to_text();
        let (kind, entries) = parse_text(&text).unwrap();
        assert_eq!(kind, "demo");
        let json = d.to_json();
        assert_eq!(json["report"], "demo");
        for (k, raw) in entries {
            match &json[&k] {
                Json::Number(n) => assert_eq!(raw.parse::<f64>().unwrap(), n.as_f64().unwrap()),
                Json::Bool(b) => assert_eq!(raw, b.to_string()),
                Json::Null => assert_eq!(raw, "none"),
                Json::String(s) => assert_eq!(&raw, s),
                Json::Array(items) => {
                    let parsed: Vec<f64> = raw.split(' ').map(|t| t.parse().unwrap()).collect();
                    let from_json: Vec<f64> = items.iter().map(|i| i.as_f64().unwrap()).collect();
                    assert_eq!(parsed, from_json);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut d = Document::new("demo");
        d.push("label", "a,b");
        assert_eq!(d.to_csv(), "key,value\nlabel,\"a,b\"\n");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_text("n = 1\n").is_err());
        assert!(parse_text("# report: x\nnonsense\n").is_err());
    }
}
