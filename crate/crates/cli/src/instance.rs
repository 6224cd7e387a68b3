//! Instance files.
//!
//! The canonical form is JSON with exact rationals written as strings
//! (`"-3/5"`) or integers:
//!
//! ```json
//! {"version": 1, "name": "t1",
//!  "inequalities": [{"c": ["1", "0"], "b": "1", "strict": true}],
//!  "origin": ["0", "0"], "metadata": {}}
//! ```
//!
//! The text form has one inequality per line, `c1 c2 OP b` with `OP` one
//! of `>`, `>=`, `<`, `<=`, plus optional `origin x y` and `name ...`
//! lines. `#` starts a comment. `<` and `<=` are stored negated.

use std::fmt::Write as _;

use committee_core::geom::{HalfPlane, Point, Rational};
use committee_core::System;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum InstanceError {
    #[error("line {line}: {field}: {msg}")]
    Parse { line: usize, field: String, msg: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    System(#[from] committee_core::Error),
}

impl InstanceError {
    fn at(line: usize, field: impl Into<String>, msg: impl Into<String>) -> Self {
        InstanceError::Parse { line, field: field.into(), msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub name: Option<String>,
    pub system: System,
    pub origin: Option<Point>,
    pub metadata: Value,
}

impl Instance {
    pub fn new(system: System) -> Self {
        Instance { name: None, system, origin: None, metadata: Value::Object(Default::default()) }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Parse an exact rational: an integer or `p/q`. Decimal points and
/// exponents are refused so that no float ever sneaks in.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("`{s}` is not an exact rational (write p/q)"));
    }
    let r: Rational = s.parse().map_err(|_| format!("`{s}` is not a rational"))?;
    Ok(r)
}

pub fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("`{s}` is not a point `x,y`"));
    }
    Ok(Point::new(parse_rational(parts[0])?, parse_rational(parts[1])?))
}

#[derive(Serialize, Deserialize)]
struct JsonIneq {
    c: Vec<Value>,
    b: Value,
    #[serde(default = "yes")]
    strict: bool,
}

fn yes() -> bool {
    true
}

#[derive(Serialize, Deserialize)]
struct JsonInstance {
    version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    inequalities: Vec<JsonIneq>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    metadata: Value,
}

fn json_rational(v: &Value, line: usize, field: &str) -> Result<Rational, InstanceError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|m| InstanceError::at(line, field, m)),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()).map_err(|m| InstanceError::at(line, field, m)),
        Value::Number(n) => Err(InstanceError::at(line, field, format!("floating-point value {n} is not accepted"))),
        other => Err(InstanceError::at(line, field, format!("expected a rational, found {other}"))),
    }
}

fn json_pair(v: &[Value], line: usize, field: &str) -> Result<Point, InstanceError> {
    if v.len() != 2 {
        return Err(InstanceError::at(line, field, format!("expected 2 coordinates, found {}", v.len())));
    }
    Ok(Point::new(json_rational(&v[0], line, &format!("{field}[0]"))?, json_rational(&v[1], line, &format!("{field}[1]"))?))
}

fn parse_json(text: &str) -> Result<Instance, InstanceError> {
    let doc: JsonInstance = serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))?;
    if doc.version != FORMAT_VERSION {
        return Err(InstanceError::at(0, "version", format!("unsupported version {}", doc.version)));
    }
    let mut hs = Vec::with_capacity(doc.inequalities.len());
    for (k, q) in doc.inequalities.iter().enumerate() {
        // Entries are reported 1-based, like inequality indices.
        let c = json_pair(&q.c, k + 1, "c")?;
        let b = json_rational(&q.b, k + 1, "b")?;
        hs.push(HalfPlane { c, b, strict: q.strict });
    }
    let origin = match &doc.origin {
        Some(o) => Some(json_pair(o, 0, "origin")?),
        None => None,
    };
    let metadata = if doc.metadata.is_null() { Value::Object(Default::default()) } else { doc.metadata };
    Ok(Instance { name: doc.name, system: System::new(hs)?, origin, metadata })
}

fn parse_text(text: &str) -> Result<Instance, InstanceError> {
    let mut hs = Vec::new();
    let mut origin = None;
    let mut name = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "origin" => {
                if toks.len() != 3 {
                    return Err(InstanceError::at(line, "origin", "expected `origin x y`"));
                }
                let x = parse_rational(toks[1]).map_err(|m| InstanceError::at(line, "origin", m))?;
                let y = parse_rational(toks[2]).map_err(|m| InstanceError::at(line, "origin", m))?;
                origin = Some(Point::new(x, y));
            }
            "name" => name = Some(body[4..].trim().to_string()),
            _ => {
                if toks.len() != 4 {
                    return Err(InstanceError::at(line, "inequality", "expected `c1 c2 OP b`"));
                }
                let c1 = parse_rational(toks[0]).map_err(|m| InstanceError::at(line, "c1", m))?;
                let c2 = parse_rational(toks[1]).map_err(|m| InstanceError::at(line, "c2", m))?;
                let b = parse_rational(toks[3]).map_err(|m| InstanceError::at(line, "b", m))?;
                let (flip, strict) = match toks[2] {
                    ">" => (false, true),
                    ">=" => (false, false),
                    "<" => (true, true),
                    "<=" => (true, false),
                    op => return Err(InstanceError::at(line, "op", format!("unknown operator `{op}`"))),
                };
                let c = Point::new(c1, c2);
                hs.push(if flip { HalfPlane { c: -c, b: -b, strict } } else { HalfPlane { c, b, strict } });
            }
        }
    }
    Ok(Instance { name, system: System::new(hs)?, origin, metadata: Value::Object(Default::default()) })
}

/// JSON when the document starts with `{`, the text form otherwise.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn rat_value(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn render_json(inst: &Instance) -> String {
    let doc = JsonInstance {
        version: FORMAT_VERSION,
        name: inst.name.clone(),
        inequalities: inst
            .system
            .ineqs()
            .iter()
            .map(|h| JsonIneq { c: vec![rat_value(&h.c.x), rat_value(&h.c.y)], b: rat_value(&h.b), strict: h.strict })
            .collect(),
        origin: inst.origin.as_ref().map(|o| vec![rat_value(&o.x), rat_value(&o.y)]),
        metadata: if inst.metadata.as_object().is_some_and(|m| m.is_empty()) { Value::Null } else { inst.metadata.clone() },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("instance serializes");
    s.push('\n');
    s
}

pub fn render_text(inst: &Instance) -> String {
    let mut s = String::new();
    if let Some(n) = &inst.name {
        let _ = writeln!(s, "name {n}");
    }
    for h in inst.system.ineqs() {
        let _ = writeln!(s, "{} {} {} {}", h.c.x, h.c.y, if h.strict { ">" } else { ">=" }, h.b);
    }
    if let Some(o) = &inst.origin {
        let _ = writeln!(s, "origin {} {}", o.x, o.y);
    }
    s
}

/// Decimal rendering with `digits` significant digits, for display only.
pub fn decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = Rational::from_integer(10.into());
    // Scale into [1, 10) to count significant digits.
    let mut exp: i64 = 0;
    let mut x = a.clone();
    while x >= ten {
        x /= &ten;
        exp += 1;
    }
    while x < Rational::from_integer(1.into()) {
        x *= &ten;
        exp -= 1;
    }
    let shift = digits as i64 - 1 - exp;
    let scaled = if shift >= 0 { &a * pow10(shift as u32) } else { &a / pow10((-shift) as u32) };
    let mut n = scaled.round().to_integer().to_string();
    // Place the decimal point `shift` digits from the right.
    let s = if shift > 0 {
        let sh = shift as usize;
        if n.len() <= sh {
            n = "0".repeat(sh - n.len() + 1) + &n;
        }
        let (i, f) = n.split_at(n.len() - sh);
        let f = f.trim_end_matches('0');
        if f.is_empty() {
            i.to_string()
        } else {
            format!("{i}.{f}")
        }
    } else {
        n + &"0".repeat((-shift) as usize)
    };
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

fn pow10(k: u32) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(10u32).pow(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use committee_core::fixtures::t1;
    use committee_core::geom::rat;

    #[test]
    fn json_round_trip() {
        let inst = Instance::new(t1()).named("t1");
        let back = parse_instance(&render_json(&inst)).unwrap();
        assert_eq!(back, inst);
        let text = render_text(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn malformed_inputs() {
        let bad = r#"{"version":1,"inequalities":[{"c":[["1","0"]],"b":"1"}]}"#;
        assert!(matches!(parse_instance(bad), Err(InstanceError::Parse { line: 1, .. })));
        let float = r#"{"version":1,"inequalities":[{"c":[1.5,0],"b":1}]}"#;
        assert!(matches!(parse_instance(float), Err(InstanceError::Parse { .. })));
        let dup = "1 0 > 1\n2 0 > 2\n";
        assert_eq!(parse_instance(dup), Err(InstanceError::System(committee_core::Error::DuplicateInequality(0, 1))));
        assert_eq!(parse_instance("0 0 > 1\n"), Err(InstanceError::System(committee_core::Error::ZeroNormal(0))));
        assert!(matches!(parse_instance("1 0 ? 1\n"), Err(InstanceError::Parse { line: 1, .. })));
    }

    #[test]
    fn text_operators() {
        let inst = parse_instance("# demo\n1 0 < 2\n0 1 >= -1/2\norigin 1/3 0\n").unwrap();
        let hs = inst.system.ineqs();
        assert_eq!(hs[0], HalfPlane { c: Point::from_ints(-1, 0), b: rat(-2, 1), strict: true });
        assert!(!hs[1].strict);
        assert_eq!(inst.origin, Some(Point::new(rat(1, 3), rat(0, 1))));
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(decimal(&rat(-21, 10), 12), "-2.1");
        assert_eq!(decimal(&rat(123456, 1), 3), "123000");
        assert_eq!(decimal(&rat(0, 1), 12), "0");
        assert_eq!(decimal(&rat(2, 3), 2), "0.67");
    }
}
