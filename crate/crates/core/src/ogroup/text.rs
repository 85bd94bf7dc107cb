//! Text and JSON encodings of groups, elements, homomorphisms and subgroups.
//!
//! Elements: `e`, `3`, `-7`, `3/4`, `(x,y)`. Groups: `"trivial"`, `"int"`,
//! `"rat"`, `{"lex":[G1,G2]}`. Homs: `"unit"`, `"id"`, `{"scale_int":k}`,
//! `"int_to_rat"`, `"inject_first"`, `"project_first"`,
//! `{"compose":[outer,inner]}`. Subgroups: `"whole"`, `{"int_multiples":k}`,
//! `"int_in_rat"`, `"first_zero"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use super::{GElem, HomExpr, OGroup, SubgroupKind};
use crate::error::{Error, Result};

impl OGroup {
    /// Parse an element of this group; integers are accepted for `Rat`.
    pub fn parse_elem(&self, text: &str) -> Result<GElem> {
        let t = text.trim();
        let bad = || Error::parse_msg(format!("`{text}` is not an element of {self}"));
        match self {
            OGroup::Trivial => (t == "e").then_some(GElem::Unit).ok_or_else(bad),
            OGroup::Int => t.parse::<BigInt>().map(GElem::Int).map_err(|_| bad()),
            OGroup::Rat => {
                let q = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
                };
                Ok(GElem::Rat(q))
            }
            OGroup::Lex(a, b) => {
                let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
                let split = top_level_comma(inner).ok_or_else(bad)?;
                let x = a.parse_elem(&inner[..split])?;
                let y = b.parse_elem(&inner[split + 1..])?;
                Ok(GElem::pair(x, y))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            OGroup::Trivial => json!("trivial"),
            OGroup::Int => json!("int"),
            OGroup::Rat => json!("rat"),
            OGroup::Lex(a, b) => json!({ "lex": [a.to_json(), b.to_json()] }),
        }
    }

    pub fn from_json(v: &Value) -> Result<OGroup> {
        match v {
            Value::String(s) => match s.as_str() {
                "trivial" => Ok(OGroup::Trivial),
                "int" => Ok(OGroup::Int),
                "rat" => Ok(OGroup::Rat),
                other => Err(Error::parse_msg(format!("unknown group `{other}`"))),
            },
            Value::Object(m) if m.len() == 1 && m.contains_key("lex") => {
                let [a, b] = two_args(&m["lex"], "lex")?;
                Ok(OGroup::lex(OGroup::from_json(a)?, OGroup::from_json(b)?))
            }
            other => Err(Error::parse_msg(format!("malformed group `{other}`"))),
        }
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn two_args<'a>(v: &'a Value, what: &str) -> Result<[&'a Value; 2]> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok([a, b]),
        _ => Err(Error::parse_msg(format!("`{what}` takes a list of two entries"))),
    }
}

fn positive(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .filter(|k| *k > 0)
        .ok_or_else(|| Error::parse_msg(format!("`{what}` needs a positive integer")))
}

impl HomExpr {
    pub fn to_json(&self) -> Value {
        match self {
            HomExpr::UnitMap => json!("unit"),
            HomExpr::Identity => json!("id"),
            HomExpr::ScaleInt(k) => json!({ "scale_int": k }),
            HomExpr::IntToRat => json!("int_to_rat"),
            HomExpr::InjectFirst => json!("inject_first"),
            HomExpr::ProjectFirst => json!("project_first"),
            HomExpr::Compose(o, i) => json!({ "compose": [o.to_json(), i.to_json()] }),
        }
    }

    pub fn from_json(v: &Value) -> Result<HomExpr> {
        match v {
            Value::String(s) => match s.as_str() {
                "unit" => Ok(HomExpr::UnitMap),
                "id" => Ok(HomExpr::Identity),
                "int_to_rat" => Ok(HomExpr::IntToRat),
                "inject_first" => Ok(HomExpr::InjectFirst),
                "project_first" => Ok(HomExpr::ProjectFirst),
                other => Err(Error::parse_msg(format!("unknown homomorphism `{other}`"))),
            },
            Value::Object(m) if m.len() == 1 => {
                if let Some(k) = m.get("scale_int") {
                    Ok(HomExpr::ScaleInt(positive(k, "scale_int")?))
                } else if let Some(args) = m.get("compose") {
                    let [o, i] = two_args(args, "compose")?;
                    Ok(HomExpr::compose(HomExpr::from_json(o)?, HomExpr::from_json(i)?))
                } else {
                    Err(Error::parse_msg(format!("malformed homomorphism `{v}`")))
                }
            }
            other => Err(Error::parse_msg(format!("malformed homomorphism `{other}`"))),
        }
    }
}

impl SubgroupKind {
    pub fn to_json(&self) -> Value {
        match self {
            SubgroupKind::Whole => json!("whole"),
            SubgroupKind::IntMultiples(k) => json!({ "int_multiples": k }),
            SubgroupKind::IntInRat => json!("int_in_rat"),
            SubgroupKind::FirstZero => json!("first_zero"),
        }
    }

    pub fn from_json(v: &Value) -> Result<SubgroupKind> {
        match v {
            Value::String(s) => match s.as_str() {
                "whole" => Ok(SubgroupKind::Whole),
                "int_in_rat" => Ok(SubgroupKind::IntInRat),
                "first_zero" => Ok(SubgroupKind::FirstZero),
                other => Err(Error::parse_msg(format!("unknown subgroup `{other}`"))),
            },
            Value::Object(m) if m.len() == 1 && m.contains_key("int_multiples") => {
                Ok(SubgroupKind::IntMultiples(positive(&m["int_multiples"], "int_multiples")?))
            }
            other => Err(Error::parse_msg(format!("malformed subgroup `{other}`"))),
        }
    }
}
