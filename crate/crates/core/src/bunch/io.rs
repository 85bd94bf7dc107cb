//! Bunch files: one JSON document with `skeleton`, `partition`, `groups`,
//! `subgroups` and `steps` fields.
//!
//! ```json
//! {
//!   "skeleton": ["t", "u"],
//!   "partition": {"t": "o", "u": "I"},
//!   "groups": {"t": "int", "u": "trivial"},
//!   "subgroups": {"u": "whole"},
//!   "steps": {"t->u": "unit"}
//! }
//! ```
//!
//! The skeleton order is the list order.

use serde_json::{Map, Value};

use super::{Bunch, Layer, LayerClass};
use crate::error::{Error, Result};
use crate::ogroup::{Hom, HomExpr, OGroup, Subgroup, SubgroupKind};

const FIELDS: [&str; 5] = ["skeleton", "partition", "groups", "subgroups", "steps"];

impl Bunch {
    pub fn parse(text: &str) -> Result<Bunch> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: Some(e.line()),
            field: None,
            message: e.to_string(),
        })?;
        Bunch::from_json(&doc).map_err(|e| match &e {
            Error::Parse { line: None, field: Some(f), .. } => {
                let line = locate(text, f);
                e.at_line(line)
            }
            _ => e,
        })
    }

    pub fn from_json(doc: &Value) -> Result<Bunch> {
        let obj = doc.as_object().ok_or_else(|| Error::parse_msg("a bunch file is a JSON object"))?;
        if let Some(extra) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
            return Err(Error::parse(extra.clone(), "unknown field"));
        }
        let skeleton: Vec<String> = obj
            .get("skeleton")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("skeleton", "expected a list of layer names"))?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(format!("skeleton[{i}]"), "layer names are strings"))
            })
            .collect::<Result<_>>()?;
        let partition = section(obj, "partition")?;
        let groups = section(obj, "groups")?;
        let empty = Map::new();
        let subgroups = match obj.get("subgroups") {
            None => &empty,
            Some(_) => section(obj, "subgroups")?,
        };
        let steps = match obj.get("steps") {
            None => &empty,
            Some(_) => section(obj, "steps")?,
        };
        for (sec, map) in [("partition", partition), ("groups", groups), ("subgroups", subgroups)] {
            if let Some(k) = map.keys().find(|k| !skeleton.contains(k)) {
                return Err(Error::parse(format!("{sec}.{k}"), "not a skeleton layer"));
            }
        }

        let mut layers = Vec::with_capacity(skeleton.len());
        for name in &skeleton {
            let class = match partition.get(name).and_then(Value::as_str) {
                Some("o" | "O") => LayerClass::O,
                Some("J" | "j") => LayerClass::J,
                Some("I" | "i") => LayerClass::I,
                Some(other) => return Err(Error::parse(format!("partition.{name}"), format!("unknown class `{other}`"))),
                None => return Err(Error::parse(format!("partition.{name}"), "missing partition class")),
            };
            let group_field = format!("groups.{name}");
            let group = OGroup::from_json(groups.get(name).ok_or_else(|| Error::parse(&group_field, "missing group"))?)
                .map_err(|e| reattach(e, &group_field))?;
            let sub_field = format!("subgroups.{name}");
            let subgroup = match (subgroups.get(name), class) {
                (Some(v), LayerClass::I) => {
                    let kind = SubgroupKind::from_json(v).map_err(|e| reattach(e, &sub_field))?;
                    Some(Subgroup::new(kind, &group).map_err(|e| reattach(e, &sub_field))?)
                }
                (None, LayerClass::I) => return Err(Error::parse(sub_field, "missing subgroup for an I layer")),
                (Some(_), _) => return Err(Error::parse(sub_field, "subgroups are only given for I layers")),
                (None, _) => None,
            };
            layers.push(Layer { name: name.clone(), class, group, subgroup });
        }

        let mut homs = Vec::new();
        for pair in layers.windows(2) {
            let key = format!("{}->{}", pair[0].name, pair[1].name);
            let field = format!("steps.{key}");
            let expr = steps.get(&key).ok_or_else(|| Error::parse(&field, "missing step"))?;
            let expr = HomExpr::from_json(expr).map_err(|e| reattach(e, &field))?;
            homs.push(Hom::new(&expr, &pair[0].group, &pair[1].group).map_err(|e| reattach(e, &field))?);
        }
        if steps.len() != homs.len() {
            let covering: Vec<String> = layers.windows(2).map(|p| format!("{}->{}", p[0].name, p[1].name)).collect();
            let extra = steps.keys().find(|k| !covering.contains(k)).cloned().unwrap_or_default();
            return Err(Error::parse(format!("steps.{extra}"), "steps are given on covering pairs only"));
        }
        Bunch::new(layers, homs)
    }

    pub fn to_json(&self) -> Value {
        let mut partition = Map::new();
        let mut groups = Map::new();
        let mut subgroups = Map::new();
        let mut steps = Map::new();
        for l in &self.layers {
            partition.insert(l.name.clone(), Value::from(l.class.code()));
            groups.insert(l.name.clone(), l.group.to_json());
            if let Some(h) = &l.subgroup {
                subgroups.insert(l.name.clone(), h.kind().to_json());
            }
        }
        for (i, s) in self.steps.iter().enumerate() {
            steps.insert(format!("{}->{}", self.layers[i].name, self.layers[i + 1].name), s.expr().to_json());
        }
        let mut doc = Map::new();
        doc.insert("skeleton".into(), self.layers.iter().map(|l| Value::from(l.name.clone())).collect());
        doc.insert("partition".into(), partition.into());
        doc.insert("groups".into(), groups.into());
        doc.insert("subgroups".into(), subgroups.into());
        doc.insert("steps".into(), steps.into());
        Value::Object(doc)
    }

    pub fn serialize(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("bunch JSON is serializable")
    }
}

fn section<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Map<String, Value>> {
    obj.get(key)
        .ok_or_else(|| Error::parse(key, "missing field"))?
        .as_object()
        .ok_or_else(|| Error::parse(key, "expected an object"))
}

fn reattach(e: Error, field: &str) -> Error {
    match e {
        Error::Parse { line, field: None, message } => Error::Parse { line, field: Some(field.to_string()), message },
        Error::TypeMismatch(message) => Error::Parse { line: None, field: Some(field.to_string()), message },
        other => other,
    }
}

/// Line of the key named by a dotted field path like `steps.t->u`.
fn locate(text: &str, field: &str) -> Option<usize> {
    let (section, key) = match field.split_once('.') {
        Some((s, k)) => (s, Some(k)),
        None => (field.split('[').next().unwrap_or(field), None),
    };
    let start = text.find(&format!("\"{section}\""))?;
    let pos = match key {
        Some(k) => start + text[start..].find(&format!("\"{k}\"")).unwrap_or(0),
        None => start,
    };
    Some(text[..pos].matches('\n').count() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixtures() {
        for (name, b) in fixtures::named() {
            let text = b.serialize();
            assert_eq!(Bunch::parse(&text).unwrap(), b, "{name}");
        }
    }

    #[test]
    fn s3_document() {
        let text = r#"{
            "skeleton": ["t", "u"],
            "partition": {"t": "o", "u": "I"},
            "groups": {"t": "trivial", "u": "trivial"},
            "subgroups": {"u": "whole"},
            "steps": {"t->u": "unit"}
        }"#;
        assert_eq!(Bunch::parse(text).unwrap(), fixtures::s3());
    }

    #[test]
    fn missing_subgroup_is_positioned() {
        let text = "{\n  \"skeleton\": [\"t\", \"u\"],\n  \"partition\": {\"t\": \"o\", \"u\": \"I\"},\n  \"groups\": {\"t\": \"int\", \"u\": \"int\"},\n  \"subgroups\": {},\n  \"steps\": {\"t->u\": \"id\"}\n}";
        match Bunch::parse(text) {
            Err(Error::Parse { line, field, .. }) => {
                assert_eq!(field.as_deref(), Some("subgroups.u"));
                assert_eq!(line, Some(5));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn skeleton_order_is_list_order() {
        let text = r#"{
            "skeleton": ["zeta", "alpha"],
            "partition": {"zeta": "o", "alpha": "I"},
            "groups": {"zeta": "int", "alpha": "trivial"},
            "subgroups": {"alpha": "whole"},
            "steps": {"zeta->alpha": "unit"}
        }"#;
        let b = Bunch::parse(text).unwrap();
        assert_eq!(b.layer(0).name, "zeta");
        assert!(b.validate().is_ok());
    }

    #[test]
    fn malformed_documents() {
        let syntax = Bunch::parse("{\n\"skeleton\": [\"t\",\n}");
        assert!(matches!(syntax, Err(Error::Parse { line: Some(3), .. })));
        let bad_hom = r#"{"skeleton":["t","u"],"partition":{"t":"o","u":"I"},"groups":{"t":"int","u":"rat"},
            "subgroups":{"u":"whole"},"steps":{"t->u":{"scale_int":2}}}"#;
        match Bunch::parse(bad_hom) {
            Err(Error::Parse { field, .. }) => assert_eq!(field.as_deref(), Some("steps.t->u")),
            other => panic!("{other:?}"),
        }
        let not_covering = r#"{"skeleton":["t","u"],"partition":{"t":"o","u":"I"},"groups":{"t":"int","u":"int"},
            "subgroups":{"u":"whole"},"steps":{"t->u":"id","u->t":"id"}}"#;
        assert!(Bunch::parse(not_covering).is_err());
        let unknown_class = r#"{"skeleton":["t"],"partition":{"t":"x"},"groups":{"t":"int"}}"#;
        assert!(Bunch::parse(unknown_class).is_err());
        let extra_field = r#"{"skeleton":["t"],"partition":{"t":"o"},"groups":{"t":"int"},"colour":1}"#;
        assert!(Bunch::parse(extra_field).is_err());
    }
}
