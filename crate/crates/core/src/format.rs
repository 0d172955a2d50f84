//! JSON presentation format.
//!
//! ```json
//! {
//!   "vertices": ["1", "2"],
//!   "arrows": [{"name": "a", "source": "1", "target": "1"}, ...],
//!   "f": [["a", "b", "c"], ["s"]],
//!   "m": {"a": 2, "b": 1},
//!   "c": {"b": "3/2"},
//!   "b": {"s": "1"},
//!   "T": ["a"]
//! }
//! ```
//! `m`, `c` may be keyed by any member of a `g`-orbit, `b` by arrows fixed by
//! `f`; rationals are strings `"p/q"` or JSON integers. Omitted values default
//! to `m = 1`, `c = 1`, `b = 0`; `f` fixes every arrow it does not mention.

use crate::data::{BiserialQuiverData, Weights};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::quiver::{ArrowId, Quiver};
use crate::scalar::{fmt_q, parse_q, Q};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ArrowRecord {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub f: Vec<Vec<String>>,
    #[serde(default)]
    pub m: BTreeMap<String, u32>,
    #[serde(default)]
    pub c: BTreeMap<String, Value>,
    #[serde(default)]
    pub b: BTreeMap<String, Value>,
    #[serde(default, rename = "T")]
    pub t: Vec<String>,
}

pub fn rational_value(v: &Value) -> Option<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n.as_i64().map(crate::scalar::q),
        _ => None,
    }
}

impl PresentationFile {
    pub fn to_data(&self) -> Result<BiserialQuiverData> {
        let arrows = self.arrows.iter().map(|a| (a.name.clone(), a.source.clone(), a.target.clone())).collect();
        let quiver = Quiver::new(self.vertices.clone(), arrows)?;
        let id = |name: &str| {
            quiver.arrow_id(name).ok_or_else(|| Error::Input(format!("unknown arrow {name:?}")))
        };
        let cycles = self
            .f
            .iter()
            .map(|cyc| cyc.iter().map(|n| id(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let f = Permutation::from_cycles(quiver.num_arrows(), &cycles)?;
        let mut weights = Weights::default();
        for (k, &v) in &self.m {
            weights.m.insert(id(k)?, v);
        }
        for (k, v) in &self.c {
            let x = rational_value(v).ok_or_else(|| Error::Input(format!("bad rational for c[{k:?}]")))?;
            weights.c.insert(id(k)?, x);
        }
        for (k, v) in &self.b {
            let x = rational_value(v).ok_or_else(|| Error::Input(format!("bad rational for b[{k:?}]")))?;
            weights.b.insert(id(k)?, x);
        }
        let t = self.t.iter().map(|n| id(n)).collect::<Result<Vec<ArrowId>>>()?;
        BiserialQuiverData::new(quiver, f, weights, &t)
    }

    pub fn from_data(data: &BiserialQuiverData) -> Self {
        let q = data.quiver();
        let name = |a: ArrowId| q.arrow_name(a).to_string();
        PresentationFile {
            vertices: q.vertex_names().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowRecord {
                    name: a.name.clone(),
                    source: q.vertex_name(a.source).to_string(),
                    target: q.vertex_name(a.target).to_string(),
                })
                .collect(),
            f: data.f().cycles().iter().map(|cyc| cyc.iter().map(|&a| name(a)).collect()).collect(),
            m: data.m_by_orbit().into_iter().map(|(a, v)| (name(a), v)).collect(),
            c: data.c_by_orbit().into_iter().map(|(a, v)| (name(a), Value::String(fmt_q(&v)))).collect(),
            b: data.b_nonzero().into_iter().map(|(a, v)| (name(a), Value::String(fmt_q(&v)))).collect(),
            t: data.triangles().into_iter().map(name).collect(),
        }
    }
}

/// Parses a presentation; JSON syntax errors carry line and column.
pub fn parse_presentation(text: &str) -> Result<BiserialQuiverData> {
    let file: PresentationFile = serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("line {} column {}: {}", e.line(), e.column(), e)))?;
    file.to_data()
}

pub fn presentation_to_json(data: &BiserialQuiverData) -> String {
    serde_json::to_string_pretty(&PresentationFile::from_data(data)).expect("presentation serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const DISC: &str = r#"{
        "vertices": ["1", "2"],
        "arrows": [
            {"name": "a", "source": "1", "target": "1"},
            {"name": "b", "source": "1", "target": "2"},
            {"name": "c", "source": "2", "target": "1"},
            {"name": "s", "source": "2", "target": "2"}
        ],
        "f": [["a", "b", "c"], ["s"]],
        "m": {"c": 3},
        "c": {"a": "2/4", "b": 5},
        "T": ["b"]
    }"#;

    #[test]
    fn parse_normalizes_orbits() {
        let d = parse_presentation(DISC).unwrap();
        let q = d.quiver();
        let b = q.arrow_id("b").unwrap();
        let s = q.arrow_id("s").unwrap();
        assert_eq!(d.m(s), 3);
        assert_eq!(d.m(q.arrow_id("a").unwrap()), 1);
        assert_eq!(d.c(b), &crate::scalar::q(5));
        assert!(d.in_t(q.arrow_id("c").unwrap()));
        assert!(!d.in_t(s));
        let again = parse_presentation(&presentation_to_json(&d)).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn located_errors() {
        let e = parse_presentation("{\n \"vertices\": [1,").unwrap_err();
        assert!(matches!(e, Error::Input(ref m) if m.starts_with("line 2")));
        let bad_t = DISC.replace(r#""T": ["b"]"#, r#""T": ["zz"]"#);
        assert!(parse_presentation(&bad_t).is_err());
    }
}
