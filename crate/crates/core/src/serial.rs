//! Versioned JSON documents for simplicial sets and multicosimplicial
//! objects.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cosimplicial::MultiCosimplicial;
use crate::delta::{MonotoneMap, MultiMap};
use crate::diagrams::shapes::delta_power;
use crate::error::{Error, Result};
use crate::sset::{SSetMap, TruncSSet};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SSetJson {
    pub dim_cap: usize,
    /// Simplex ids per dimension, always `0..count`.
    pub simplices: Vec<Vec<u32>>,
    /// `faces[m][i][x]`; `faces[0]` is empty.
    pub faces: Vec<Vec<Vec<u32>>>,
    /// `degeneracies[m][i][x]`; the top dimension is empty.
    pub degeneracies: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    /// Images of each component.
    pub label: Vec<Vec<usize>>,
    /// Per-dimension index arrays.
    pub tables: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiJson {
    pub arity: usize,
    pub trunc: usize,
    pub dim_cap: usize,
    /// Distinct values, referenced from `values`.
    pub ssets: Vec<SSetJson>,
    /// `"(k1,..,kn)"` to an index into `ssets`.
    pub values: BTreeMap<String, usize>,
    pub maps: Vec<GeneratorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedMultiJson {
    pub name: String,
    pub object: MultiJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    SimplicialSet(SSetJson),
    MultiCosimplicial(MultiJson),
    Corpus { objects: Vec<NamedMultiJson> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    #[serde(flatten)]
    pub payload: Payload,
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Self { schema_version: SCHEMA_VERSION, payload }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    /// Parses and checks the schema version; the payload is not validated.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(parse_error("schema_version", format!("unsupported version {}", doc.schema_version)));
        }
        Ok(doc)
    }
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

pub fn degree_key(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn sset_to_json(x: &TruncSSet) -> SSetJson {
    let cap = x.cap();
    SSetJson {
        dim_cap: cap,
        simplices: (0..=cap).map(|m| (0..x.count(m) as u32).collect()).collect(),
        faces: (0..=cap).map(|m| if m == 0 { Vec::new() } else { (0..=m).map(|i| x.face_table(m, i).to_vec()).collect() }).collect(),
        degeneracies: (0..=cap).map(|m| if m == cap { Vec::new() } else { (0..=m).map(|i| x.degen_table(m, i).to_vec()).collect() }).collect(),
    }
}

/// Rebuilds and validates; a violated simplicial identity is named in the error.
pub fn sset_from_json(j: &SSetJson) -> Result<TruncSSet> {
    if j.simplices.len() != j.dim_cap + 1 {
        return Err(parse_error("simplices", format!("expected {} dimensions", j.dim_cap + 1)));
    }
    for (m, ids) in j.simplices.iter().enumerate() {
        if ids.iter().enumerate().any(|(i, &id)| id as usize != i) {
            return Err(parse_error(format!("simplices[{m}]"), "ids must be 0, 1, .. in order"));
        }
    }
    let counts = j.simplices.iter().map(Vec::len).collect();
    TruncSSet::from_tables(j.dim_cap, counts, j.faces.clone(), j.degeneracies.clone())
}

pub fn multi_to_json(x: &MultiCosimplicial) -> MultiJson {
    let d = x.diagram();
    let shape = d.shape();
    let mut ssets: Vec<SSetJson> = Vec::new();
    let mut pool: HashMap<SSetJson, usize> = HashMap::new();
    let mut values = BTreeMap::new();
    for o in 0..shape.num_objects() {
        let s = sset_to_json(d.value(o));
        let idx = *pool.entry(s.clone()).or_insert_with(|| {
            ssets.push(s);
            ssets.len() - 1
        });
        values.insert(degree_key(&x.degrees(o)), idx);
    }
    let maps = shape
        .generators()
        .iter()
        .map(|&g| {
            let u = shape.label(g).expect("labelled");
            GeneratorJson {
                source: u.dom(),
                target: u.cod(),
                label: u.components().iter().map(MonotoneMap::images).collect(),
                tables: d.generator_map(g).tables().to_vec(),
            }
        })
        .collect();
    MultiJson { arity: x.arity(), trunc: x.trunc(), dim_cap: x.cap(), ssets, values, maps }
}

/// Rebuilds, checking every value, every generator map and functoriality.
pub fn multi_from_json(j: &MultiJson) -> Result<MultiCosimplicial> {
    let ssets = j
        .ssets
        .iter()
        .enumerate()
        .map(|(i, s)| sset_from_json(s).map_err(|e| parse_error(format!("ssets[{i}]"), e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let shape = Arc::new(delta_power(j.arity, j.trunc));
    let mut values = Vec::with_capacity(shape.num_objects());
    for o in 0..shape.num_objects() {
        let key = degree_key(&crate::diagrams::shapes::power_degrees(j.arity, j.trunc, o));
        let &idx = j.values.get(&key).ok_or_else(|| parse_error("values", format!("missing degree {key}")))?;
        let v = ssets.get(idx).ok_or_else(|| parse_error(format!("values.{key}"), format!("no sset {idx}")))?;
        values.push(v);
    }
    let mut maps: HashMap<MultiMap, &GeneratorJson> = HashMap::new();
    for (i, g) in j.maps.iter().enumerate() {
        if g.label.len() != j.arity || g.target.len() != j.arity {
            return Err(parse_error(format!("maps[{i}]"), "label arity does not match"));
        }
        let comps = g
            .label
            .iter()
            .zip(&g.target)
            .map(|(img, &cod)| MonotoneMap::new(img, cod))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| parse_error(format!("maps[{i}].label"), e.to_string()))?;
        maps.insert(MultiMap::new(comps), g);
    }
    for &g in shape.generators() {
        let u = shape.label(g).expect("labelled");
        let entry = maps.get(u).ok_or_else(|| parse_error("maps", format!("missing generator {u:?}")))?;
        let (a, b) = (shape.src(g), shape.tgt(g));
        SSetMap::new(values[a], values[b], entry.tables.clone())
            .map_err(|e| parse_error(format!("maps for {u:?}"), e.to_string()))?;
    }
    MultiCosimplicial::with_shape(
        shape.clone(),
        j.arity,
        j.trunc,
        j.dim_cap,
        |d| values[crate::diagrams::shapes::power_index(j.trunc, d)].clone(),
        |u| SSetMap::from_raw(maps[u].tables.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::standard_simplex;

    #[test]
    fn simplex_round_trip() {
        let s = standard_simplex(1, 3);
        let doc = Document::new(Payload::SimplicialSet(sset_to_json(&s)));
        let back = Document::parse(&doc.to_json()).unwrap();
        let Payload::SimplicialSet(j) = back.payload else { panic!("wrong kind") };
        assert_eq!(sset_from_json(&j).unwrap(), s);
    }

    #[test]
    fn standard_round_trip() {
        let x = MultiCosimplicial::standard(2, 2, 2).unwrap();
        let j = multi_to_json(&x);
        let text = Document::new(Payload::MultiCosimplicial(j.clone())).to_json();
        let Payload::MultiCosimplicial(k) = Document::parse(&text).unwrap().payload else { panic!("wrong kind") };
        let y = multi_from_json(&k).unwrap();
        assert_eq!(multi_to_json(&y), j);
    }

    #[test]
    fn corrupt_faces_are_rejected() {
        let mut j = sset_to_json(&standard_simplex(2, 2));
        j.faces[2][0].swap(0, 9);
        let err = sset_from_json(&j).unwrap_err().to_string();
        assert!(err.contains("d_"), "{err}");
        let bad = r#"{"schema_version": 1, "kind": "simplicial_set", "dim_cap": 1,"#;
        assert!(matches!(Document::parse(bad), Err(Error::Parse { .. })));
    }
}
