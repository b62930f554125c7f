//! Instance files: `{"kind", "name", "payload", "options"}`.

use serde::Deserialize;
use serde_json::Value;
use steinhom::algebra::{AlgebraSpec, FinDimAlgebra};
use steinhom::ep::{EpTupleSpec, UnitsPresentation};
use steinhom::graph::GraphSpec;
use steinhom::groupoid::{Cocycle2, GroupoidSpec};
use steinhom::{EpTuple, Error, FgAbelianGroup, FiniteGroupoid, Graph, Result, Ring};

use crate::corpus;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Groupoid,
    Graph,
    EpTuple,
    Algebra,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Groupoid => "groupoid",
            Kind::Graph => "graph",
            Kind::EpTuple => "ep_tuple",
            Kind::Algebra => "algebra",
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub ring: Option<String>,
    pub window: Option<usize>,
    pub weight: Option<i64>,
    /// Kept for compatibility; pseudo-freeness is decided exactly.
    pub depth_bound: Option<usize>,
    pub units: Option<UnitsPresentation>,
    /// `K_n(l)` for `n = 0, 1, ..`, written like `"Z"`, `"Z/2"`, `"Z^2 + Z/3"`.
    pub k_groups: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub name: Option<String>,
    pub payload: Value,
    #[serde(default)]
    pub options: Options,
}

pub enum Payload {
    Groupoid(FiniteGroupoid, Option<Cocycle2>),
    Graph(Graph),
    EpTuple(EpTuple),
    Algebra(FinDimAlgebra),
}

pub struct Instance {
    pub kind: Kind,
    pub name: String,
    pub payload: Payload,
    pub options: Options,
}

fn malformed(what: &str, e: serde_json::Error) -> Error {
    Error::invalid(format!("{what}: {e} (line {}, column {})", e.line(), e.column()))
}

/// Reads a file from disk, or a bundled corpus entry by name.
pub fn read_source(path: &str) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(s) => Ok(s),
        Err(e) => corpus::lookup(path).map(str::to_string).ok_or_else(|| Error::invalid(format!("cannot read {path}: {e}"))),
    }
}

pub fn parse_file(text: &str) -> Result<InstanceFile> {
    serde_json::from_str(text).map_err(|e| malformed("instance file", e))
}

impl InstanceFile {
    /// Builds the payload. `ring` is needed for algebras and cocycles.
    pub fn load(&self, ring: Ring) -> Result<Instance> {
        let p = &self.payload;
        let payload = match self.kind {
            Kind::Groupoid => {
                let spec: GroupoidSpec = serde_json::from_value(p.clone()).map_err(|e| malformed("groupoid", e))?;
                let g = spec.build()?;
                let w = spec.build_cocycle(&g, ring)?;
                Payload::Groupoid(g, w)
            }
            Kind::Graph => {
                let spec: GraphSpec = serde_json::from_value(p.clone()).map_err(|e| malformed("graph", e))?;
                Payload::Graph(spec.build()?)
            }
            Kind::EpTuple => {
                let spec: EpTupleSpec = serde_json::from_value(p.clone()).map_err(|e| malformed("ep_tuple", e))?;
                Payload::EpTuple(spec.build()?)
            }
            Kind::Algebra => {
                let spec: AlgebraSpec = serde_json::from_value(p.clone()).map_err(|e| malformed("algebra", e))?;
                Payload::Algebra(spec.build(ring)?)
            }
        };
        Ok(Instance {
            kind: self.kind,
            name: self.name.clone().unwrap_or_else(|| "unnamed".into()),
            payload,
            options: self.options.clone(),
        })
    }
}

/// Parses `"0"`, `"Z"`, `"Z^2"`, `"Z/4"`, `"(Z/2)^3"` and sums of these.
pub fn parse_group(s: &str) -> Result<FgAbelianGroup> {
    let bad = || Error::invalid(format!("cannot read {s:?} as a finitely generated abelian group"));
    let mut out = FgAbelianGroup::zero();
    for part in s.split('+').map(str::trim) {
        let (base, power) = match part.rsplit_once('^') {
            Some((b, k)) => (b.trim(), k.trim().parse::<usize>().map_err(|_| bad())?),
            None => (part, 1),
        };
        let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base);
        let one = match base {
            "0" => FgAbelianGroup::zero(),
            "Z" => FgAbelianGroup::free(1),
            _ => {
                let n: u64 = base.strip_prefix("Z/").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if n == 0 {
                    return Err(bad());
                }
                FgAbelianGroup::cyclic(n)
            }
        };
        for _ in 0..power {
            out = out.direct_sum(&one);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_strings_round_trip() {
        for s in ["0", "Z", "Z^3", "Z/2", "(Z/2)^2", "Z^2 + Z/2 + Z/6"] {
            assert_eq!(parse_group(s).unwrap().to_string(), s);
        }
        assert!(parse_group("Q").is_err());
        assert!(parse_group("Z/0").is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_file(r#"{"kind": "graph", "payload": {"rose": 1}, "extra": 1}"#).is_err());
        let f = parse_file(r#"{"kind": "graph", "payload": {"rose": 2}}"#).unwrap();
        assert!(matches!(f.load(Ring::Z).unwrap().payload, Payload::Graph(_)));
    }
}
