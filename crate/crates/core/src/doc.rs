//! JSON documents for instances, chain systems, and colorings.
//!
//! ```text
//! instance:     {"n": 5, "hypergraphs": [{"kind": "explicit", "edges": [[0,1],...], "parts": [[..],..]?}]}
//! lower bound:  {"type": "complete-kpartite-power", "k": 3, "m": 2}
//! chain:        {"type": "chain", "n": 5, "closed": true, "order": [..], "intervals": [[start,len],..]}
//! coloring:     {"m": 2, "assignment": [0,1,..]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{
    ChainSystem, CoopColoring, CoopInstance, Hypergraph, HypergraphKind, Interval, VertexId,
};
use crate::multipartite::{build_lower_bound_family, LowerBoundFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindDoc {
    Explicit,
    CompleteKpartite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDoc {
    pub kind: KindDoc,
    #[serde(default)]
    pub edges: Vec<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<VertexId>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub n: usize,
    pub hypergraphs: Vec<HypergraphDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "chain")]
pub struct ChainDoc {
    pub n: usize,
    pub closed: bool,
    pub order: Vec<VertexId>,
    pub intervals: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename = "complete-kpartite-power")]
pub struct LowerBoundDoc {
    pub k: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDoc {
    pub m: usize,
    pub assignment: Vec<usize>,
}

impl From<&CoopInstance> for InstanceDoc {
    fn from(inst: &CoopInstance) -> Self {
        let hypergraphs = inst
            .hypergraphs()
            .iter()
            .map(|h| HypergraphDoc {
                kind: match h.kind() {
                    HypergraphKind::Explicit => KindDoc::Explicit,
                    HypergraphKind::CompleteKPartite => KindDoc::CompleteKpartite,
                },
                edges: h.edges().to_vec(),
                parts: h.parts().map(<[_]>::to_vec),
            })
            .collect();
        InstanceDoc {
            n: inst.n(),
            hypergraphs,
        }
    }
}

impl InstanceDoc {
    pub fn to_instance(&self) -> Result<CoopInstance> {
        let hs = self
            .hypergraphs
            .iter()
            .map(|h| {
                let kind = match h.kind {
                    KindDoc::Explicit => HypergraphKind::Explicit,
                    KindDoc::CompleteKpartite => HypergraphKind::CompleteKPartite,
                };
                Hypergraph::new(self.n, kind, h.edges.clone(), h.parts.clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let inst = CoopInstance::new(hs)?;
        if inst.n() != self.n {
            return Err(Error::Validation(format!(
                "declared n = {} but hypergraphs use {}",
                self.n,
                inst.n()
            )));
        }
        Ok(inst)
    }
}

impl From<&ChainSystem> for ChainDoc {
    fn from(c: &ChainSystem) -> Self {
        ChainDoc {
            n: c.n(),
            closed: c.closed(),
            order: c.order().to_vec(),
            intervals: c.intervals().iter().map(|iv| [iv.start, iv.len]).collect(),
        }
    }
}

impl ChainDoc {
    pub fn to_chain(&self) -> Result<ChainSystem> {
        if self.order.len() != self.n {
            return Err(Error::Validation(format!(
                "order has {} entries, n = {}",
                self.order.len(),
                self.n
            )));
        }
        let intervals = self
            .intervals
            .iter()
            .map(|&[s, l]| Interval::new(s, l))
            .collect();
        ChainSystem::new(self.order.clone(), intervals, self.closed)
    }
}

impl From<&CoopColoring> for ColoringDoc {
    fn from(c: &CoopColoring) -> Self {
        ColoringDoc {
            m: c.m(),
            assignment: c.assignment().to_vec(),
        }
    }
}

impl ColoringDoc {
    pub fn to_coloring(&self) -> Result<CoopColoring> {
        CoopColoring::new(self.m, self.assignment.clone())
    }
}

impl From<&LowerBoundFamily> for LowerBoundDoc {
    fn from(f: &LowerBoundFamily) -> Self {
        LowerBoundDoc { k: f.k(), m: f.m() }
    }
}

/// Anything the CLI accepts where an instance is expected.
#[derive(Debug, Clone)]
pub enum LoadedInstance {
    Family(CoopInstance),
    LowerBound(LowerBoundFamily),
    Chain(ChainSystem),
}

impl LoadedInstance {
    pub fn instance(&self) -> Result<CoopInstance> {
        match self {
            LoadedInstance::Family(i) => Ok(i.clone()),
            LoadedInstance::LowerBound(f) => Ok(f.instance().clone()),
            LoadedInstance::Chain(c) => CoopInstance::new(vec![c.to_hypergraph()?]),
        }
    }
}

fn parse_err(what: &str, e: serde_json::Error) -> Error {
    Error::Validation(format!("cannot parse {what} document: {e}"))
}

/// Dispatches on the `type` field: `chain`, `complete-kpartite-power`, or
/// absent for a plain instance document.
pub fn parse_any_instance(text: &str) -> Result<LoadedInstance> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| parse_err("instance", e))?;
    match value.get("type").and_then(|t| t.as_str()) {
        Some("chain") => {
            let doc: ChainDoc = serde_json::from_value(value).map_err(|e| parse_err("chain", e))?;
            Ok(LoadedInstance::Chain(doc.to_chain()?))
        }
        Some("complete-kpartite-power") => {
            let doc: LowerBoundDoc =
                serde_json::from_value(value).map_err(|e| parse_err("lower-bound", e))?;
            Ok(LoadedInstance::LowerBound(build_lower_bound_family(
                doc.k, doc.m,
            )?))
        }
        Some(other) => Err(Error::Validation(format!(
            "unknown document type {other:?}"
        ))),
        None => {
            let doc: InstanceDoc =
                serde_json::from_value(value).map_err(|e| parse_err("instance", e))?;
            Ok(LoadedInstance::Family(doc.to_instance()?))
        }
    }
}

pub fn parse_chain(text: &str) -> Result<ChainSystem> {
    serde_json::from_str::<ChainDoc>(text)
        .map_err(|e| parse_err("chain", e))?
        .to_chain()
}

pub fn parse_coloring(text: &str) -> Result<CoopColoring> {
    serde_json::from_str::<ColoringDoc>(text)
        .map_err(|e| parse_err("coloring", e))?
        .to_coloring()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_loose_path, make_tight_cycle};

    #[test]
    fn instance_round_trip() {
        let (h, _) = make_tight_cycle(5, 3).unwrap();
        let parts = vec![vec![0, 1], vec![2, 3]];
        let k =
            Hypergraph::explicit_kpartite(4, vec![vec![0, 2], vec![1, 3]], parts.clone()).unwrap();
        let c = Hypergraph::complete_kpartite(4, parts).unwrap();
        for inst in [
            CoopInstance::new(vec![h]).unwrap(),
            CoopInstance::new(vec![k, c]).unwrap(),
        ] {
            let text = serde_json::to_string(&InstanceDoc::from(&inst)).unwrap();
            let LoadedInstance::Family(back) = parse_any_instance(&text).unwrap() else {
                panic!()
            };
            assert_eq!(back, inst);
        }
    }

    #[test]
    fn wire_format() {
        let h = Hypergraph::explicit(3, vec![vec![0, 1, 2]]).unwrap();
        let text = serde_json::to_string(&InstanceDoc::from(&CoopInstance::new(vec![h]).unwrap()))
            .unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"hypergraphs":[{"kind":"explicit","edges":[[0,1,2]]}]}"#
        );

        let c = Hypergraph::complete_kpartite(2, vec![vec![0], vec![1]]).unwrap();
        let text = serde_json::to_string(&InstanceDoc::from(&CoopInstance::new(vec![c]).unwrap()))
            .unwrap();
        assert_eq!(
            text,
            r#"{"n":2,"hypergraphs":[{"kind":"complete-kpartite","edges":[],"parts":[[0],[1]]}]}"#
        );

        let (_, chain) = make_loose_path(1, 3).unwrap();
        let text = serde_json::to_string(&ChainDoc::from(&chain)).unwrap();
        assert_eq!(
            text,
            r#"{"type":"chain","n":3,"closed":false,"order":[0,1,2],"intervals":[[0,3]]}"#
        );
        assert_eq!(parse_chain(&text).unwrap(), chain);

        let lb = LowerBoundDoc { k: 3, m: 2 };
        let text = serde_json::to_string(&lb).unwrap();
        assert_eq!(text, r#"{"type":"complete-kpartite-power","k":3,"m":2}"#);
        let LoadedInstance::LowerBound(f) = parse_any_instance(&text).unwrap() else {
            panic!()
        };
        assert_eq!(f.n(), 9);
    }

    #[test]
    fn chain_as_instance() {
        let (h, chain) = make_tight_cycle(6, 3).unwrap();
        let text = serde_json::to_string(&ChainDoc::from(&chain)).unwrap();
        let loaded = parse_any_instance(&text).unwrap();
        assert_eq!(loaded.instance().unwrap().hypergraph(0), &h);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_any_instance("{").is_err());
        assert!(parse_any_instance(r#"{"type":"tree"}"#).is_err());
        assert!(parse_any_instance(
            r#"{"n":2,"hypergraphs":[{"kind":"explicit","edges":[[0,0]]}]}"#
        )
        .is_err());
        assert!(parse_any_instance(
            r#"{"n":2,"hypergraphs":[{"kind":"explicit","edges":[[0,5]]}]}"#
        )
        .is_err());
        assert!(parse_any_instance(
            r#"{"n":2,"hypergraphs":[{"kind":"complete-kpartite","edges":[]}]}"#
        )
        .is_err());
        assert!(parse_any_instance(r#"{"n":2,"hypergraphs":[]}"#).is_err());
        assert!(parse_coloring(r#"{"m":2,"assignment":[0,2]}"#).is_err());
        assert_eq!(
            parse_coloring(r#"{"m":2,"assignment":[0,1]}"#)
                .unwrap()
                .class(1),
            vec![1]
        );
        assert!(parse_chain(
            r#"{"type":"chain","n":3,"closed":false,"order":[0,1],"intervals":[]}"#
        )
        .is_err());
        assert!(parse_chain(
            r#"{"type":"chain","n":3,"closed":false,"order":[0,1,2],"intervals":[[2,2]]}"#
        )
        .is_err());
    }
}
