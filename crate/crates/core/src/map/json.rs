//! Canonical JSON form of a map.
//!
//! Keys are written in a fixed order (`product`, `nodes`, `edges`; per node
//! `id`, `kind`, `clause_text`, `clause_kind`, `clause_form`; per edge `id`,
//! `kind`, `source`, `target`, `polarity`) and arrays are sorted by id, so two
//! equal maps always serialize to the same bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    ClauseForm, ClauseKind, CognitiveMap, Counters, EdgeId, EdgeKind, MapEdge, MapNode, NodeId,
    NodeKind, NodeRole, Polarity,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid map JSON at {location}: {message}")]
pub struct ParseError {
    /// `line L, column C` for syntax errors, a JSON path for semantic ones.
    pub location: String,
    pub message: String,
}

impl ParseError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self { location: location.into(), message: message.into() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireMap {
    product: Option<NodeId>,
    nodes: Vec<WireNode>,
    edges: Vec<WireEdge>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireNode {
    id: NodeId,
    kind: NodeKind,
    clause_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clause_kind: Option<ClauseKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clause_form: Option<ClauseForm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireEdge {
    id: EdgeId,
    kind: EdgeKind,
    source: NodeId,
    target: NodeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polarity: Option<Polarity>,
}

impl Serialize for CognitiveMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        wire(self).serialize(serializer)
    }
}

pub(super) fn to_json(map: &CognitiveMap) -> String {
    serde_json::to_string(&wire(map)).expect("map serialization cannot fail")
}

fn wire(map: &CognitiveMap) -> WireMap {
    WireMap {
        product: map.product.clone(),
        nodes: map
            .nodes()
            .map(|n| WireNode {
                id: n.id.clone(),
                kind: n.kind(),
                clause_text: n.clause_text.clone(),
                clause_kind: n.clause_kind(),
                clause_form: n.clause_form(),
            })
            .collect(),
        edges: map
            .edges()
            .map(|e| WireEdge {
                id: e.id.clone(),
                kind: e.kind,
                source: e.source.clone(),
                target: e.target.clone(),
                polarity: e.polarity,
            })
            .collect(),
    }
}

pub(super) fn from_json(input: &str) -> Result<CognitiveMap, ParseError> {
    let wire: WireMap = serde_json::from_str(input).map_err(|e| {
        ParseError::at(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;

    let mut nodes = BTreeMap::new();
    for (i, n) in wire.nodes.into_iter().enumerate() {
        let at = format!("nodes[{i}]");
        let text = n.clause_text.trim();
        if text.is_empty() || text.len() != n.clause_text.len() {
            return Err(ParseError::at(at, "clause_text must be non-empty and trimmed"));
        }
        let role = match (n.kind, n.clause_kind, n.clause_form) {
            (NodeKind::Product, None, None) => NodeRole::Product,
            (NodeKind::Customer, None, None) => NodeRole::Customer,
            (NodeKind::Problem, Some(kind), Some(form)) => NodeRole::Problem { kind, form },
            (NodeKind::Feature, None, Some(form)) => NodeRole::Feature { form },
            (kind, _, _) => {
                return Err(ParseError::at(at, format!("wrong clause metadata for a {kind} node")))
            }
        };
        if nodes.contains_key(&n.id) {
            return Err(ParseError::at(at, format!("duplicate node id {}", n.id)));
        }
        nodes.insert(n.id.clone(), MapNode { id: n.id, role, clause_text: n.clause_text });
    }

    let products: Vec<&NodeId> = nodes
        .values()
        .filter(|n| n.kind() == NodeKind::Product)
        .map(|n| &n.id)
        .collect();
    match (&wire.product, products.as_slice()) {
        (None, []) => {}
        (Some(p), [only]) if p == *only => {}
        _ => {
            return Err(ParseError::at(
                "product",
                "product must name the single product node, or be null when there is none",
            ))
        }
    }

    let mut edges: BTreeMap<EdgeId, MapEdge> = BTreeMap::new();
    for (i, e) in wire.edges.into_iter().enumerate() {
        let at = format!("edges[{i}]");
        let kind_of = |id: &NodeId| {
            nodes
                .get(id)
                .map(MapNode::kind)
                .ok_or_else(|| ParseError::at(at.clone(), format!("unknown node {id}")))
        };
        let (source, target) = (kind_of(&e.source)?, kind_of(&e.target)?);
        use NodeKind::*;
        let endpoints_ok = match e.kind {
            EdgeKind::Feasibility => source == Product && target == Feature,
            EdgeKind::Value => matches!(source, Feature | Problem) && target == Problem,
            EdgeKind::ProblemLink => source == Problem && target == Customer,
        };
        if !endpoints_ok {
            return Err(ParseError::at(
                at,
                format!("a {} edge cannot run from a {source} to a {target}", e.kind),
            ));
        }
        if (e.kind == EdgeKind::Value) != e.polarity.is_some() {
            return Err(ParseError::at(at, "polarity is required on value edges and only there"));
        }
        if edges.contains_key(&e.id) {
            return Err(ParseError::at(at, format!("duplicate edge id {}", e.id)));
        }
        if edges
            .values()
            .any(|x| x.kind == e.kind && x.source == e.source && x.target == e.target)
        {
            return Err(ParseError::at(at, "duplicate edge"));
        }
        edges.insert(
            e.id.clone(),
            MapEdge { id: e.id, kind: e.kind, source: e.source, target: e.target, polarity: e.polarity },
        );
    }

    let max_node = |prefix: &str| {
        nodes
            .keys()
            .filter(|id| id.prefix() == prefix)
            .filter_map(NodeId::number)
            .max()
            .unwrap_or(0)
    };
    let counters = Counters {
        product: max_node("p"),
        customer: max_node("c"),
        problem: max_node("b"),
        feature: max_node("f"),
        edge: edges.keys().filter_map(EdgeId::number).max().unwrap_or(0),
    };

    Ok(CognitiveMap { product: wire.product, nodes, edges, counters })
}
