//! The layered cognitive map of a product theory.
//!
//! Layers, bottom to top: the product (one ellipse), its features (dashed
//! boxes), one or more layers of problem concepts (boxes) and the customer
//! segments (circles). Every edge points upward in that order:
//!
//! * feasibility: product -> feature
//! * value: feature or problem -> problem, always labelled with a [`Polarity`]
//! * problem link: problem -> customer
//!
//! Each edge later becomes exactly one hypothesis statement.

mod dot;
mod ids;
mod json;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use ids::{EdgeId, NodeId};
pub use json::ParseError;
pub use validate::Violation;

/// Label on a value edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    #[serde(rename = "+")]
    Increase,
    #[serde(rename = "-")]
    Decrease,
    #[serde(rename = "/o/")]
    Neutral,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Increase, Polarity::Decrease, Polarity::Neutral];

    /// `"+"`, `"-"` or `"/o/"`.
    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Increase => "+",
            Polarity::Decrease => "-",
            Polarity::Neutral => "/o/",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Whether a problem concept is something customers want or something that
/// gets in their way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseKind {
    Desire,
    Difficulty,
}

/// Grammatical shape of an extracted clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClauseForm {
    #[serde(rename = "vp")]
    VerbPhrase,
    #[serde(rename = "np")]
    NounPhrase,
}

impl ClauseForm {
    pub fn code(self) -> &'static str {
        match self {
            ClauseForm::VerbPhrase => "vp",
            ClauseForm::NounPhrase => "np",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Product,
    Customer,
    Problem,
    Feature,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeKind::Product => "product",
            NodeKind::Customer => "customer",
            NodeKind::Problem => "problem",
            NodeKind::Feature => "feature",
        })
    }
}

/// Node kind together with the clause metadata that kind requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeRole {
    Product,
    Customer,
    Problem { kind: ClauseKind, form: ClauseForm },
    Feature { form: ClauseForm },
}

impl NodeRole {
    pub fn kind(self) -> NodeKind {
        match self {
            NodeRole::Product => NodeKind::Product,
            NodeRole::Customer => NodeKind::Customer,
            NodeRole::Problem { .. } => NodeKind::Problem,
            NodeRole::Feature { .. } => NodeKind::Feature,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapNode {
    pub id: NodeId,
    pub role: NodeRole,
    pub clause_text: String,
}

impl MapNode {
    pub fn kind(&self) -> NodeKind {
        self.role.kind()
    }

    pub fn clause_kind(&self) -> Option<ClauseKind> {
        match self.role {
            NodeRole::Problem { kind, .. } => Some(kind),
            _ => None,
        }
    }

    pub fn clause_form(&self) -> Option<ClauseForm> {
        match self.role {
            NodeRole::Problem { form, .. } | NodeRole::Feature { form } => Some(form),
            _ => None,
        }
    }

    /// Short label used in prompts and drawings. Problems use their noun
    /// phrase realization ("difficulty to find a cab", "desire to travel").
    pub fn display_label(&self) -> String {
        match self.role {
            NodeRole::Problem { kind, form } => {
                crate::hypothesis::problem_label(kind, form, &self.clause_text)
            }
            _ => self.clause_text.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Feasibility,
    Value,
    ProblemLink,
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Feasibility => "feasibility",
            EdgeKind::Value => "value",
            EdgeKind::ProblemLink => "problem_link",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEdge {
    pub id: EdgeId,
    pub kind: EdgeKind,
    pub source: NodeId,
    pub target: NodeId,
    /// Present exactly on value edges.
    pub polarity: Option<Polarity>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("label must not be empty")]
    EmptyLabel,
    #[error("the map already has a product")]
    ProductAlreadySet,
    #[error("the map has no product yet")]
    ProductMissing,
    #[error("a {kind} named {text:?} already exists")]
    DuplicateLabel { kind: NodeKind, text: String },
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("node {id} is a {found}, expected a {expected}")]
    WrongNodeKind { id: NodeId, expected: NodeKind, found: NodeKind },
    #[error("a {kind} edge {source_id} -> {target_id} already exists")]
    DuplicateEdge { kind: EdgeKind, source_id: NodeId, target_id: NodeId },
    #[error("edge {0} is a feasibility edge and cannot be refined")]
    NotRefinable(EdgeId),
    #[error("refining a {kind} edge {requirement}")]
    PolarityMismatch { kind: EdgeKind, requirement: &'static str },
}

/// Result of [`CognitiveMap::add_feature`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureInsertion {
    pub node: NodeId,
    pub feasibility: EdgeId,
    pub value: EdgeId,
}

/// Result of [`CognitiveMap::refine_edge`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub node: NodeId,
    pub lower: EdgeId,
    pub upper: EdgeId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Counters {
    product: u64,
    customer: u64,
    problem: u64,
    feature: u64,
    edge: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CognitiveMap {
    product: Option<NodeId>,
    nodes: BTreeMap<NodeId, MapNode>,
    edges: BTreeMap<EdgeId, MapEdge>,
    counters: Counters,
}

fn clean_label(text: &str) -> Result<String, MapError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        Err(MapError::EmptyLabel)
    } else {
        Ok(trimmed.to_owned())
    }
}

impl CognitiveMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn product(&self) -> Option<&MapNode> {
        self.product.as_ref().and_then(|id| self.nodes.get(id))
    }

    pub fn product_id(&self) -> Option<&NodeId> {
        self.product.as_ref()
    }

    pub fn node(&self, id: &NodeId) -> Option<&MapNode> {
        self.nodes.get(id)
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&MapEdge> {
        self.edges.get(id)
    }

    /// Nodes in id order.
    pub fn nodes(&self) -> impl Iterator<Item = &MapNode> {
        self.nodes.values()
    }

    /// Edges in id order.
    pub fn edges(&self) -> impl Iterator<Item = &MapEdge> {
        self.edges.values()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes_of_kind(&self, kind: NodeKind) -> impl Iterator<Item = &MapNode> {
        self.nodes.values().filter(move |n| n.kind() == kind)
    }

    /// Case-insensitive lookup of a node of `kind` by its clause text.
    pub fn find_by_label(&self, kind: NodeKind, text: &str) -> Option<&MapNode> {
        let wanted = text.trim().to_lowercase();
        self.nodes_of_kind(kind)
            .find(|n| n.clause_text.to_lowercase() == wanted)
    }

    pub fn set_product(&mut self, clause_text: &str) -> Result<NodeId, MapError> {
        let text = clean_label(clause_text)?;
        if self.product.is_some() {
            return Err(MapError::ProductAlreadySet);
        }
        let id = self.insert_node(NodeRole::Product, text);
        self.product = Some(id.clone());
        Ok(id)
    }

    pub fn add_customer(&mut self, clause_text: &str) -> Result<NodeId, MapError> {
        let text = clean_label(clause_text)?;
        if self.find_by_label(NodeKind::Customer, &text).is_some() {
            return Err(MapError::DuplicateLabel { kind: NodeKind::Customer, text });
        }
        Ok(self.insert_node(NodeRole::Customer, text))
    }

    /// Adds a problem box under `customer` and links it upward to that customer.
    pub fn add_problem(
        &mut self,
        clause_text: &str,
        clause_kind: ClauseKind,
        clause_form: ClauseForm,
        customer: &NodeId,
    ) -> Result<(NodeId, EdgeId), MapError> {
        self.expect_kind(customer, NodeKind::Customer)?;
        let text = clean_label(clause_text)?;
        let id = self.insert_node(NodeRole::Problem { kind: clause_kind, form: clause_form }, text);
        let link = self.insert_edge(EdgeKind::ProblemLink, id.clone(), customer.clone(), None);
        Ok((id, link))
    }

    /// Adds a feature box, a feasibility edge from the product and a value
    /// edge into `target_problem`.
    pub fn add_feature(
        &mut self,
        clause_text: &str,
        clause_form: ClauseForm,
        target_problem: &NodeId,
        polarity: Polarity,
    ) -> Result<FeatureInsertion, MapError> {
        let product = self.product.clone().ok_or(MapError::ProductMissing)?;
        self.expect_kind(target_problem, NodeKind::Problem)?;
        let text = clean_label(clause_text)?;
        let node = self.insert_node(NodeRole::Feature { form: clause_form }, text);
        let feasibility = self.insert_edge(EdgeKind::Feasibility, product, node.clone(), None);
        let value = self.insert_edge(
            EdgeKind::Value,
            node.clone(),
            target_problem.clone(),
            Some(polarity),
        );
        Ok(FeatureInsertion { node, feasibility, value })
    }

    /// Records that an existing feature also affects another problem.
    pub fn link_feature_to_problem(
        &mut self,
        feature: &NodeId,
        problem: &NodeId,
        polarity: Polarity,
    ) -> Result<EdgeId, MapError> {
        self.expect_kind(feature, NodeKind::Feature)?;
        self.expect_kind(problem, NodeKind::Problem)?;
        if self.has_edge(EdgeKind::Value, feature, problem) {
            return Err(MapError::DuplicateEdge {
                kind: EdgeKind::Value,
                source_id: feature.clone(),
                target_id: problem.clone(),
            });
        }
        Ok(self.insert_edge(EdgeKind::Value, feature.clone(), problem.clone(), Some(polarity)))
    }

    /// Inserts an underlying concept between the two ends of `edge`.
    ///
    /// The edge is removed and replaced by `source -> concept` (a value edge
    /// labelled `lower_polarity`) and `concept -> target`, which keeps the
    /// kind of the original edge. `upper_polarity` must be given exactly when
    /// the original edge was a value edge.
    #[allow(clippy::too_many_arguments)]
    pub fn refine_edge(
        &mut self,
        edge: &EdgeId,
        clause_text: &str,
        clause_kind: ClauseKind,
        clause_form: ClauseForm,
        lower_polarity: Polarity,
        upper_polarity: Option<Polarity>,
    ) -> Result<Refinement, MapError> {
        let original = self
            .edges
            .get(edge)
            .cloned()
            .ok_or_else(|| MapError::UnknownEdge(edge.clone()))?;
        match (original.kind, upper_polarity) {
            (EdgeKind::Feasibility, _) => return Err(MapError::NotRefinable(edge.clone())),
            (EdgeKind::Value, None) => {
                return Err(MapError::PolarityMismatch {
                    kind: EdgeKind::Value,
                    requirement: "requires an upper polarity",
                })
            }
            (EdgeKind::ProblemLink, Some(_)) => {
                return Err(MapError::PolarityMismatch {
                    kind: EdgeKind::ProblemLink,
                    requirement: "takes no upper polarity",
                })
            }
            _ => {}
        }
        let text = clean_label(clause_text)?;

        self.edges.remove(edge);
        let node = self.insert_node(NodeRole::Problem { kind: clause_kind, form: clause_form }, text);
        let lower = self.insert_edge(
            EdgeKind::Value,
            original.source.clone(),
            node.clone(),
            Some(lower_polarity),
        );
        let upper = self.insert_edge(original.kind, node.clone(), original.target, upper_polarity);
        Ok(Refinement { node, lower, upper })
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(input: &str) -> Result<Self, ParseError> {
        json::from_json(input)
    }

    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }

    /// Edges leaving `node`.
    pub fn outgoing<'a>(&'a self, node: &'a NodeId) -> impl Iterator<Item = &'a MapEdge> + 'a {
        self.edges.values().filter(move |e| &e.source == node)
    }

    /// Edges entering `node`.
    pub fn incoming<'a>(&'a self, node: &'a NodeId) -> impl Iterator<Item = &'a MapEdge> + 'a {
        self.edges.values().filter(move |e| &e.target == node)
    }

    fn has_edge(&self, kind: EdgeKind, source: &NodeId, target: &NodeId) -> bool {
        self.edges
            .values()
            .any(|e| e.kind == kind && &e.source == source && &e.target == target)
    }

    fn expect_kind(&self, id: &NodeId, expected: NodeKind) -> Result<&MapNode, MapError> {
        let node = self.nodes.get(id).ok_or_else(|| MapError::UnknownNode(id.clone()))?;
        if node.kind() != expected {
            return Err(MapError::WrongNodeKind { id: id.clone(), expected, found: node.kind() });
        }
        Ok(node)
    }

    fn insert_node(&mut self, role: NodeRole, clause_text: String) -> NodeId {
        let (prefix, counter) = match role.kind() {
            NodeKind::Product => ("p", &mut self.counters.product),
            NodeKind::Customer => ("c", &mut self.counters.customer),
            NodeKind::Problem => ("b", &mut self.counters.problem),
            NodeKind::Feature => ("f", &mut self.counters.feature),
        };
        *counter += 1;
        let id = NodeId::new(format!("{prefix}{counter}"));
        self.nodes.insert(id.clone(), MapNode { id: id.clone(), role, clause_text });
        id
    }

    fn insert_edge(
        &mut self,
        kind: EdgeKind,
        source: NodeId,
        target: NodeId,
        polarity: Option<Polarity>,
    ) -> EdgeId {
        self.counters.edge += 1;
        let id = EdgeId::new(format!("e{}", self.counters.edge));
        self.edges.insert(id.clone(), MapEdge { id: id.clone(), kind, source, target, polarity });
        id
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The Uber walkthrough built by hand, one drawing action at a time.
    pub(crate) fn uber() -> CognitiveMap {
        let mut map = CognitiveMap::new();
        map.set_product("Uber").unwrap();
        let riders = map.add_customer("riders").unwrap();
        let (cab, _) = map
            .add_problem("find a cab", ClauseKind::Difficulty, ClauseForm::VerbPhrase, &riders)
            .unwrap();
        let (costs, _) = map
            .add_problem(
                "high costs for a ride",
                ClauseKind::Difficulty,
                ClauseForm::NounPhrase,
                &riders,
            )
            .unwrap();
        map.add_feature("book a ride", ClauseForm::VerbPhrase, &cab, Polarity::Decrease)
            .unwrap();
        map.add_feature("fare splitting", ClauseForm::NounPhrase, &costs, Polarity::Decrease)
            .unwrap();
        map
    }

    #[test]
    fn new_map_is_empty() {
        let map = CognitiveMap::new();
        assert_eq!(map.node_count(), 0);
        assert_eq!(map.edge_count(), 0);
        assert!(map.product().is_none());
    }

    #[test]
    fn product_rules() {
        let mut map = CognitiveMap::new();
        assert_eq!(map.set_product(""), Err(MapError::EmptyLabel));
        assert_eq!(map.set_product("   "), Err(MapError::EmptyLabel));
        let id = map.set_product(" Uber ").unwrap();
        assert_eq!(id.as_str(), "p1");
        let node = map.node(&id).unwrap();
        assert_eq!(node.kind(), NodeKind::Product);
        assert_eq!(node.clause_text, "Uber");
        assert_eq!(map.set_product("X"), Err(MapError::ProductAlreadySet));
    }

    #[test]
    fn customers_are_deduplicated_case_insensitively() {
        let mut map = CognitiveMap::new();
        map.add_customer("riders").unwrap();
        map.add_customer("drivers").unwrap();
        assert_eq!(map.nodes_of_kind(NodeKind::Customer).count(), 2);
        assert!(matches!(map.add_customer("Riders"), Err(MapError::DuplicateLabel { .. })));
        assert_eq!(map.add_customer(""), Err(MapError::EmptyLabel));
    }

    #[test]
    fn problem_links_upward_to_customer() {
        let mut map = CognitiveMap::new();
        let product = map.set_product("Uber").unwrap();
        let riders = map.add_customer("riders").unwrap();
        let (problem, link) = map
            .add_problem("find a cab", ClauseKind::Difficulty, ClauseForm::VerbPhrase, &riders)
            .unwrap();
        let edge = map.edge(&link).unwrap();
        assert_eq!(edge.kind, EdgeKind::ProblemLink);
        assert_eq!((&edge.source, &edge.target), (&problem, &riders));
        assert_eq!(edge.polarity, None);

        let err = map
            .add_problem("x", ClauseKind::Desire, ClauseForm::VerbPhrase, &product)
            .unwrap_err();
        assert!(matches!(err, MapError::WrongNodeKind { expected: NodeKind::Customer, .. }));
        let err = map
            .add_problem("x", ClauseKind::Desire, ClauseForm::VerbPhrase, &NodeId::from("c9"))
            .unwrap_err();
        assert_eq!(err, MapError::UnknownNode(NodeId::from("c9")));
        let err = map
            .add_problem(" ", ClauseKind::Desire, ClauseForm::VerbPhrase, &riders)
            .unwrap_err();
        assert_eq!(err, MapError::EmptyLabel);
    }

    #[test]
    fn feature_adds_node_and_two_edges() {
        let mut map = CognitiveMap::new();
        let riders = map.add_customer("riders").unwrap();
        let (cab, _) = map
            .add_problem("find a cab", ClauseKind::Difficulty, ClauseForm::VerbPhrase, &riders)
            .unwrap();
        assert_eq!(
            map.add_feature("book a ride", ClauseForm::VerbPhrase, &cab, Polarity::Decrease),
            Err(MapError::ProductMissing)
        );
        let product = map.set_product("Uber").unwrap();
        let (nodes, edges) = (map.node_count(), map.edge_count());
        let ins = map
            .add_feature("book a ride", ClauseForm::VerbPhrase, &cab, Polarity::Decrease)
            .unwrap();
        assert_eq!(map.node_count(), nodes + 1);
        assert_eq!(map.edge_count(), edges + 2);
        let feas = map.edge(&ins.feasibility).unwrap();
        assert_eq!((feas.kind, &feas.source, &feas.target), (EdgeKind::Feasibility, &product, &ins.node));
        let value = map.edge(&ins.value).unwrap();
        assert_eq!((value.kind, &value.source, &value.target), (EdgeKind::Value, &ins.node, &cab));
        assert_eq!(value.polarity, Some(Polarity::Decrease));

        let err = map
            .add_feature("export data", ClauseForm::VerbPhrase, &riders, Polarity::Increase)
            .unwrap_err();
        assert!(matches!(err, MapError::WrongNodeKind { .. }));
    }

    #[test]
    fn extra_feature_links() {
        let mut map = uber();
        let book = NodeId::from("f1");
        let costs = NodeId::from("b2");
        let e = map.link_feature_to_problem(&book, &costs, Polarity::Decrease).unwrap();
        let edge = map.edge(&e).unwrap();
        assert_eq!((edge.kind, edge.polarity), (EdgeKind::Value, Some(Polarity::Decrease)));
        assert!(matches!(
            map.link_feature_to_problem(&book, &costs, Polarity::Increase),
            Err(MapError::DuplicateEdge { .. })
        ));
        assert!(matches!(
            map.link_feature_to_problem(&book, &NodeId::from("f2"), Polarity::Increase),
            Err(MapError::WrongNodeKind { .. })
        ));
    }

    #[test]
    fn refine_value_edge() {
        let mut map = uber();
        // e4: f1 -> b1 (book a ride -> difficulty to find a cab)
        let edge = EdgeId::from("e4");
        assert_eq!(map.edge(&edge).unwrap().kind, EdgeKind::Value);
        let (nodes, edges) = (map.node_count(), map.edge_count());
        let r = map
            .refine_edge(
                &edge,
                "waiting time at the curb",
                ClauseKind::Difficulty,
                ClauseForm::NounPhrase,
                Polarity::Decrease,
                Some(Polarity::Decrease),
            )
            .unwrap();
        assert_eq!(map.node_count(), nodes + 1);
        assert_eq!(map.edge_count(), edges + 1);
        assert!(map.edge(&edge).is_none());
        assert_eq!(r.node.as_str(), "b3");
        let lower = map.edge(&r.lower).unwrap();
        assert_eq!(
            (lower.kind, lower.source.as_str(), lower.target.as_str(), lower.polarity),
            (EdgeKind::Value, "f1", "b3", Some(Polarity::Decrease))
        );
        let upper = map.edge(&r.upper).unwrap();
        assert_eq!(
            (upper.kind, upper.source.as_str(), upper.target.as_str(), upper.polarity),
            (EdgeKind::Value, "b3", "b1", Some(Polarity::Decrease))
        );
        assert!(map.validate().is_empty());
    }

    #[test]
    fn refine_problem_link() {
        let mut map = uber();
        let edge = EdgeId::from("e1"); // b1 -> c1
        let r = map
            .refine_edge(
                &edge,
                "reach work on time",
                ClauseKind::Desire,
                ClauseForm::VerbPhrase,
                Polarity::Increase,
                None,
            )
            .unwrap();
        let lower = map.edge(&r.lower).unwrap();
        assert_eq!((lower.kind, lower.polarity), (EdgeKind::Value, Some(Polarity::Increase)));
        assert_eq!((lower.source.as_str(), lower.target.as_str()), ("b1", "b3"));
        let upper = map.edge(&r.upper).unwrap();
        assert_eq!((upper.kind, upper.polarity), (EdgeKind::ProblemLink, None));
        assert_eq!((upper.source.as_str(), upper.target.as_str()), ("b3", "c1"));
        assert!(map.validate().is_empty());
    }

    #[test]
    fn refine_errors() {
        let mut map = uber();
        let before = map.clone();
        let concept = |m: &mut CognitiveMap, e: &str, upper| {
            m.refine_edge(
                &EdgeId::from(e),
                "c",
                ClauseKind::Difficulty,
                ClauseForm::NounPhrase,
                Polarity::Increase,
                upper,
            )
        };
        assert_eq!(concept(&mut map, "e3", None), Err(MapError::NotRefinable(EdgeId::from("e3"))));
        assert_eq!(concept(&mut map, "e99", None), Err(MapError::UnknownEdge(EdgeId::from("e99"))));
        assert!(matches!(concept(&mut map, "e4", None), Err(MapError::PolarityMismatch { .. })));
        assert!(matches!(
            concept(&mut map, "e1", Some(Polarity::Neutral)),
            Err(MapError::PolarityMismatch { .. })
        ));
        assert_eq!(map, before);
    }

    #[test]
    fn edge_ids_are_not_reused_after_refinement() {
        let mut map = uber();
        map.refine_edge(
            &EdgeId::from("e6"),
            "splitting costs",
            ClauseKind::Desire,
            ClauseForm::NounPhrase,
            Polarity::Increase,
            Some(Polarity::Decrease),
        )
        .unwrap();
        let ids: Vec<&str> = map.edges().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["e1", "e2", "e3", "e4", "e5", "e7", "e8"]);
    }
}
