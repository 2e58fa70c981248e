use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::{CognitiveMap, EdgeKind, NodeId, NodeKind};

/// A structural problem reported by [`CognitiveMap::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ProductMissing,
    NoCustomers,
    FeatureWithoutFeasibility(NodeId),
    FeatureWithoutValue(NodeId),
    ProblemWithoutCustomer(NodeId),
    CycleDetected,
    OrphanNode(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ProductMissing => f.write_str("product missing"),
            Violation::NoCustomers => f.write_str("no customers"),
            Violation::FeatureWithoutFeasibility(id) => {
                write!(f, "feature without feasibility edge: {id}")
            }
            Violation::FeatureWithoutValue(id) => write!(f, "feature without value edge: {id}"),
            Violation::ProblemWithoutCustomer(id) => {
                write!(f, "problem without path to a customer: {id}")
            }
            Violation::CycleDetected => f.write_str("cycle detected"),
            Violation::OrphanNode(id) => write!(f, "orphan node: {id}"),
        }
    }
}

pub(super) fn validate(map: &CognitiveMap) -> Vec<Violation> {
    let mut out = Vec::new();
    if map.product.is_none() {
        out.push(Violation::ProductMissing);
    }
    if map.nodes_of_kind(NodeKind::Customer).next().is_none() {
        out.push(Violation::NoCustomers);
    }

    for feature in map.nodes_of_kind(NodeKind::Feature) {
        let feasible = map
            .incoming(&feature.id)
            .any(|e| e.kind == EdgeKind::Feasibility);
        if !feasible {
            out.push(Violation::FeatureWithoutFeasibility(feature.id.clone()));
        }
        if !map.outgoing(&feature.id).any(|e| e.kind == EdgeKind::Value) {
            out.push(Violation::FeatureWithoutValue(feature.id.clone()));
        }
    }

    let reaching = nodes_reaching_customers(map);
    for problem in map.nodes_of_kind(NodeKind::Problem) {
        if !reaching.contains(&problem.id) {
            out.push(Violation::ProblemWithoutCustomer(problem.id.clone()));
        }
    }

    if has_cycle(map) {
        out.push(Violation::CycleDetected);
    }

    // features are covered by the two feature rules above
    for node in map.nodes().filter(|n| n.kind() != NodeKind::Feature) {
        let touched = map
            .edges()
            .any(|e| e.source == node.id || e.target == node.id);
        if !touched {
            out.push(Violation::OrphanNode(node.id.clone()));
        }
    }
    out
}

/// Reverse BFS from every customer along edge direction.
fn nodes_reaching_customers(map: &CognitiveMap) -> BTreeSet<NodeId> {
    let mut seen: BTreeSet<NodeId> = map
        .nodes_of_kind(NodeKind::Customer)
        .map(|n| n.id.clone())
        .collect();
    let mut queue: VecDeque<NodeId> = seen.iter().cloned().collect();
    while let Some(id) = queue.pop_front() {
        for edge in map.incoming(&id) {
            if seen.insert(edge.source.clone()) {
                queue.push_back(edge.source.clone());
            }
        }
    }
    seen
}

/// Kahn's algorithm; any node left with positive in-degree sits on a cycle.
fn has_cycle(map: &CognitiveMap) -> bool {
    let mut indegree: BTreeMap<&NodeId, usize> = map.nodes.keys().map(|id| (id, 0)).collect();
    for edge in map.edges() {
        if let Some(d) = indegree.get_mut(&edge.target) {
            *d += 1;
        }
    }
    let mut ready: Vec<&NodeId> = indegree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(id, _)| *id)
        .collect();
    let mut visited = 0;
    while let Some(id) = ready.pop() {
        visited += 1;
        for edge in map.outgoing(id) {
            if let Some(d) = indegree.get_mut(&edge.target) {
                *d -= 1;
                if *d == 0 {
                    ready.push(&edge.target);
                }
            }
        }
    }
    visited < indegree.len()
}
