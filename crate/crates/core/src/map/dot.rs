use std::fmt::Write;

use super::{CognitiveMap, EdgeKind, MapNode, NodeKind};

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out
}

fn node_statement(node: &MapNode) -> String {
    let shape = match node.kind() {
        NodeKind::Product => "shape=ellipse",
        NodeKind::Customer => "shape=circle",
        NodeKind::Problem => "shape=box",
        NodeKind::Feature => "shape=box, style=dashed",
    };
    format!("{} [label=\"{}\", {shape}];", node.id, escape(&node.display_label()))
}

/// Graphviz rendering laid out bottom-to-top: product at the bottom,
/// customers at the top, value edges labelled with their polarity symbol.
pub(super) fn to_dot(map: &CognitiveMap) -> String {
    let mut out = String::from("digraph hymap {\n    rankdir=BT;\n");

    let layers = [
        (NodeKind::Customer, Some("sink")),
        (NodeKind::Problem, None),
        (NodeKind::Feature, Some("same")),
        (NodeKind::Product, Some("source")),
    ];
    for (kind, rank) in layers {
        let nodes: Vec<&MapNode> = map.nodes_of_kind(kind).collect();
        if nodes.is_empty() {
            continue;
        }
        match rank {
            Some(rank) => {
                writeln!(out, "    {{").unwrap();
                writeln!(out, "        rank={rank};").unwrap();
                for node in nodes {
                    writeln!(out, "        {}", node_statement(node)).unwrap();
                }
                writeln!(out, "    }}").unwrap();
            }
            // problem boxes may span several layers, leave them to the ranker
            None => {
                for node in nodes {
                    writeln!(out, "    {}", node_statement(node)).unwrap();
                }
            }
        }
    }

    for edge in map.edges() {
        match (edge.kind, edge.polarity) {
            (EdgeKind::Value, Some(p)) => writeln!(
                out,
                "    {} -> {} [label=\"{}\"];",
                edge.source,
                edge.target,
                escape(p.symbol())
            ),
            _ => writeln!(out, "    {} -> {};", edge.source, edge.target),
        }
        .unwrap();
    }
    out.push_str("}\n");
    out
}
