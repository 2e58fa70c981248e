//! Questions and help texts, one per interview state.

use super::DialogueState;
use crate::hypothesis::problem_label;
use crate::map::{CognitiveMap, EdgeId, NodeId, NodeKind};

pub const GREETING: &str =
    "Hi, I am your digital mentor. Let's map the hypotheses behind your product, one question at a time.";

fn label(map: &CognitiveMap, id: &NodeId) -> String {
    map.node(id).map_or_else(|| id.to_string(), |n| n.display_label())
}

fn product(map: &CognitiveMap) -> String {
    map.product().map_or_else(|| "your product".to_owned(), |p| p.clause_text.clone())
}

fn edge_ends(map: &CognitiveMap, edge: &EdgeId) -> (String, String) {
    match map.edge(edge) {
        Some(e) => (label(map, &e.source), label(map, &e.target)),
        None => (edge.to_string(), edge.to_string()),
    }
}

/// Problems in the order they are listed when asking for a feature target.
pub fn problem_choices(map: &CognitiveMap) -> Vec<(NodeId, String)> {
    map.nodes_of_kind(NodeKind::Problem).map(|n| (n.id.clone(), n.display_label())).collect()
}

/// The question asked in `state`. Terminal states get a closing line instead.
pub fn prompt_for(state: &DialogueState, map: &CognitiveMap) -> String {
    use DialogueState::*;
    match state {
        AskProduct => "What is the product name?".to_owned(),
        AskCustomer => {
            if map.nodes_of_kind(NodeKind::Customer).next().is_none() {
                format!("What are the customers targeted by {}?", product(map))
            } else {
                "Who is another customer?".to_owned()
            }
        }
        MoreCustomers => "Do you want to add another customer? (yes/no)".to_owned(),
        AskProblem { customer } => {
            format!("Why would {} want to use {}?", label(map, customer), product(map))
        }
        MoreProblems { customer } => format!(
            "Do you want to add another reason why {} would use {}? (yes/no)",
            label(map, customer),
            product(map)
        ),
        AskFeature => format!("Which feature do you plan for {}?", product(map)),
        AskFeatureTarget { feature, .. } => {
            let mut out = format!("Which of these aspects does {feature} fulfill?");
            for (i, (_, text)) in problem_choices(map).iter().enumerate() {
                out.push_str(&format!("\n{}. {text}", i + 1));
            }
            out
        }
        AskPolarity { feature, problem, .. } => format!(
            "Does {feature} increase, decrease, or not affect {}?",
            label(map, problem)
        ),
        MoreFeatures => "Do you want to add another feature? (yes/no)".to_owned(),
        AskRefine { edge } => {
            let (source, target) = edge_ends(map, edge);
            format!(
                "Is there any underlying concept that explains the relationship between {source} and {target}?"
            )
        }
        AskRefineConcept { edge } => {
            let (source, target) = edge_ends(map, edge);
            format!("What is the concept that connects {source} and {target}?")
        }
        AskRefineLowerPolarity { edge, concept, kind, form } => {
            let (source, _) = edge_ends(map, edge);
            format!(
                "Does {source} increase, decrease, or not affect {}?",
                problem_label(*kind, *form, concept)
            )
        }
        AskRefineUpperPolarity { edge, concept, kind, form, .. } => {
            let (_, target) = edge_ends(map, edge);
            format!(
                "Does {} increase, decrease, or not affect {target}?",
                problem_label(*kind, *form, concept)
            )
        }
        Summary | Done => "The interview is over.".to_owned(),
    }
}

/// Fixed help text for `state`, shown when the founder asks for help or
/// the answer could not be understood.
pub fn clarification_for(state: &DialogueState) -> &'static str {
    use DialogueState::*;
    match state {
        AskProduct => "Tell me the product name, for example \"Uber\". A short name is enough.",
        AskCustomer => {
            "Customers are the people or organizations the product is for, for example \"riders\". Name one group at a time."
        }
        MoreCustomers => "Answer yes to name another customer group, or no to move on to their problems.",
        AskProblem { .. } => {
            "Describe one desire or difficulty of this customer that the product addresses. A desire is something they want, like \"they want to take a ride\"; a difficulty is something that gets in their way, like \"it is hard to find a cab\"."
        }
        MoreProblems { .. } => {
            "Answer yes to add another desire or difficulty for this customer, or no to move on."
        }
        AskFeature => {
            "A feature is something the product will do for its customers, for example \"book a ride\" or \"the app allows users to split the fare\"."
        }
        AskFeatureTarget { .. } => {
            "Answer with the number of an aspect from the list, or with the first words of its label."
        }
        AskPolarity { .. } | AskRefineLowerPolarity { .. } | AskRefineUpperPolarity { .. } => {
            "Answer \"increase\" (+) if the first element strengthens the second, \"decrease\" (-) if it weakens it, or \"not affect\" (/o/) if it makes no difference."
        }
        MoreFeatures => "Answer yes to describe another feature, or no to review the links between the elements.",
        AskRefine { .. } => {
            "An underlying concept is an intermediate desire or difficulty that explains why one element influences the other. Answer yes to add one, or no to keep the link as it is."
        }
        AskRefineConcept { .. } => {
            "Describe the intermediate desire or difficulty, for example \"they want to save money\" or \"long waiting times\"."
        }
        Summary | Done => "The interview is over.",
    }
}
