//! Turns map edges into testable hypothesis statements.
//!
//! Three sentence templates, one per edge kind:
//!
//! | edge         | statement                                                        |
//! |--------------|------------------------------------------------------------------|
//! | feasibility  | The team developing {product} is capable of implementing {feature}. |
//! | value        | {Feature or problem} increases / decreases / does not affect {problem}. |
//! | problem link | {Customer} has / would like (to) {problem}.                       |
//!
//! Template verbs are emitted verbatim; there is no subject-verb agreement.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::map::{
    ClauseForm, ClauseKind, CognitiveMap, EdgeId, EdgeKind, MapEdge, MapNode, NodeRole, Polarity,
    Violation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisKind {
    Feasibility,
    Value,
    Problem,
}

impl HypothesisKind {
    pub fn for_edge(kind: EdgeKind) -> Self {
        match kind {
            EdgeKind::Feasibility => HypothesisKind::Feasibility,
            EdgeKind::Value => HypothesisKind::Value,
            EdgeKind::ProblemLink => HypothesisKind::Problem,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            HypothesisKind::Feasibility => "Feasibility",
            HypothesisKind::Value => "Value",
            HypothesisKind::Problem => "Problem",
        }
    }
}

impl fmt::Display for HypothesisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypothesisKind::Feasibility => "feasibility",
            HypothesisKind::Value => "value",
            HypothesisKind::Problem => "problem",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub kind: HypothesisKind,
    pub statement: String,
    pub edge: EdgeId,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypothesisError {
    #[error("map is not valid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidMap(Vec<Violation>),
}

pub fn polarity_verb(polarity: Polarity) -> &'static str {
    match polarity {
        Polarity::Increase => "increases",
        Polarity::Decrease => "decreases",
        Polarity::Neutral => "does not affect",
    }
}

fn capitalize(text: &str) -> String {
    let mut chars = text.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Noun-phrase label of a problem concept, as drawn on the map.
pub(crate) fn problem_label(kind: ClauseKind, form: ClauseForm, clause: &str) -> String {
    match (kind, form) {
        (ClauseKind::Difficulty, ClauseForm::VerbPhrase) => format!("difficulty to {clause}"),
        (ClauseKind::Difficulty, ClauseForm::NounPhrase) => clause.to_owned(),
        (ClauseKind::Desire, ClauseForm::VerbPhrase) => format!("desire to {clause}"),
        (ClauseKind::Desire, ClauseForm::NounPhrase) => format!("desire for {clause}"),
    }
}

/// Noun phrase for a problem node inside a sentence. Desires get a leading
/// article ("the desire to take a ride").
///
/// Non-problem nodes are returned verbatim.
pub fn realize_problem_np(problem: &MapNode) -> String {
    match problem.role {
        NodeRole::Problem { kind: ClauseKind::Desire, form } => {
            format!("the {}", problem_label(ClauseKind::Desire, form, &problem.clause_text))
        }
        NodeRole::Problem { kind, form } => problem_label(kind, form, &problem.clause_text),
        _ => problem.clause_text.clone(),
    }
}

pub fn render_feasibility(product: &MapNode, feature: &MapNode) -> String {
    format!(
        "The team developing {} is capable of implementing {}.",
        product.clause_text, feature.clause_text
    )
}

pub fn render_value(source: &MapNode, polarity: Polarity, target: &MapNode) -> String {
    let subject = match source.role {
        NodeRole::Problem { .. } => realize_problem_np(source),
        _ => source.clause_text.clone(),
    };
    capitalize(&format!(
        "{subject} {} {}.",
        polarity_verb(polarity),
        realize_problem_np(target)
    ))
}

pub fn render_problem(customer: &MapNode, problem: &MapNode) -> String {
    let customer = &customer.clause_text;
    let clause = &problem.clause_text;
    let sentence = match problem.role {
        NodeRole::Problem { kind: ClauseKind::Difficulty, form: ClauseForm::VerbPhrase } => {
            format!("{customer} has difficulty to {clause}.")
        }
        NodeRole::Problem { kind: ClauseKind::Desire, form: ClauseForm::VerbPhrase } => {
            format!("{customer} would like to {clause}.")
        }
        NodeRole::Problem { kind: ClauseKind::Desire, form: ClauseForm::NounPhrase } => {
            format!("{customer} would like {clause}.")
        }
        _ => format!("{customer} has {clause}."),
    };
    capitalize(&sentence)
}

/// Renders the hypothesis for a single edge of `map`.
///
/// Panics if an endpoint is missing, which the map's own operations never
/// allow.
pub fn hypothesis_for_edge(map: &CognitiveMap, edge: &MapEdge) -> Hypothesis {
    let node = |id| map.node(id).expect("edge endpoints exist");
    let (source, target) = (node(&edge.source), node(&edge.target));
    let statement = match edge.kind {
        EdgeKind::Feasibility => render_feasibility(source, target),
        EdgeKind::Value => render_value(
            source,
            edge.polarity.expect("value edges carry a polarity"),
            target,
        ),
        EdgeKind::ProblemLink => render_problem(target, source),
    };
    Hypothesis { kind: HypothesisKind::for_edge(edge.kind), statement, edge: edge.id.clone() }
}

/// One hypothesis per edge, in edge id order, without checking the map's
/// overall structure. Used for partial maps when an interview ends early.
pub fn render_all(map: &CognitiveMap) -> Vec<Hypothesis> {
    map.edges().map(|e| hypothesis_for_edge(map, e)).collect()
}

/// One hypothesis per edge of a structurally valid map, in edge id order.
pub fn hypotheses_for(map: &CognitiveMap) -> Result<Vec<Hypothesis>, HypothesisError> {
    let violations = map.validate();
    if !violations.is_empty() {
        return Err(HypothesisError::InvalidMap(violations));
    }
    Ok(render_all(map))
}

/// Markdown report grouped by hypothesis kind.
pub fn to_markdown(product: Option<&str>, hypotheses: &[Hypothesis]) -> String {
    let mut out = match product {
        Some(p) => format!("# Hypotheses for {p}\n"),
        None => "# Hypotheses\n".to_owned(),
    };
    for kind in [HypothesisKind::Feasibility, HypothesisKind::Value, HypothesisKind::Problem] {
        out.push_str(&format!("\n## {} hypotheses\n\n", kind.title()));
        let mut any = false;
        for h in hypotheses.iter().filter(|h| h.kind == kind) {
            out.push_str(&format!("- {} ({})\n", h.statement, h.edge));
            any = true;
        }
        if !any {
            out.push_str("_None._\n");
        }
    }
    out
}
