//! The interview as a finite state machine. Every answer is parsed against
//! the intents the current state admits, may mutate the map, and moves the
//! session to the state whose question is asked next.

mod prompts;
mod script;
mod target;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use prompts::{clarification_for, problem_choices, prompt_for, GREETING};
pub use script::{parse_script, ScriptError, UBER_SCRIPT};
pub use target::resolve as resolve_target;

use crate::hypothesis::{render_all, Hypothesis};
use crate::map::{ClauseForm, ClauseKind, CognitiveMap, EdgeId, EdgeKind, NodeId, NodeKind, Polarity};
use crate::nlu::{IntentKind, IntentSet, Nlu, ParseResult, DEFAULT_THRESHOLD};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum DialogueState {
    AskProduct,
    AskCustomer,
    MoreCustomers,
    AskProblem { customer: NodeId },
    MoreProblems { customer: NodeId },
    AskFeature,
    /// The feature text is staged until its target and polarity are known.
    AskFeatureTarget { feature: String, form: ClauseForm },
    AskPolarity { feature: String, form: ClauseForm, problem: NodeId },
    MoreFeatures,
    AskRefine { edge: EdgeId },
    AskRefineConcept { edge: EdgeId },
    AskRefineLowerPolarity { edge: EdgeId, concept: String, kind: ClauseKind, form: ClauseForm },
    AskRefineUpperPolarity {
        edge: EdgeId,
        concept: String,
        kind: ClauseKind,
        form: ClauseForm,
        lower: Polarity,
    },
    Summary,
    Done,
}

impl DialogueState {
    /// Snake-case state name, as used on the wire.
    pub fn name(&self) -> &'static str {
        use DialogueState::*;
        match self {
            AskProduct => "ask_product",
            AskCustomer => "ask_customer",
            MoreCustomers => "more_customers",
            AskProblem { .. } => "ask_problem",
            MoreProblems { .. } => "more_problems",
            AskFeature => "ask_feature",
            AskFeatureTarget { .. } => "ask_feature_target",
            AskPolarity { .. } => "ask_polarity",
            MoreFeatures => "more_features",
            AskRefine { .. } => "ask_refine",
            AskRefineConcept { .. } => "ask_refine_concept",
            AskRefineLowerPolarity { .. } => "ask_refine_lower_polarity",
            AskRefineUpperPolarity { .. } => "ask_refine_upper_polarity",
            Summary => "summary",
            Done => "done",
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, DialogueState::Summary | DialogueState::Done)
    }
}

/// Intents an answer may resolve to in `state`. Help and stop are added to
/// every non-terminal state.
pub fn admissible_intents(state: &DialogueState) -> IntentSet {
    use DialogueState::*;
    use IntentKind::*;
    let specific: &[IntentKind] = match state {
        AskProduct => &[ProductName],
        AskCustomer => &[CustomerDescription],
        MoreCustomers | MoreProblems { .. } | MoreFeatures | AskRefine { .. } => &[Affirm, Deny],
        AskProblem { .. } | AskRefineConcept { .. } => &[DesireDescription, DifficultyDescription],
        AskFeature => &[FeatureDescription],
        AskFeatureTarget { .. } => &[TargetReference],
        AskPolarity { .. } | AskRefineLowerPolarity { .. } | AskRefineUpperPolarity { .. } => {
            &[PolarityAnswer]
        }
        Summary | Done => return IntentSet::new(),
    };
    specific.iter().copied().chain([HelpRequest, Stop]).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// How many generations of refinement a single original link may go
    /// through; 0 skips the refinement questions entirely.
    pub max_refinement_rounds: u32,
    /// Parses below this confidence are answered with a clarification.
    pub clarification_threshold: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { max_refinement_rounds: 5, clarification_threshold: DEFAULT_THRESHOLD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Speaker {
    User,
    Bot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub speaker: Speaker,
    pub text: String,
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TurnResult {
    pub replies: Vec<String>,
    pub state: DialogueState,
    pub map: CognitiveMap,
    /// Present once the interview has reached its summary.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<Vec<Hypothesis>>,
    pub done: bool,
    /// How the last answer was understood; absent for the opening turn.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse: Option<ParseResult>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DialogueError {
    #[error("the interview has already finished")]
    SessionDone,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DialogueSession {
    id: String,
    config: EngineConfig,
    state: DialogueState,
    map: CognitiveMap,
    refinement_queue: VecDeque<EdgeId>,
    asked_refinements: BTreeSet<EdgeId>,
    /// Refinement generation of every edge that entered the queue.
    rounds: BTreeMap<EdgeId, u32>,
    transcript: Vec<TranscriptEntry>,
}

pub fn now_millis() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

impl DialogueSession {
    /// A fresh session whose opening greeting and first question are
    /// already in the transcript.
    pub fn new(id: impl Into<String>, config: EngineConfig, timestamp: u64) -> Self {
        let mut session = Self {
            id: id.into(),
            config,
            state: DialogueState::AskProduct,
            map: CognitiveMap::new(),
            refinement_queue: VecDeque::new(),
            asked_refinements: BTreeSet::new(),
            rounds: BTreeMap::new(),
            transcript: Vec::new(),
        };
        let opening = [GREETING.to_owned(), prompt_for(&session.state, &session.map)];
        session.record_bot(&opening, timestamp);
        session
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn state(&self) -> &DialogueState {
        &self.state
    }

    pub fn map(&self) -> &CognitiveMap {
        &self.map
    }

    pub fn refinement_queue(&self) -> impl Iterator<Item = &EdgeId> {
        self.refinement_queue.iter()
    }

    pub fn asked_refinements(&self) -> &BTreeSet<EdgeId> {
        &self.asked_refinements
    }

    pub fn transcript(&self) -> &[TranscriptEntry] {
        &self.transcript
    }

    pub fn is_done(&self) -> bool {
        self.state == DialogueState::Done
    }

    /// Bot lines sent before the founder's first answer.
    pub fn opening_replies(&self) -> Vec<String> {
        self.transcript
            .iter()
            .take_while(|e| e.speaker == Speaker::Bot)
            .map(|e| e.text.clone())
            .collect()
    }

    /// Hypotheses for the map as it stands, once the summary is reached.
    pub fn hypotheses(&self) -> Option<Vec<Hypothesis>> {
        self.state.is_terminal().then(|| render_all(&self.map))
    }

    /// Turn result describing the session as it is now.
    pub fn snapshot(&self, replies: Vec<String>, parse: Option<ParseResult>) -> TurnResult {
        TurnResult {
            replies,
            state: self.state.clone(),
            map: self.map.clone(),
            hypotheses: self.hypotheses(),
            done: self.is_done(),
            parse,
        }
    }

    fn record_bot(&mut self, replies: &[String], timestamp: u64) {
        for text in replies {
            self.transcript.push(TranscriptEntry { speaker: Speaker::Bot, text: text.clone(), timestamp });
        }
    }

    fn ask(&self) -> String {
        prompt_for(&self.state, &self.map)
    }

    fn customers(&self) -> Vec<NodeId> {
        self.map.nodes_of_kind(NodeKind::Customer).map(|n| n.id.clone()).collect()
    }

    fn label(&self, id: &NodeId) -> String {
        self.map.node(id).map_or_else(|| id.to_string(), |n| n.display_label())
    }

    /// Moves to the next queued link, or to the summary when none is left.
    fn next_refinement(&mut self) {
        match self.refinement_queue.pop_front() {
            Some(edge) => {
                self.asked_refinements.insert(edge.clone());
                self.state = DialogueState::AskRefine { edge };
            }
            None => self.state = DialogueState::Summary,
        }
    }

    fn enqueue(&mut self, edge: EdgeId, round: u32) {
        if round < self.config.max_refinement_rounds
            && !self.asked_refinements.contains(&edge)
            && !self.refinement_queue.contains(&edge)
        {
            self.rounds.insert(edge.clone(), round);
            self.refinement_queue.push_back(edge);
        }
    }

    fn seed_refinements(&mut self) {
        let links: Vec<EdgeId> = self
            .map
            .edges()
            .filter(|e| matches!(e.kind, EdgeKind::Value | EdgeKind::ProblemLink))
            .map(|e| e.id.clone())
            .collect();
        for edge in links {
            self.enqueue(edge, 0);
        }
        self.next_refinement();
    }

    fn refine(&mut self, edge: &EdgeId, concept: &str, kind: ClauseKind, form: ClauseForm, lower: Polarity, upper: Option<Polarity>) -> Result<(), String> {
        let refinement = self
            .map
            .refine_edge(edge, concept, kind, form, lower, upper)
            .map_err(|e| format!("I could not add that concept: {e}."))?;
        let round = self.rounds.get(edge).copied().unwrap_or(0) + 1;
        self.enqueue(refinement.lower, round);
        self.enqueue(refinement.upper, round);
        self.next_refinement();
        Ok(())
    }

    /// Applies a content or yes/no answer. Returns notes to show before the
    /// next question; the state is left unchanged when the answer is refused.
    fn advance(&mut self, parse: &ParseResult) -> Vec<String> {
        use DialogueState::*;
        use IntentKind::*;
        let clause = parse.clause.as_ref();
        let clause_kind = match parse.intent {
            DesireDescription => Some(ClauseKind::Desire),
            DifficultyDescription => Some(ClauseKind::Difficulty),
            _ => None,
        };
        let refuse = |note: String| vec![note];

        match (self.state.clone(), parse.intent) {
            (AskProduct, ProductName) => {
                let text = clause.map_or("", |c| c.text.as_str());
                if let Err(e) = self.map.set_product(text) {
                    return refuse(format!("I could not use that name: {e}."));
                }
                self.state = AskCustomer;
            }
            (AskCustomer, CustomerDescription) => {
                let text = clause.map_or("", |c| c.text.as_str());
                if let Err(e) = self.map.add_customer(text) {
                    return refuse(format!("I could not add that customer: {e}."));
                }
                self.state = MoreCustomers;
            }
            (MoreCustomers, Affirm) => self.state = AskCustomer,
            (MoreCustomers, Deny) => {
                let first = self.customers().into_iter().next().expect("a customer was added");
                self.state = AskProblem { customer: first };
            }
            (AskProblem { customer }, DesireDescription | DifficultyDescription) => {
                let (Some(c), Some(kind)) = (clause, clause_kind) else {
                    return Vec::new();
                };
                if let Err(e) = self.map.add_problem(&c.text, kind, c.form, &customer) {
                    return refuse(format!("I could not add that: {e}."));
                }
                self.state = MoreProblems { customer };
            }
            (MoreProblems { customer }, Affirm) => self.state = AskProblem { customer },
            (MoreProblems { customer }, Deny) => {
                let customers = self.customers();
                let next = customers.iter().skip_while(|c| **c != customer).nth(1).cloned();
                self.state = match next {
                    Some(customer) => AskProblem { customer },
                    None => AskFeature,
                };
            }
            (AskFeature, FeatureDescription) => {
                let Some(c) = clause else {
                    return Vec::new();
                };
                self.state = AskFeatureTarget { feature: c.text.clone(), form: c.form };
            }
            (AskFeatureTarget { feature, form }, TargetReference) => {
                let text = clause.map_or("", |c| c.text.as_str());
                let Some(problem) = target::resolve(text, &problem_choices(&self.map)) else {
                    return refuse("I could not tell which aspect you mean.".to_owned());
                };
                let existing = self.map.find_by_label(NodeKind::Feature, &feature).map(|n| n.id.clone());
                if let Some(id) = existing {
                    let linked = self
                        .map
                        .outgoing(&id)
                        .any(|e| e.kind == EdgeKind::Value && e.target == problem);
                    if linked {
                        return refuse(format!(
                            "{feature} is already linked to {}.",
                            self.label(&problem)
                        ));
                    }
                }
                self.state = AskPolarity { feature, form, problem };
            }
            (AskPolarity { feature, form, problem }, PolarityAnswer) => {
                let Some(polarity) = parse.polarity else {
                    return Vec::new();
                };
                let existing = self.map.find_by_label(NodeKind::Feature, &feature).map(|n| n.id.clone());
                let result = match existing {
                    Some(id) => self.map.link_feature_to_problem(&id, &problem, polarity).map(drop),
                    None => self.map.add_feature(&feature, form, &problem, polarity).map(drop),
                };
                if let Err(e) = result {
                    return refuse(format!("I could not add that feature: {e}."));
                }
                self.state = MoreFeatures;
            }
            (MoreFeatures, Affirm) => self.state = AskFeature,
            (MoreFeatures, Deny) => self.seed_refinements(),
            (AskRefine { edge }, Affirm) => self.state = AskRefineConcept { edge },
            (AskRefine { .. }, Deny) => self.next_refinement(),
            (AskRefineConcept { edge }, DesireDescription | DifficultyDescription) => {
                let (Some(c), Some(kind)) = (clause, clause_kind) else {
                    return Vec::new();
                };
                self.state =
                    AskRefineLowerPolarity { edge, concept: c.text.clone(), kind, form: c.form };
            }
            (AskRefineLowerPolarity { edge, concept, kind, form }, PolarityAnswer) => {
                let Some(lower) = parse.polarity else {
                    return Vec::new();
                };
                let is_value = self.map.edge(&edge).is_some_and(|e| e.kind == EdgeKind::Value);
                if is_value {
                    self.state = AskRefineUpperPolarity { edge, concept, kind, form, lower };
                } else if let Err(note) = self.refine(&edge, &concept, kind, form, lower, None) {
                    return refuse(note);
                }
            }
            (AskRefineUpperPolarity { edge, concept, kind, form, lower }, PolarityAnswer) => {
                let Some(upper) = parse.polarity else {
                    return Vec::new();
                };
                if let Err(note) = self.refine(&edge, &concept, kind, form, lower, Some(upper)) {
                    return refuse(note);
                }
            }
            _ => return vec![clarification_for(&self.state).to_owned()],
        }
        Vec::new()
    }

    /// Closing lines listing the hypotheses of the map as it stands.
    fn summary(&self, stopped: bool) -> String {
        let hypotheses = render_all(&self.map);
        let opening = if stopped {
            "Stopping the interview here."
        } else {
            "Thanks, that completes the interview."
        };
        if hypotheses.is_empty() {
            return format!("{opening} The map has no hypotheses yet.");
        }
        let product = self.map.product().map_or("your product", |p| p.clause_text.as_str());
        let mut out = format!("{opening} These are the hypotheses behind {product}:");
        for (i, h) in hypotheses.iter().enumerate() {
            out.push_str(&format!("\n{}. {}", i + 1, h.statement));
        }
        out
    }
}

/// Runs interview turns. The parser is shared read-only between sessions.
#[derive(Debug, Clone)]
pub struct Engine {
    nlu: Arc<Nlu>,
}

impl Engine {
    pub fn new(nlu: Arc<Nlu>) -> Self {
        Self { nlu }
    }

    /// Engine backed by a parser trained on the bundled seed corpus.
    pub fn seeded() -> Self {
        Self::new(Arc::new(Nlu::seed()))
    }

    pub fn nlu(&self) -> &Nlu {
        &self.nlu
    }

    /// A new session with a random id, opened now.
    pub fn new_session(&self, config: EngineConfig) -> DialogueSession {
        DialogueSession::new(uuid::Uuid::new_v4().to_string(), config, now_millis())
    }

    pub fn handle(&self, session: &mut DialogueSession, text: &str) -> Result<TurnResult, DialogueError> {
        self.handle_at(session, text, now_millis())
    }

    /// One founder turn, stamped with `timestamp`. Replaying the same texts
    /// and timestamps on a fresh session reproduces it exactly.
    pub fn handle_at(
        &self,
        session: &mut DialogueSession,
        text: &str,
        timestamp: u64,
    ) -> Result<TurnResult, DialogueError> {
        if session.state.is_terminal() {
            return Err(DialogueError::SessionDone);
        }
        session.transcript.push(TranscriptEntry {
            speaker: Speaker::User,
            text: text.to_owned(),
            timestamp,
        });
        let admissible = admissible_intents(&session.state);
        let parse = self
            .nlu
            .classify(text, &admissible, session.config.clarification_threshold)
            .expect("non-terminal states admit intents");

        let mut replies = match parse.intent {
            IntentKind::HelpRequest => {
                let mut help = clarification_for(&session.state).to_owned();
                if parse.matched_rule.is_some_and(|r| r != "control_help") {
                    help = format!("Sorry, I did not quite get that. {help}");
                }
                vec![help]
            }
            IntentKind::Stop => {
                session.state = DialogueState::Summary;
                Vec::new()
            }
            _ => session.advance(&parse),
        };
        if session.state == DialogueState::Summary {
            replies.push(session.summary(parse.intent == IntentKind::Stop));
            session.state = DialogueState::Done;
        } else {
            replies.push(session.ask());
        }
        session.record_bot(&replies, timestamp);
        Ok(session.snapshot(replies, Some(parse)))
    }

    /// Rebuilds a session from its founder turns.
    pub fn replay<'a>(
        &self,
        id: impl Into<String>,
        config: EngineConfig,
        opened_at: u64,
        turns: impl IntoIterator<Item = (&'a str, u64)>,
    ) -> Result<DialogueSession, DialogueError> {
        let mut session = DialogueSession::new(id, config, opened_at);
        for (text, timestamp) in turns {
            self.handle_at(&mut session, text, timestamp)?;
        }
        Ok(session)
    }
}
