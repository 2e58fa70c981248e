//! Core of the digital mentor: the layered cognitive map, hypothesis
//! rendering, utterance parsing and the interview state machine.

pub mod dialogue;
pub mod hypothesis;
pub mod map;
pub mod nlu;

pub use dialogue::{
    admissible_intents, clarification_for, prompt_for, DialogueError, DialogueSession, DialogueState,
    Engine, EngineConfig, TurnResult,
};
pub use hypothesis::{hypotheses_for, Hypothesis, HypothesisError, HypothesisKind};
pub use map::{
    ClauseForm, ClauseKind, CognitiveMap, EdgeId, EdgeKind, MapEdge, MapError, MapNode, NodeId,
    NodeKind, NodeRole, Polarity, Violation,
};
pub use nlu::{IntentKind, Nlu, ParseResult};
