use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// What an utterance is doing in the interview.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntentKind {
    ProductName,
    CustomerDescription,
    DesireDescription,
    DifficultyDescription,
    FeatureDescription,
    TargetReference,
    PolarityAnswer,
    Affirm,
    Deny,
    HelpRequest,
    Stop,
}

pub type IntentSet = BTreeSet<IntentKind>;

impl IntentKind {
    pub const ALL: [IntentKind; 11] = [
        IntentKind::ProductName,
        IntentKind::CustomerDescription,
        IntentKind::DesireDescription,
        IntentKind::DifficultyDescription,
        IntentKind::FeatureDescription,
        IntentKind::TargetReference,
        IntentKind::PolarityAnswer,
        IntentKind::Affirm,
        IntentKind::Deny,
        IntentKind::HelpRequest,
        IntentKind::Stop,
    ];

    /// Intents that carry a clause destined for the map.
    pub fn is_content(self) -> bool {
        matches!(
            self,
            IntentKind::ProductName
                | IntentKind::CustomerDescription
                | IntentKind::DesireDescription
                | IntentKind::DifficultyDescription
                | IntentKind::FeatureDescription
                | IntentKind::TargetReference
        )
    }

    /// Admissible in every state.
    pub fn is_global(self) -> bool {
        matches!(self, IntentKind::HelpRequest | IntentKind::Stop)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntentKind::ProductName => "product_name",
            IntentKind::CustomerDescription => "customer_description",
            IntentKind::DesireDescription => "desire_description",
            IntentKind::DifficultyDescription => "difficulty_description",
            IntentKind::FeatureDescription => "feature_description",
            IntentKind::TargetReference => "target_reference",
            IntentKind::PolarityAnswer => "polarity_answer",
            IntentKind::Affirm => "affirm",
            IntentKind::Deny => "deny",
            IntentKind::HelpRequest => "help_request",
            IntentKind::Stop => "stop",
        }
    }

    pub fn all() -> IntentSet {
        Self::ALL.into_iter().collect()
    }
}

impl fmt::Display for IntentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IntentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|i| i.as_str() == s)
            .ok_or_else(|| format!("unknown intent {s:?}"))
    }
}
