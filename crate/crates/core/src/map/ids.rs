use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Splits an id like `"b12"` into its alphabetic prefix and numeric suffix so
/// that `b2` sorts before `b10`.
fn id_key(id: &str) -> (&str, Option<u64>) {
    let split = id
        .char_indices()
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i)
        .unwrap_or(id.len());
    let (prefix, digits) = id.split_at(split);
    (prefix, digits.parse().ok())
}

fn natural_cmp(a: &str, b: &str) -> Ordering {
    id_key(a).cmp(&id_key(b)).then_with(|| a.cmp(b))
}

macro_rules! natural_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }

            #[allow(dead_code)]
            pub(crate) fn number(&self) -> Option<u64> {
                id_key(&self.0).1
            }

            #[allow(dead_code)]
            pub(crate) fn prefix(&self) -> &str {
                id_key(&self.0).0
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                natural_cmp(&self.0, &other.0)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }
    };
}

natural_id!(
    /// Identifier of a map node: `p1` (product), `c<n>` (customer),
    /// `b<n>` (problem box) or `f<n>` (feature).
    NodeId
);

natural_id!(
    /// Identifier of a map edge, `e<n>` in creation order.
    EdgeId
);
