//! Inputs shared by the benchmarks.

use mentor_core::dialogue::{parse_script, UBER_SCRIPT};

/// Founder answers from the bundled Uber interview.
pub fn uber_turns() -> Vec<String> {
    parse_script(UBER_SCRIPT).expect("bundled script is well-formed")
}
