use serde::{Deserialize, Serialize};

/// Search limits for every bounded procedure. Reports echo them so that a
/// completeness claim can be reproduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Largest generator index a bounded search may use.
    pub max_index: usize,
    /// Largest coefficient a bounded search may put on one generator.
    pub max_block_coeff: u64,
    /// Largest factorization length considered.
    pub max_length: u64,
    /// Search nodes visited before giving up with an inconclusive answer.
    pub node_budget: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            max_index: 50,
            max_block_coeff: 64,
            max_length: 20,
            node_budget: 2_000_000,
        }
    }
}
