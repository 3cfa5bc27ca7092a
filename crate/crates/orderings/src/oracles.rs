//! Independent reference computations, deliberately written as direct
//! recursions over freshly computed closures rather than reusing the
//! analysis pipeline.

use fam_core::lang::Vertex;
use fam_core::structure::Structure;

/// Nesting depth of `v`: zero when every vertex of the closure has the same
/// closure, otherwise one more than the deepest strictly-smaller member.
///
/// Recomputes every closure from scratch on each call; quadratic and meant
/// only for cross-checking the fast path on small inputs.
pub fn level_oracle(s: &Structure, v: Vertex) -> usize {
    let cl = s.closure_set([v]);
    cl.iter()
        .filter(|&&w| s.closure_set([w]).len() < cl.len())
        .map(|&w| level_oracle(s, w) + 1)
        .max()
        .unwrap_or(0)
}
