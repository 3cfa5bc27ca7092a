//! Brute-force search for a smallest base witness of the Ramsey arrow:
//! the ordered structure C of minimum size with C → (B)^A_k, found by
//! exhausting all structures size by size.
//!
//! Candidates are enumerated over the unordered language and given the
//! identity order. That covers every ordered structure up to isomorphism:
//! relabeling any ordered structure along its own order turns the order
//! into the identity, and the arrow is isomorphism-invariant.

use std::sync::Arc;

use fam_core::{
    enumerate::for_each_structure, exists_embedding, Budget, CoreError, Result, Structure, Vertex,
};

use crate::arrow::{verify_arrow, Arrow};

/// Finds the smallest ordered C with C → (B)^A_k by exhaustive search over
/// all structures with up to `max_vertices` vertices. `a` and `b` must be
/// ordered structures over one language.
pub fn base_ramsey_bruteforce(
    a: &Structure,
    b: &Structure,
    k: usize,
    max_vertices: usize,
    budget: &Budget,
) -> Result<Structure> {
    for s in [a, b] {
        s.validate()?;
        s.validate_exact_images()?;
        if !s.lang().has_order() {
            return Err(CoreError::Invalid("arrow sides must be ordered".into()));
        }
    }
    if a.lang() != b.lang() {
        return Err(CoreError::LanguageMismatch);
    }
    if k == 0 {
        return Err(CoreError::Invalid("at least one color is required".into()));
    }

    let lang0 = Arc::new(a.lang().without_order());
    for n in b.n()..=max_vertices {
        let seq: Vec<Vertex> = (0..n as Vertex).collect();
        let mut found: Option<Structure> = None;
        let mut fail: Option<CoreError> = None;
        for_each_structure(&lang0, n, budget, |cand| {
            let step = || -> Result<Option<Structure>> {
                let ordered = cand.with_order(&seq)?;
                if !exists_embedding(b, &ordered, budget)? {
                    return Ok(None);
                }
                match verify_arrow(&ordered, b, a, k, budget)? {
                    Arrow::Holds => Ok(Some(ordered)),
                    Arrow::Fails { .. } => Ok(None),
                }
            };
            match step() {
                Ok(Some(c)) => {
                    found = Some(c);
                    false
                }
                Ok(None) => true,
                Err(e) => {
                    fail = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = fail {
            return Err(e);
        }
        if let Some(c) = found {
            return Ok(c);
        }
    }
    Err(CoreError::Invalid(format!(
        "no arrow witness with at most {max_vertices} vertices"
    )))
}
