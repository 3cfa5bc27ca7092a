//! The precedence preorder on vertices of an ordered structure.
//!
//! Vertex `u` precedes vertex `v` when one of three comparisons holds, each
//! reading only closure data and the order inside closures:
//!
//! 1. the closure type of `u` strictly precedes that of `v` in the
//!    size-and-type order on unordered isomorphism types;
//! 2. the closure types agree, and the ranks of `u`'s closure outside its
//!    component come lexicographically no later than `v`'s;
//! 3. the components of `u` and `v` are homologous.
//!
//! The relation is a preorder (reflexive and, on the structures exercised by
//! the test sweeps, transitive); `strictly_precedes` is its strict part.

use fam_core::budget::Budget;
use fam_core::canon::CanonKey;
use fam_core::error::Result;
use fam_core::lang::Vertex;
use fam_core::structure::Structure;

use crate::analysis::{analyze, ClosureAnalysis};
use crate::ordered::OrderedStructure;

/// Canonical key of the unordered reduct of the closure of `v`; begins with
/// the closure size, so comparing keys compares sizes first.
pub fn closure_type_key(
    s: &Structure,
    ana: &ClosureAnalysis,
    v: Vertex,
    budget: &Budget,
) -> Result<CanonKey> {
    let (cl, _) = s.unordered_reduct().induced(ana.closure(v))?;
    fam_core::canon::canonical_key(&cl, budget)
}

fn remainder_ranks(ana: &ClosureAnalysis, rank: &[usize], v: Vertex) -> Vec<usize> {
    let comp = ana.component_of(v);
    let mut ranks: Vec<usize> = ana
        .closure(v)
        .iter()
        .filter(|&&w| ana.component_of(w) != comp)
        .map(|&w| rank[w as usize])
        .collect();
    ranks.sort_unstable();
    ranks
}

/// Precedence under an explicit rank vector.  Ranks are read only at
/// vertices inside the closures of `u` and `v`, so a rank vector that is
/// partial elsewhere is safe as long as it covers those closures.
pub fn precedes_in(
    s: &Structure,
    ana: &ClosureAnalysis,
    rank: &[usize],
    u: Vertex,
    v: Vertex,
    budget: &Budget,
) -> Result<bool> {
    if u == v {
        return Ok(true);
    }
    let ku = closure_type_key(s, ana, u, budget)?;
    let kv = closure_type_key(s, ana, v, budget)?;
    if ku != kv {
        return Ok(ku < kv);
    }
    if ana.homologous(s, ana.component_of(u), ana.component_of(v), budget)? {
        return Ok(true);
    }
    Ok(remainder_ranks(ana, rank, u) <= remainder_ranks(ana, rank, v))
}

pub fn strictly_precedes_in(
    s: &Structure,
    ana: &ClosureAnalysis,
    rank: &[usize],
    u: Vertex,
    v: Vertex,
    budget: &Budget,
) -> Result<bool> {
    Ok(precedes_in(s, ana, rank, u, v, budget)? && !precedes_in(s, ana, rank, v, u, budget)?)
}

/// Precedence read from the structure's own order.
pub fn precedes(x: &OrderedStructure, u: Vertex, v: Vertex, budget: &Budget) -> Result<bool> {
    let ana = analyze(x.structure());
    precedes_in(x.structure(), &ana, x.rank(), u, v, budget)
}

pub fn strictly_precedes(
    x: &OrderedStructure,
    u: Vertex,
    v: Vertex,
    budget: &Budget,
) -> Result<bool> {
    let ana = analyze(x.structure());
    strictly_precedes_in(x.structure(), &ana, x.rank(), u, v, budget)
}
