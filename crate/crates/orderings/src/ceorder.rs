//! Comparison and similarity of ordered extensions.
//!
//! An *extension* here is a structure that is the closure of its deepest
//! component (see [`crate::analysis`]).  Ordered extensions are compared by
//! a three-part key — size-first unordered isomorphism type, then the sorted
//! order ranks of the interior, then the full ordered type as a tiebreak —
//! and two ordered extensions are *similar* when some isomorphism between
//! them restricts to an order-preserving bijection of the interiors.

use std::collections::BTreeSet;

use fam_core::budget::Budget;
use fam_core::canon::CanonKey;
use fam_core::embed::{for_each_map, Search};
use fam_core::error::{CoreError, Result};
use fam_core::lang::Vertex;
use fam_core::map::MapKind;

use crate::analysis::{analyze, Extension};
use crate::ordered::OrderedStructure;

/// Total comparison key for ordered extensions.
///
/// The unordered key begins with the vertex count, so smaller structures
/// always come first; ties break by interior rank pattern and finally by the
/// full ordered canonical key, making the order total on isomorphism types.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CeKey {
    pub unordered: CanonKey,
    pub interior_pattern: Vec<u32>,
    pub ordered: CanonKey,
}

fn extension_of(x: &OrderedStructure) -> Result<Extension> {
    analyze(x.structure())
        .extension()
        .cloned()
        .ok_or_else(|| CoreError::Invalid("not a closure extension".into()))
}

fn interior_pattern(x: &OrderedStructure, ext: &Extension) -> Vec<u32> {
    let mut ranks: Vec<u32> = ext
        .interior
        .iter()
        .map(|&v| x.rank_of(v) as u32)
        .collect();
    ranks.sort_unstable();
    ranks
}

/// Comparison key of an ordered extension.  Errors when the structure is not
/// the closure of a single component.
pub fn ce_key(x: &OrderedStructure, budget: &Budget) -> Result<CeKey> {
    let ext = extension_of(x)?;
    Ok(CeKey {
        unordered: x.unordered_key(budget)?,
        interior_pattern: interior_pattern(x, &ext),
        ordered: x.key(),
    })
}

/// Similarity of two ordered extensions: some isomorphism of the underlying
/// unordered structures maps interior to interior preserving their order.
/// The map is free on the top components.  Errors when either input is not
/// an extension.
pub fn similar(x: &OrderedStructure, y: &OrderedStructure, budget: &Budget) -> Result<bool> {
    let ex = extension_of(x)?;
    let ey = extension_of(y)?;
    if x.n() != y.n() || ex.interior.len() != ey.interior.len() {
        return Ok(false);
    }

    // An order-preserving bijection between two finite ordered sets is
    // unique, so the interior images are forced by rank matching.
    let mut ix: Vec<Vertex> = ex.interior.iter().copied().collect();
    let mut iy: Vec<Vertex> = ey.interior.iter().copied().collect();
    ix.sort_by_key(|&v| x.rank_of(v));
    iy.sort_by_key(|&v| y.rank_of(v));
    let mut forced: Vec<Option<Vertex>> = vec![None; x.n()];
    for (a, b) in ix.iter().zip(iy.iter()) {
        forced[*a as usize] = Some(*b);
    }
    let top_y: BTreeSet<Vertex> = ey.top.iter().copied().collect();

    let sx = x.structure().unordered_reduct();
    let sy = y.structure().unordered_reduct();
    let allow = |a: Vertex, b: Vertex| match forced[a as usize] {
        Some(t) => b == t,
        None => top_y.contains(&b),
    };
    let search = Search::new(MapKind::Embedding, budget).with_candidate(&allow);
    let mut found = false;
    for_each_map(&sx, &sy, &search, |_| {
        found = true;
        false
    })?;
    Ok(found)
}
