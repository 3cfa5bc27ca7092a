//! Irreducibility: a structure is reducible when it splits as a free amalgam
//! of two proper substructures, i.e. when two proper closed subsets cover the
//! vertex set with every tuple and every function hyperedge lying entirely
//! inside one of them.  Irreducible structures are the ones that cannot be
//! split this way.
//!
//! The search enumerates candidate first sides `E1` (closed, proper); the
//! minimal legal second side is then forced: the complement, plus every
//! hyperedge not inside `E1`, closed under functions.  Monotonicity of that
//! forcing makes the one-sided loop complete.  Vertex sets are `u64` masks,
//! which caps the search at 63 vertices — far beyond what the budget admits.

use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::{CoreError, Result};
use crate::lang::Vertex;
use crate::structure::Structure;

/// Vertex sets of all tuples and function entries (`dom ∪ img`), as masks.
fn hyperedge_masks(s: &Structure) -> Vec<u64> {
    let mut out = Vec::new();
    for r in 0..s.lang().rels().len() {
        for t in s.rel_tuples(r) {
            out.push(t.iter().fold(0u64, |m, &v| m | 1 << v));
        }
    }
    for f in 0..s.lang().funs().len() {
        for (dom, img) in s.fun_entries(f) {
            let m = dom.iter().chain(img.iter()).fold(0u64, |m, &v| m | 1 << v);
            out.push(m);
        }
    }
    out
}

/// Function entries as `(domain mask, image mask)` pairs for mask closure.
fn fun_masks(s: &Structure) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for f in 0..s.lang().funs().len() {
        for (dom, img) in s.fun_entries(f) {
            let d = dom.iter().fold(0u64, |m, &v| m | 1 << v);
            let i = img.iter().fold(0u64, |m, &v| m | 1 << v);
            out.push((d, i));
        }
    }
    out
}

fn close_mask(funs: &[(u64, u64)], mut mask: u64) -> u64 {
    loop {
        let mut grew = false;
        for &(d, i) in funs {
            if mask & d == d && mask & i != i {
                mask |= i;
                grew = true;
            }
        }
        if !grew {
            return mask;
        }
    }
}

fn is_closed_mask(funs: &[(u64, u64)], mask: u64) -> bool {
    funs.iter().all(|&(d, i)| mask & d != d || mask & i == i)
}

fn mask_to_set(mask: u64) -> BTreeSet<Vertex> {
    (0..64).filter(|v| mask >> v & 1 == 1).map(|v| v as Vertex).collect()
}

/// Connected components of the hyperedge graph (vertices joined when they
/// share a tuple or function hyperedge).  Returns one mask per component.
pub fn hyperedge_components(s: &Structure) -> Vec<u64> {
    let n = s.n();
    assert!(n <= 63, "component masks need at most 63 vertices");
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for h in hyperedge_masks(s) {
        let mut first = None;
        for v in 0..n {
            if h >> v & 1 == 1 {
                match first {
                    None => first = Some(v),
                    Some(f) => {
                        let (a, b) = (find(&mut parent, f), find(&mut parent, v));
                        parent[a] = b;
                    }
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, u64> = Default::default();
    for v in 0..n {
        let root = find(&mut parent, v);
        *comps.entry(root).or_insert(0) |= 1 << v;
    }
    comps.into_values().collect()
}

/// A witness that `s` is reducible: two proper closed subsets covering the
/// vertex set with no hyperedge meeting both differences.  `None` means
/// irreducible.
pub fn decomposition(
    s: &Structure,
    budget: &Budget,
) -> Result<Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)>> {
    let n = s.n();
    if n <= 1 {
        return Ok(None);
    }
    if n > 63 {
        return Err(CoreError::Budget {
            what: "decomposition search vertices",
            limit: 63,
        });
    }
    let comps = hyperedge_components(s);
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    if comps.len() >= 2 {
        let e1 = comps[0];
        return Ok(Some((mask_to_set(e1), mask_to_set(full & !e1))));
    }
    budget.check_steps(1u64 << n)?;
    let hyper = hyperedge_masks(s);
    let funs = fun_masks(s);
    for e1 in 1..full {
        if !is_closed_mask(&funs, e1) {
            continue;
        }
        let mut e2 = full & !e1;
        for &h in &hyper {
            if h & e1 != h {
                e2 |= h;
            }
        }
        e2 = close_mask(&funs, e2);
        if e2 != full {
            return Ok(Some((mask_to_set(e1), mask_to_set(e2))));
        }
    }
    Ok(None)
}

pub fn is_irreducible(s: &Structure, budget: &Budget) -> Result<bool> {
    Ok(decomposition(s, budget)?.is_none())
}

/// Nonempty closed vertex sets whose induced substructure is irreducible,
/// in ascending mask order.
pub fn irreducible_closed_subsets(
    s: &Structure,
    budget: &Budget,
) -> Result<Vec<BTreeSet<Vertex>>> {
    let n = s.n();
    if n > 63 {
        return Err(CoreError::Budget {
            what: "closed subset enumeration vertices",
            limit: 63,
        });
    }
    budget.check_steps(1u64 << n)?;
    let funs = fun_masks(s);
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for mask in 1..=full {
        if mask == 0 || !is_closed_mask(&funs, mask) {
            continue;
        }
        let set = mask_to_set(mask);
        let (sub, _) = s.induced_raw(&set);
        if is_irreducible(&sub, budget)? {
            out.push(set);
        }
    }
    Ok(out)
}
