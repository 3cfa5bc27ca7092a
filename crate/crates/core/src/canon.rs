//! Canonical forms: a relabeling-invariant key identifying the isomorphism
//! class of a structure, plus the relabelings that achieve it.
//!
//! Unordered structures take the minimum key over all permutations.
//! Structures carrying a total order are rigid, so their key comes from the
//! unique rank relabeling and never costs a factorial search.

use itertools::Itertools;

use crate::budget::Budget;
use crate::error::{CoreError, Result};
use crate::lang::Vertex;
use crate::map::VertexMap;
use crate::structure::Structure;

/// Flat, totally ordered encoding of a relabeled structure: vertex count,
/// then each relation's sorted tuple list, then each function's sorted entry
/// list (image length prefixed, since image sizes vary).
pub type CanonKey = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canon {
    pub key: CanonKey,
    /// All relabelings (`perm[old] = new`) that achieve the key.  Their
    /// number equals the automorphism group size.
    pub perms: Vec<VertexMap>,
}

/// Key of the structure relabeled by `perm[old] = new`.
pub fn relabel_key(s: &Structure, perm: &[Vertex]) -> CanonKey {
    let mut out: CanonKey = vec![s.n() as u32];
    for r in 0..s.lang().rels().len() {
        let tuples: std::collections::BTreeSet<Vec<u32>> = s
            .rel_tuples(r)
            .iter()
            .map(|t| t.iter().map(|&v| perm[v as usize]).collect())
            .collect();
        out.push(tuples.len() as u32);
        for t in tuples {
            out.extend(t);
        }
    }
    for f in 0..s.lang().funs().len() {
        let entries: std::collections::BTreeSet<(Vec<u32>, Vec<u32>)> = s
            .fun_entries(f)
            .iter()
            .map(|(dom, img)| {
                let d: Vec<u32> = dom.iter().map(|&v| perm[v as usize]).collect();
                let mut i: Vec<u32> = img.iter().map(|&v| perm[v as usize]).collect();
                i.sort_unstable();
                (d, i)
            })
            .collect();
        out.push(entries.len() as u32);
        for (d, i) in entries {
            out.push(i.len() as u32);
            out.extend(d);
            out.extend(i);
        }
    }
    out
}

fn factorial_checked(n: usize) -> Option<u64> {
    let mut f: u64 = 1;
    for k in 2..=n as u64 {
        f = f.checked_mul(k)?;
    }
    Some(f)
}

pub fn canonical_form(s: &Structure, budget: &Budget) -> Result<Canon> {
    let n = s.n();
    if s.lang().has_order() {
        if let Ok(rank) = s.order_rank() {
            let perm: VertexMap = rank.iter().map(|&r| r as Vertex).collect();
            return Ok(Canon {
                key: relabel_key(s, &perm),
                perms: vec![perm],
            });
        }
    }
    let total = factorial_checked(n).ok_or(CoreError::Budget {
        what: "canonical form permutations",
        limit: u64::MAX,
    })?;
    budget.check_steps(total)?;
    let mut best: Option<Canon> = None;
    for perm in (0..n as Vertex).permutations(n) {
        let key = relabel_key(s, &perm);
        match &mut best {
            None => best = Some(Canon { key, perms: vec![perm] }),
            Some(b) => {
                if key < b.key {
                    b.key = key;
                    b.perms = vec![perm];
                } else if key == b.key {
                    b.perms.push(perm);
                }
            }
        }
    }
    Ok(best.expect("at least the empty permutation"))
}

/// Just the key of [`canonical_form`].
pub fn canonical_key(s: &Structure, budget: &Budget) -> Result<CanonKey> {
    Ok(canonical_form(s, budget)?.key)
}

/// The canonically relabeled copy: vertex `v` becomes index `perm[v]` with
/// name `v{perm[v]}`.  Two structures are isomorphic exactly when their
/// canonical structures are equal.
pub fn canonical_structure(s: &Structure, budget: &Budget) -> Result<Structure> {
    let canon = canonical_form(s, budget)?;
    let perm = &canon.perms[0];
    let mut out = Structure::with_vertices(s.lang().clone(), s.n());
    for r in 0..s.lang().rels().len() {
        for t in s.rel_tuples(r) {
            let nt: Vec<Vertex> = t.iter().map(|&v| perm[v as usize]).collect();
            out.add_rel(r, &nt)?;
        }
    }
    for f in 0..s.lang().funs().len() {
        for (dom, img) in s.fun_entries(f) {
            let nd: Vec<Vertex> = dom.iter().map(|&v| perm[v as usize]).collect();
            let ni = img.iter().map(|&v| perm[v as usize]).collect();
            out.set_fun(f, nd, ni)?;
        }
    }
    Ok(out)
}
