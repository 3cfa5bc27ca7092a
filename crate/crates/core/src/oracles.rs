//! Brute-force reference implementations, written directly from the defining
//! clauses and kept deliberately naive.  The test suites check the production
//! algorithms against these on exhaustive small universes; nothing in the
//! production paths calls into this module.

use std::collections::BTreeSet;

use crate::amalgam::free_amalgam;
use crate::budget::Budget;
use crate::embed::are_isomorphic;
use crate::error::{CoreError, Result};
use crate::lang::Vertex;
use crate::map::{MapKind, VertexMap};
use crate::structure::Structure;

/// Minimal closed superset computed by intersecting every closed superset.
pub fn closure_oracle(s: &Structure, seed: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let n = s.n();
    assert!(n <= 20, "closure oracle scans all subsets");
    let mut best: Option<BTreeSet<Vertex>> = None;
    for mask in 0u32..1 << n {
        let set: BTreeSet<Vertex> = (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
        if !seed.is_subset(&set) || !s.is_closed(&set) {
            continue;
        }
        best = Some(match best {
            None => set,
            Some(b) => b.intersection(&set).copied().collect(),
        });
    }
    best.expect("the full vertex set is closed")
}

/// Map-kind check transcribed clause by clause.
pub fn kind_oracle(a: &Structure, b: &Structure, f: &VertexMap, kind: MapKind) -> bool {
    if f.len() != a.n() || f.iter().any(|&v| (v as usize) >= b.n()) {
        return false;
    }
    let img = |t: &[Vertex]| -> Vec<Vertex> { t.iter().map(|&v| f[v as usize]).collect() };

    // Clause: relation tuples map to relation tuples.
    for r in 0..a.lang().rels().len() {
        for t in a.rel_tuples(r) {
            if !b.rel_tuples(r).contains(&img(t)) {
                return false;
            }
        }
    }
    // Clause: each defined entry maps into a defined entry, image within image.
    for fun in 0..a.lang().funs().len() {
        for (dom, image) in a.fun_entries(fun) {
            let Some(bi) = b.fun_value(fun, &img(dom)) else {
                return false;
            };
            if !image.iter().all(|&v| bi.contains(&f[v as usize])) {
                return false;
            }
        }
    }
    if kind == MapKind::Homomorphism {
        return true;
    }
    // Clause: injectivity.
    for u in 0..f.len() {
        for v in u + 1..f.len() {
            if f[u] == f[v] {
                return false;
            }
        }
    }
    if kind == MapKind::Monomorphism {
        return true;
    }
    // Clauses: relations, domains, and images reflect along the map.
    let range: BTreeSet<Vertex> = f.iter().copied().collect();
    let pre = |t: &[Vertex]| -> Vec<Vertex> {
        t.iter()
            .map(|&v| f.iter().position(|&w| w == v).unwrap() as Vertex)
            .collect()
    };
    for r in 0..a.lang().rels().len() {
        for t in b.rel_tuples(r) {
            if t.iter().all(|v| range.contains(v)) && !a.rel_tuples(r).contains(&pre(t)) {
                return false;
            }
        }
    }
    for fun in 0..a.lang().funs().len() {
        for (dom, b_img) in b.fun_entries(fun) {
            if !dom.iter().all(|v| range.contains(v)) {
                continue;
            }
            match a.fun_value(fun, &pre(dom)) {
                None => return false,
                Some(a_img) => {
                    let mapped: BTreeSet<Vertex> = a_img.iter().map(|&v| f[v as usize]).collect();
                    if mapped != *b_img {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every map of the requested kind, found by filtering all `|b|^|a|` vertex
/// maps.
pub fn all_maps_oracle(
    a: &Structure,
    b: &Structure,
    kind: MapKind,
    budget: &Budget,
) -> Result<Vec<VertexMap>> {
    let total = (b.n() as u64)
        .checked_pow(a.n() as u32)
        .ok_or(CoreError::Budget {
            what: "map oracle size",
            limit: u64::MAX,
        })?;
    budget.check_steps(total)?;
    let mut out = Vec::new();
    let mut f: VertexMap = vec![0; a.n()];
    if b.n() == 0 {
        if a.n() == 0 && kind_oracle(a, b, &f, kind) {
            out.push(f);
        }
        return Ok(out);
    }
    loop {
        if kind_oracle(a, b, &f, kind) {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == f.len() {
                return Ok(out);
            }
            f[i] += 1;
            if (f[i] as usize) < b.n() {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Irreducibility by scanning every pair of vertex subsets against the
/// decomposition clauses: both proper and closed, union everything,
/// intersection closed, and no tuple or function hyperedge meeting both
/// one-sided differences.
pub fn irreducible_pairs_oracle(s: &Structure) -> bool {
    let n = s.n();
    assert!(n <= 12, "pair oracle scans 4^n subset pairs");
    let sets: Vec<BTreeSet<Vertex>> = (0u32..1 << n)
        .map(|m| (0..n as Vertex).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    let mut hyper: Vec<BTreeSet<Vertex>> = Vec::new();
    for r in 0..s.lang().rels().len() {
        for t in s.rel_tuples(r) {
            hyper.push(t.iter().copied().collect());
        }
    }
    for f in 0..s.lang().funs().len() {
        for (dom, img) in s.fun_entries(f) {
            hyper.push(dom.iter().chain(img.iter()).copied().collect());
        }
    }
    let full: BTreeSet<Vertex> = (0..n as Vertex).collect();
    for e1 in &sets {
        for e2 in &sets {
            if e1.len() == n || e2.len() == n {
                continue;
            }
            if !s.is_closed(e1) || !s.is_closed(e2) {
                continue;
            }
            let union: BTreeSet<Vertex> = e1.union(e2).copied().collect();
            if union != full {
                continue;
            }
            let meet: BTreeSet<Vertex> = e1.intersection(e2).copied().collect();
            if !s.is_closed(&meet) {
                continue;
            }
            let d1: BTreeSet<Vertex> = e1.difference(e2).copied().collect();
            let d2: BTreeSet<Vertex> = e2.difference(e1).copied().collect();
            let crossing = hyper.iter().any(|h| {
                h.iter().any(|v| d1.contains(v)) && h.iter().any(|v| d2.contains(v))
            });
            if !crossing {
                return false;
            }
        }
    }
    true
}

/// Irreducibility by rebuilding candidate free amalgams and testing them for
/// isomorphism with the original.  Exercises the amalgam constructor and the
/// isomorphism test as a unit, so it is the slowest and most comprehensive
/// tier.
pub fn irreducible_amalgam_oracle(s: &Structure, budget: &Budget) -> Result<bool> {
    let n = s.n();
    assert!(n <= 6, "amalgam oracle rebuilds an amalgam per subset pair");
    let sets: Vec<BTreeSet<Vertex>> = (0u32..1 << n)
        .map(|m| (0..n as Vertex).filter(|&v| m >> v & 1 == 1).collect())
        .collect();
    let full: BTreeSet<Vertex> = (0..n as Vertex).collect();
    for e1 in &sets {
        for e2 in &sets {
            if e1.len() == n || e2.len() == n {
                continue;
            }
            if !s.is_closed(e1) || !s.is_closed(e2) {
                continue;
            }
            if e1.union(e2).copied().collect::<BTreeSet<_>>() != full {
                continue;
            }
            let meet: BTreeSet<Vertex> = e1.intersection(e2).copied().collect();
            if !s.is_closed(&meet) {
                continue;
            }
            let (sub1, old1) = s.induced_raw(e1);
            let (sub2, old2) = s.induced_raw(e2);
            let (core, old_core) = s.induced_raw(&meet);
            let into = |old: &[Vertex], of: &[Vertex]| -> VertexMap {
                of.iter()
                    .map(|v| old.iter().position(|w| w == v).unwrap() as Vertex)
                    .collect()
            };
            let f1 = into(&old1, &old_core);
            let f2 = into(&old2, &old_core);
            let Ok(am) = free_amalgam(&core, &sub1, &f1, &sub2, &f2) else {
                continue; // the meet is not a substructure of a side
            };
            if are_isomorphic(&am.result, s, budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All automorphisms found by filtering the full permutation group.
pub fn automorphisms_oracle(s: &Structure, budget: &Budget) -> Result<Vec<VertexMap>> {
    use itertools::Itertools;
    let n = s.n();
    let mut fact = 1u64;
    for k in 2..=n as u64 {
        fact = fact.saturating_mul(k);
    }
    budget.check_steps(fact)?;
    Ok((0..n as Vertex)
        .permutations(n)
        .filter(|p| kind_oracle(s, s, p, MapKind::Embedding))
        .collect())
}
