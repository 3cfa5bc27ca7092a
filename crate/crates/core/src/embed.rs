//! Backtracking enumeration of homomorphisms, monomorphisms, and embeddings
//! between structures.
//!
//! Source vertices are assigned in index order; each relation tuple or
//! function entry is checked the moment its last vertex is assigned, so
//! non-maps are pruned early.  Embedding reflection is verified at the leaves.

use std::collections::BTreeSet;

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::lang::Vertex;
use crate::map::{is_embedding, MapKind, VertexMap};
use crate::structure::Structure;

/// Per-pair candidate filter: `allow(source, target)` must hold for every
/// assignment tried.  Used to restrict searches (parts, orders, pinning).
pub type CandidateFilter<'a> = &'a dyn Fn(Vertex, Vertex) -> bool;

pub struct Search<'a> {
    pub kind: MapKind,
    pub budget: &'a Budget,
    pub candidate: Option<CandidateFilter<'a>>,
}

impl<'a> Search<'a> {
    pub fn new(kind: MapKind, budget: &'a Budget) -> Search<'a> {
        Search {
            kind,
            budget,
            candidate: None,
        }
    }

    pub fn with_candidate(mut self, c: CandidateFilter<'a>) -> Search<'a> {
        self.candidate = Some(c);
        self
    }
}

/// One fun entry of `a`: symbol, domain tuple, image set.
type FunEntry = (usize, Vec<Vertex>, BTreeSet<Vertex>);

/// Rel tuples and fun entries of `a`, grouped by the largest vertex index
/// appearing in them (the assignment step at which they become checkable).
struct Triggers {
    rels: Vec<Vec<(usize, Vec<Vertex>)>>,
    funs: Vec<Vec<FunEntry>>,
}

fn triggers(a: &Structure) -> Triggers {
    let n = a.n();
    let mut t = Triggers {
        rels: vec![Vec::new(); n],
        funs: vec![Vec::new(); n],
    };
    for r in 0..a.lang().rels().len() {
        for tuple in a.rel_tuples(r) {
            let hi = *tuple.iter().max().unwrap() as usize;
            t.rels[hi].push((r, tuple.clone()));
        }
    }
    for f in 0..a.lang().funs().len() {
        for (dom, img) in a.fun_entries(f) {
            let hi = dom.iter().chain(img.iter()).max().copied().unwrap() as usize;
            t.funs[hi].push((f, dom.clone(), img.clone()));
        }
    }
    t
}

/// Calls `visit` with every map `a → b` of the requested kind, in
/// lexicographic order of the assignment vector.  `visit` returns `false` to
/// stop the search early.
pub fn for_each_map(
    a: &Structure,
    b: &Structure,
    search: &Search,
    mut visit: impl FnMut(&VertexMap) -> bool,
) -> Result<()> {
    if a.lang().as_ref() != b.lang().as_ref() {
        return Err(crate::error::CoreError::LanguageMismatch);
    }
    let n = a.n();
    let mut meter = Meter::new(search.budget);
    if n == 0 {
        meter.step()?;
        visit(&Vec::new());
        return Ok(());
    }
    let injective = search.kind != MapKind::Homomorphism;
    let trig = triggers(a);
    let mut f: VertexMap = Vec::with_capacity(n);
    let mut used = vec![false; b.n()];

    // Iterative backtracking; `next[d]` is the target to try next at depth d.
    let mut next = vec![0 as Vertex; n + 1];
    let mut depth = 0usize;
    'outer: loop {
        meter.step()?;
        let mut advanced = false;
        while (next[depth] as usize) < b.n() {
            let w = next[depth];
            next[depth] += 1;
            if injective && used[w as usize] {
                continue;
            }
            if let Some(c) = search.candidate {
                if !c(depth as Vertex, w) {
                    continue;
                }
            }
            f.push(w);
            let ok = check_at(b, &f, &trig, depth);
            if !ok {
                f.pop();
                continue;
            }
            if injective {
                used[w as usize] = true;
            }
            if depth + 1 == n {
                let accept = match search.kind {
                    MapKind::Embedding => is_embedding(a, b, &f)?,
                    _ => true,
                };
                if accept && !visit(&f) {
                    return Ok(());
                }
                if injective {
                    used[w as usize] = false;
                }
                f.pop();
                continue;
            }
            depth += 1;
            next[depth] = 0;
            advanced = true;
            break;
        }
        if advanced {
            continue;
        }
        // Depth exhausted: backtrack.
        if depth == 0 {
            break 'outer;
        }
        depth -= 1;
        let w = *f.last().unwrap();
        if injective {
            used[w as usize] = false;
        }
        f.pop();
    }
    Ok(())
}

/// Homomorphism conditions for everything that became fully assigned when
/// vertex `depth` got its target.
fn check_at(b: &Structure, f: &VertexMap, trig: &Triggers, depth: usize) -> bool {
    for (r, tuple) in &trig.rels[depth] {
        let img: Vec<Vertex> = tuple.iter().map(|&v| f[v as usize]).collect();
        if !b.rel_tuples(*r).contains(&img) {
            return false;
        }
    }
    for (fun, dom, img) in &trig.funs[depth] {
        let d: Vec<Vertex> = dom.iter().map(|&v| f[v as usize]).collect();
        match b.fun_value(*fun, &d) {
            None => return false,
            Some(bi) => {
                if !img.iter().all(|&v| bi.contains(&f[v as usize])) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn enumerate_maps(
    a: &Structure,
    b: &Structure,
    kind: MapKind,
    budget: &Budget,
) -> Result<Vec<VertexMap>> {
    let mut out = Vec::new();
    for_each_map(a, b, &Search::new(kind, budget), |f| {
        out.push(f.clone());
        true
    })?;
    Ok(out)
}

pub fn enumerate_embeddings(a: &Structure, b: &Structure, budget: &Budget) -> Result<Vec<VertexMap>> {
    enumerate_maps(a, b, MapKind::Embedding, budget)
}

pub fn exists_embedding(a: &Structure, b: &Structure, budget: &Budget) -> Result<bool> {
    let mut found = false;
    for_each_map(a, b, &Search::new(MapKind::Embedding, budget), |_| {
        found = true;
        false
    })?;
    Ok(found)
}

/// Images of embeddings of `a` in `b`, deduplicated.  Each image is a closed
/// set carrying a substructure isomorphic to `a`.
pub fn copies_of(a: &Structure, b: &Structure, budget: &Budget) -> Result<Vec<BTreeSet<Vertex>>> {
    let mut images: BTreeSet<BTreeSet<Vertex>> = BTreeSet::new();
    for_each_map(a, b, &Search::new(MapKind::Embedding, budget), |f| {
        images.insert(f.iter().copied().collect());
        true
    })?;
    Ok(images.into_iter().collect())
}

/// All automorphisms (bijective self-embeddings).
pub fn automorphisms(a: &Structure, budget: &Budget) -> Result<Vec<VertexMap>> {
    enumerate_embeddings(a, a, budget)
}

/// Isomorphism test: an injective embedding between equal-sized structures is
/// bijective, and a bijective embedding is an isomorphism.
pub fn are_isomorphic(a: &Structure, b: &Structure, budget: &Budget) -> Result<bool> {
    Ok(a.n() == b.n() && exists_embedding(a, b, budget)?)
}
