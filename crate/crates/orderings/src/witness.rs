//! The ordering property and its disjoint-union witness.
//!
//! A class of orderings has the *ordering property* for a pair `(A, B)` when
//! every admitted ordering of `B` contains an ordered copy of every admitted
//! ordering of `A`.  [`verify_ordering_property`] checks this exhaustively;
//! [`ordering_witness_b0`] builds the candidate witness used to prove the
//! property for admissible classes: the disjoint union of all qualifying
//! re-orderings of `A`, ordered by the first admitted completion.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use fam_core::budget::{Budget, Meter};
use fam_core::canon::CanonKey;
use fam_core::embed::exists_embedding;
use fam_core::error::{CoreError, Result};
use fam_core::lang::Vertex;
use fam_core::structure::Structure;

use crate::admissible::{restrict_order, AdmissibleClass};
use crate::analysis::{analyze, ClosureAnalysis};
use crate::ordered::OrderedStructure;

/// Which orderings count as admitted during verification.
pub enum OrderClass<'a> {
    /// Every total order is admitted.
    All,
    /// Membership in an explicit admissible class.
    Admissible(&'a AdmissibleClass),
    /// An arbitrary predicate.
    Oracle(&'a dyn Fn(&OrderedStructure) -> Result<bool>),
}

impl OrderClass<'_> {
    pub fn admits(&self, x: &OrderedStructure) -> Result<bool> {
        match self {
            OrderClass::All => Ok(true),
            OrderClass::Admissible(c) => c.contains(x),
            OrderClass::Oracle(f) => f(x),
        }
    }
}

/// All admitted orderings of `s` (any order it already carries is ignored),
/// one representative per ordered isomorphism type, sorted by key.
fn admitted_types(
    s: &Structure,
    class: &OrderClass,
    budget: &Budget,
) -> Result<Vec<OrderedStructure>> {
    let plain = s.unordered_reduct();
    let n = plain.n();
    let mut meter = Meter::new(budget);
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    let mut out: BTreeMap<CanonKey, OrderedStructure> = BTreeMap::new();
    for perm in (0..n as Vertex).permutations(n) {
        meter.step()?;
        let x = OrderedStructure::order(&plain, &perm)?;
        let key = x.key();
        if seen.insert(key.clone()) && class.admits(&x)? {
            out.insert(key, x);
        }
    }
    Ok(out.into_values().collect())
}

/// True when every admitted ordering of `b` contains an ordered copy of
/// every admitted ordering of the structure underlying `a`.  Exhaustive over
/// ordering types of both sides.
pub fn verify_ordering_property(
    a: &OrderedStructure,
    b: &Structure,
    class: &OrderClass,
    budget: &Budget,
) -> Result<bool> {
    let a_types = admitted_types(a.structure(), class, budget)?;
    let b_types = admitted_types(b, class, budget)?;
    for bo in &b_types {
        for ao in &a_types {
            if !exists_embedding(ao.structure(), bo.structure(), budget)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when `cand` keeps the reference's relative order between every pair
/// of vertices lying in distinct homologous components.  Both orderings must
/// live on the same underlying structure.
pub fn preserves_homologous_order(
    reference: &OrderedStructure,
    cand: &OrderedStructure,
    budget: &Budget,
) -> Result<bool> {
    let ana = analyze(reference.structure());
    let pairs = ana.homologous_pairs(reference.structure(), budget)?;
    Ok(preserves_homologous_order_in(reference, cand, &ana, &pairs))
}

/// [`preserves_homologous_order`] with precomputed analysis and pairs.
pub fn preserves_homologous_order_in(
    reference: &OrderedStructure,
    cand: &OrderedStructure,
    ana: &ClosureAnalysis,
    pairs: &BTreeSet<(usize, usize)>,
) -> bool {
    pairs.iter().all(|&(c1, c2)| {
        ana.component(c1).iter().all(|&u| {
            ana.component(c2)
                .iter()
                .all(|&v| cand.before(u, v) == reference.before(u, v))
        })
    })
}

/// True when the induced order on every vertex closure of `cand` depends
/// only on the closure's unordered isomorphism type.
pub fn closure_orders_follow_type(cand: &OrderedStructure, budget: &Budget) -> Result<bool> {
    let ana = analyze(cand.structure());
    closure_orders_follow_type_in(cand, &ana, budget)
}

/// [`closure_orders_follow_type`] with a precomputed analysis.
pub fn closure_orders_follow_type_in(
    cand: &OrderedStructure,
    ana: &ClosureAnalysis,
    budget: &Budget,
) -> Result<bool> {
    let mut types: BTreeMap<CanonKey, CanonKey> = BTreeMap::new();
    for c in 0..ana.component_count() {
        let sub = restrict_order(cand.structure(), cand.rank(), ana.component_closure(c))?;
        let unordered = sub.unordered_key(budget)?;
        let ordered = sub.key();
        match types.get(&unordered) {
            Some(prev) if *prev != ordered => return Ok(false),
            Some(_) => {}
            None => {
                types.insert(unordered, ordered);
            }
        }
    }
    Ok(true)
}

/// All admitted re-orderings of `a`'s underlying structure — as vertex
/// orderings on the fixed domain, not up to isomorphism — that keep the
/// reference order between distinct homologous components and order every
/// vertex closure by its isomorphism type alone.  Listed in lexicographic
/// order of their vertex sequences.
pub fn qualifying_reorderings(
    a: &OrderedStructure,
    class: &OrderClass,
    budget: &Budget,
) -> Result<Vec<OrderedStructure>> {
    let plain = a.structure().unordered_reduct();
    let n = plain.n();
    let ana = analyze(&plain);
    let pairs = ana.homologous_pairs(&plain, budget)?;
    let mut meter = Meter::new(budget);
    let mut out = Vec::new();
    for perm in (0..n as Vertex).permutations(n) {
        meter.step()?;
        let x = OrderedStructure::order(&plain, &perm)?;
        if class.admits(&x)?
            && preserves_homologous_order_in(a, &x, &ana, &pairs)
            && closure_orders_follow_type_in(&x, &ana, budget)?
        {
            out.push(x);
        }
    }
    Ok(out)
}

fn complete_union(
    union: &Structure,
    seqs: &[Vec<Vertex>],
    pos: &mut [usize],
    acc: &mut Vec<Vertex>,
    class: &OrderClass,
    meter: &mut Meter,
) -> Result<Option<OrderedStructure>> {
    meter.step()?;
    if acc.len() == union.n() {
        let x = OrderedStructure::order(union, acc)?;
        return Ok(if class.admits(&x)? { Some(x) } else { None });
    }
    for j in 0..seqs.len() {
        if pos[j] < seqs[j].len() {
            acc.push(seqs[j][pos[j]]);
            pos[j] += 1;
            let found = complete_union(union, seqs, pos, acc, class, meter)?;
            pos[j] -= 1;
            acc.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Disjoint union of all qualifying re-orderings of `a`, each copy keeping
/// its internal order, with the order across copies completed to the first
/// admitted total order (copies are interleaved lowest-first, so the result
/// is deterministic).  Copy `j` renames vertex `x` to `x@j`.
///
/// Errors when `a` itself is not admitted, when no re-ordering qualifies, or
/// when no completion is admitted.
pub fn ordering_witness_b0(
    a: &OrderedStructure,
    class: &OrderClass,
    budget: &Budget,
) -> Result<OrderedStructure> {
    if !class.admits(a)? {
        return Err(CoreError::Invalid(
            "the given ordering is not admitted".into(),
        ));
    }
    let quals = qualifying_reorderings(a, class, budget)?;
    if quals.is_empty() {
        return Err(CoreError::Invalid(
            "no re-ordering of the structure qualifies".into(),
        ));
    }

    let plain = a.structure().unordered_reduct();
    let k = quals.len();
    let n = plain.n();
    budget.check_vertices((k * n) as u64)?;

    // Copy j occupies vertices j*n .. (j+1)*n of the union.
    let mut union = Structure::new(plain.lang().clone());
    for j in 0..k {
        for v in plain.vertices() {
            union.add_vertex(format!("{}@{}", plain.name(v), j + 1));
        }
    }
    for j in 0..k {
        let off = (j * n) as Vertex;
        for r in 0..plain.lang().rels().len() {
            for t in plain.rel_tuples(r) {
                let shifted: Vec<Vertex> = t.iter().map(|&v| v + off).collect();
                union.add_rel(r, &shifted)?;
            }
        }
        for f in 0..plain.lang().funs().len() {
            for (dom, img) in plain.fun_entries(f) {
                union.set_fun(
                    f,
                    dom.iter().map(|&v| v + off).collect(),
                    img.iter().map(|&v| v + off).collect(),
                )?;
            }
        }
    }

    let seqs: Vec<Vec<Vertex>> = quals
        .iter()
        .enumerate()
        .map(|(j, q)| {
            let off = (j * n) as Vertex;
            Ok(q.structure()
                .order_sequence()?
                .into_iter()
                .map(|v| v + off)
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut meter = Meter::new(budget);
    let mut pos = vec![0usize; k];
    let mut acc = Vec::with_capacity(k * n);
    complete_union(&union, &seqs, &mut pos, &mut acc, class, &mut meter)?.ok_or_else(|| {
        CoreError::Invalid("no completion of the disjoint union is admitted".into())
    })
}
