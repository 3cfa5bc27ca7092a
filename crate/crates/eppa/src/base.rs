//! Brute-force search for a relational extension in which every partial
//! isomorphism of a designated substructure extends to an automorphism.
//!
//! The search enumerates relational structures of increasing size that
//! contain the input as an induced substructure on their first vertices,
//! certifies each candidate exhaustively — every isomorphism between induced
//! substructures of the input must extend to an automorphism of the
//! candidate — and returns the first size at which a candidate certifies,
//! picking the candidate with the fewest tuples (canonical key as
//! tie-break).  The winner is then pruned to the vertices some automorphism
//! moves into the designated copy; the pruned structure is re-certified.

use std::collections::BTreeMap;
use std::sync::Arc;

use fam_core::{
    automorphisms, canonical_key, enumerate::for_each_structure, enumerate_embeddings, Budget,
    CoreError,
    Meter, Result, Structure, Vertex, VertexMap,
};

use crate::reduct::{relational_reduct, RelationalReduct};

/// A partial map between vertex sets, stored sparsely.
pub type PartialMap = BTreeMap<Vertex, Vertex>;

/// Every isomorphism between substructures of `s`, in deterministic order
/// (by domain set, then range set, then map).  For purely relational
/// structures every subset induces a substructure; in general only closed
/// subsets do.
pub fn partial_isomorphisms(s: &Structure, budget: &Budget) -> Result<Vec<PartialMap>> {
    let n = s.n();
    if n > 20 {
        return Err(CoreError::Budget {
            what: "partial isomorphism enumeration vertices",
            limit: 20,
        });
    }
    let mut meter = Meter::new(budget);
    let mut closed: Vec<Vec<Vertex>> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        meter.step()?;
        let set: std::collections::BTreeSet<Vertex> =
            (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
        if s.is_closed(&set) {
            closed.push(set.into_iter().collect());
        }
    }
    let mut out = Vec::new();
    for dom in &closed {
        for rng in &closed {
            if dom.len() != rng.len() {
                continue;
            }
            let dset = dom.iter().copied().collect();
            let rset = rng.iter().copied().collect();
            let (ds, d_old) = s.induced(&dset)?;
            let (rs, r_old) = s.induced(&rset)?;
            for emb in enumerate_embeddings(&ds, &rs, budget)? {
                meter.step()?;
                let map: PartialMap = emb
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (d_old[i], r_old[j as usize]))
                    .collect();
                out.push(map);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// True when some automorphism in `auts` agrees with `p` on its whole domain.
pub fn extends_to_some(p: &PartialMap, auts: &[VertexMap]) -> bool {
    auts.iter()
        .any(|g| p.iter().all(|(&x, &y)| g[x as usize] == y))
}

/// Failure descriptions for `b` as an extension of its first `a_n` vertices:
/// empty means every partial isomorphism of the designated substructure
/// extends to an automorphism of `b`.
pub fn certify_extension_property(
    a_minus: &Structure,
    b: &Structure,
    budget: &Budget,
) -> Result<Vec<String>> {
    let mut failures = Vec::new();
    if !designated_copy_matches(a_minus, b) {
        failures.push("designated vertices do not induce the original structure".into());
        return Ok(failures);
    }
    let pisos = partial_isomorphisms(a_minus, budget)?;
    let auts = automorphisms(b, budget)?;
    for p in &pisos {
        if !extends_to_some(p, &auts) {
            let desc: Vec<String> = p
                .iter()
                .map(|(&x, &y)| format!("{}>{}", a_minus.name(x), a_minus.name(y)))
                .collect();
            failures.push(format!(
                "partial isomorphism {{{}}} extends to no automorphism",
                desc.join(" ")
            ));
        }
    }
    Ok(failures)
}

/// Does `b` restricted to the first `a.n()` vertices carry exactly the tuples
/// of `a`?  Vertex names are ignored; positions are what designate the copy.
fn designated_copy_matches(a: &Structure, b: &Structure) -> bool {
    if a.lang().as_ref() != b.lang().as_ref() || b.n() < a.n() {
        return false;
    }
    let a_n = a.n() as Vertex;
    for r in 0..a.lang().rels().len() {
        let inside: std::collections::BTreeSet<Vec<Vertex>> = b
            .rel_tuples(r)
            .iter()
            .filter(|t| t.iter().all(|&v| v < a_n))
            .cloned()
            .collect();
        if &inside != a.rel_tuples(r) {
            return false;
        }
    }
    true
}

/// Rebuilds `b` so that its first `a.n()` vertices reuse the names of `a`
/// and the remaining ones get fresh names that clash with nothing.
fn rename_over(a: &Structure, b: &Structure) -> Result<Structure> {
    let mut out = Structure::new(b.lang().clone());
    let mut taken: std::collections::BTreeSet<String> =
        a.vertices().map(|v| a.name(v).to_string()).collect();
    for v in b.vertices() {
        if (v as usize) < a.n() {
            out.add_vertex(a.name(v));
        } else {
            let mut name = format!("x{v}");
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            out.add_vertex(name);
        }
    }
    for r in 0..b.lang().rels().len() {
        for t in b.rel_tuples(r) {
            out.add_rel(r, t)?;
        }
    }
    Ok(out)
}

/// Smallest relational extension of `a_minus` (searching up to
/// `a_minus.n() + max_extra` vertices) in which every partial isomorphism of
/// `a_minus` extends to an automorphism.  The winner is pruned to the orbit
/// of the designated copy and re-certified.  Deterministic: among certifying
/// candidates of minimal size, the one with the fewest tuples wins, with the
/// canonical key as tie-break.
pub fn base_extension_bruteforce(
    a_minus: &Structure,
    max_extra: usize,
    budget: &Budget,
) -> Result<Structure> {
    if !a_minus.lang().funs().is_empty() {
        return Err(CoreError::Invalid(
            "base extension search expects a relational structure".into(),
        ));
    }
    if a_minus.lang().has_order() {
        return Err(CoreError::Invalid(
            "base extension search expects an unordered structure".into(),
        ));
    }
    let pisos = partial_isomorphisms(a_minus, budget)?;
    let lang = Arc::new(a_minus.lang().as_ref().clone());
    for n in a_minus.n()..=a_minus.n() + max_extra {
        let mut best: Option<(usize, fam_core::CanonKey, Structure)> = None;
        let mut search_err: Option<CoreError> = None;
        for_each_structure(&lang, n, budget, |cand| {
            if !designated_copy_matches(a_minus, cand) {
                return true;
            }
            let auts = match automorphisms(cand, budget) {
                Ok(a) => a,
                Err(e) => {
                    search_err = Some(e);
                    return false;
                }
            };
            if !pisos.iter().all(|p| extends_to_some(p, &auts)) {
                return true;
            }
            let tuples: usize = (0..lang.rels().len()).map(|r| cand.rel_tuples(r).len()).sum();
            let key = match canonical_key(cand, budget) {
                Ok(k) => k,
                Err(e) => {
                    search_err = Some(e);
                    return false;
                }
            };
            let better = match &best {
                None => true,
                Some((bt, bk, _)) => (tuples, &key) < (*bt, bk),
            };
            if better {
                best = Some((tuples, key, cand.clone()));
            }
            true
        })?;
        if let Some(e) = search_err {
            return Err(e);
        }
        if let Some((_, _, winner)) = best {
            let named = rename_over(a_minus, &winner)?;
            return prune_to_orbit(a_minus, named, budget);
        }
    }
    Err(CoreError::Budget {
        what: "base extension vertex search",
        limit: (a_minus.n() + max_extra) as u64,
    })
}

/// Restricts `b` to the vertices some automorphism maps into the designated
/// copy, then re-certifies the extension property on the result.
fn prune_to_orbit(a_minus: &Structure, b: Structure, budget: &Budget) -> Result<Structure> {
    let a_n = a_minus.n() as Vertex;
    let auts = automorphisms(&b, budget)?;
    let keep: std::collections::BTreeSet<Vertex> = b
        .vertices()
        .filter(|&v| auts.iter().any(|g| g[v as usize] < a_n))
        .collect();
    if keep.len() == b.n() {
        return Ok(b);
    }
    let (pruned, _) = b.induced_raw(&keep);
    let failures = certify_extension_property(a_minus, &pruned, budget)?;
    if !failures.is_empty() {
        return Err(CoreError::Invalid(format!(
            "pruning broke the extension property: {}",
            failures.join("; ")
        )));
    }
    Ok(pruned)
}

/// A certified base for the valuation construction: the original structure
/// `a` (unary functions allowed), its relational encoding, an extension of
/// that encoding with the extension property, and the extension's
/// automorphism group in a fixed enumeration order.
#[derive(Debug, Clone)]
pub struct EppaBase {
    a: Structure,
    reduct: RelationalReduct,
    b_minus: Structure,
    auts: Vec<VertexMap>,
}

impl EppaBase {
    /// Wraps a user-supplied relational extension after certifying it.
    pub fn from_parts(a: Structure, b_minus: Structure, budget: &Budget) -> Result<EppaBase> {
        let reduct = relational_reduct(&a)?;
        if b_minus.n() > 31 {
            return Err(CoreError::Budget {
                what: "base extension vertices",
                limit: 31,
            });
        }
        let failures = certify_extension_property(reduct.structure(), &b_minus, budget)?;
        if !failures.is_empty() {
            return Err(CoreError::Invalid(format!(
                "supplied base is not an extension witness: {}",
                failures.join("; ")
            )));
        }
        let b_minus = prune_to_orbit(reduct.structure(), b_minus, budget)?;
        let auts = automorphisms(&b_minus, budget)?;
        Ok(EppaBase {
            a,
            reduct,
            b_minus,
            auts,
        })
    }

    /// Builds the base by brute-force search from `a` alone.
    pub fn by_search(a: Structure, max_extra: usize, budget: &Budget) -> Result<EppaBase> {
        let reduct = relational_reduct(&a)?;
        let b_minus = base_extension_bruteforce(reduct.structure(), max_extra, budget)?;
        EppaBase::from_parts(a, b_minus, budget)
    }

    /// The original structure, with its functions.
    pub fn a(&self) -> &Structure {
        &self.a
    }

    /// Number of vertices of the original structure; its vertices are the
    /// first `a_n()` vertices of the extension.
    pub fn a_n(&self) -> usize {
        self.a.n()
    }

    /// The relational encoding of the original structure.
    pub fn reduct(&self) -> &RelationalReduct {
        &self.reduct
    }

    /// The certified relational extension.
    pub fn b_minus(&self) -> &Structure {
        &self.b_minus
    }

    /// Its automorphism group, in deterministic enumeration order.
    pub fn auts(&self) -> &[VertexMap] {
        &self.auts
    }
}
