//! Finite structures over a [`Language`]: vertex set, relation tuple sets, and
//! symmetric partial functions mapping ordered domain tuples to unordered
//! image sets.
//!
//! Vertices are dense `u32` indices internally; every vertex carries an
//! external name used by the text format.  All containers are B-trees so that
//! iteration order — and therefore every derived artifact — is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::lang::{FunId, Language, RelId, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    lang: Arc<Language>,
    names: Vec<String>,
    rels: Vec<BTreeSet<Vec<Vertex>>>,
    funs: Vec<BTreeMap<Vec<Vertex>, BTreeSet<Vertex>>>,
}

impl Structure {
    pub fn new(lang: Arc<Language>) -> Structure {
        let nr = lang.rels().len();
        let nf = lang.funs().len();
        Structure {
            lang,
            names: Vec::new(),
            rels: vec![BTreeSet::new(); nr],
            funs: vec![BTreeMap::new(); nf],
        }
    }

    /// Structure with `n` vertices named `v0..v{n-1}`.
    pub fn with_vertices(lang: Arc<Language>, n: usize) -> Structure {
        let mut s = Structure::new(lang);
        for i in 0..n {
            s.add_vertex(format!("v{i}"));
        }
        s
    }

    pub fn lang(&self) -> &Arc<Language> {
        &self.lang
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.names.len() as Vertex
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<Vertex> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Vertex)
            .ok_or_else(|| CoreError::UnknownVertex(name.to_string()))
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Vertex {
        self.names.push(name.into());
        (self.names.len() - 1) as Vertex
    }

    fn check_tuple(&self, tuple: &[Vertex]) -> Result<()> {
        for &v in tuple {
            if v as usize >= self.names.len() {
                return Err(CoreError::UnknownVertex(format!("#{v}")));
            }
        }
        Ok(())
    }

    pub fn add_rel(&mut self, rel: RelId, tuple: &[Vertex]) -> Result<()> {
        let sym = &self.lang.rels()[rel];
        if tuple.len() != sym.arity {
            return Err(CoreError::Arity {
                sym: sym.name.clone(),
                expected: sym.arity,
                got: tuple.len(),
            });
        }
        self.check_tuple(tuple)?;
        self.rels[rel].insert(tuple.to_vec());
        Ok(())
    }

    /// Installs `F(dom) = img`.  Rejects arity violations, oversized or empty
    /// images, and conflicting entries for the same domain tuple.
    pub fn set_fun(&mut self, fun: FunId, dom: Vec<Vertex>, img: BTreeSet<Vertex>) -> Result<()> {
        let sym = &self.lang.funs()[fun];
        if dom.len() != sym.dom_arity {
            return Err(CoreError::Arity {
                sym: sym.name.clone(),
                expected: sym.dom_arity,
                got: dom.len(),
            });
        }
        self.check_tuple(&dom)?;
        for &v in &img {
            if v as usize >= self.names.len() {
                return Err(CoreError::UnknownVertex(format!("#{v}")));
            }
        }
        if img.is_empty() || img.len() > sym.range_size {
            return Err(CoreError::Invalid(format!(
                "image of {} must have between 1 and {} vertices, got {}",
                sym.name,
                sym.range_size,
                img.len()
            )));
        }
        if let Some(old) = self.funs[fun].get(&dom) {
            if *old != img {
                return Err(CoreError::Invalid(format!(
                    "conflicting entries of {} on one domain tuple",
                    sym.name
                )));
            }
        }
        self.funs[fun].insert(dom, img);
        Ok(())
    }

    pub fn rel_tuples(&self, rel: RelId) -> &BTreeSet<Vec<Vertex>> {
        &self.rels[rel]
    }

    pub fn fun_entries(&self, fun: FunId) -> &BTreeMap<Vec<Vertex>, BTreeSet<Vertex>> {
        &self.funs[fun]
    }

    pub fn fun_value(&self, fun: FunId, dom: &[Vertex]) -> Option<&BTreeSet<Vertex>> {
        self.funs[fun].get(dom)
    }

    /// Total number of relation tuples plus function entries.
    pub fn tuple_count(&self) -> usize {
        self.rels.iter().map(|r| r.len()).sum::<usize>()
            + self.funs.iter().map(|f| f.len()).sum::<usize>()
    }

    // ----- order handling ---------------------------------------------------

    /// Replaces the order relation with the strict pairs of `seq` (least
    /// first).  `seq` must list every vertex exactly once.
    pub fn set_order(&mut self, seq: &[Vertex]) -> Result<()> {
        let o = self
            .lang
            .order_rel()
            .ok_or_else(|| CoreError::Invalid("language has no order".into()))?;
        let mut seen = vec![false; self.n()];
        for &v in seq {
            if v as usize >= self.n() || seen[v as usize] {
                return Err(CoreError::NotTotalOrder("bad order sequence".into()));
            }
            seen[v as usize] = true;
        }
        if seq.len() != self.n() {
            return Err(CoreError::NotTotalOrder("order must list every vertex".into()));
        }
        self.rels[o].clear();
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                self.rels[o].insert(vec![seq[i], seq[j]]);
            }
        }
        Ok(())
    }

    /// Vertices sorted by the order relation, checking it is a strict total
    /// order (irreflexive, antisymmetric, transitive, total).
    pub fn order_sequence(&self) -> Result<Vec<Vertex>> {
        let o = self
            .lang
            .order_rel()
            .ok_or_else(|| CoreError::Invalid("language has no order".into()))?;
        let pairs = &self.rels[o];
        let n = self.n();
        let mut below = vec![0usize; n];
        for t in pairs {
            let (u, v) = (t[0], t[1]);
            if u == v {
                return Err(CoreError::NotTotalOrder(format!("loop at {}", self.name(u))));
            }
            if pairs.contains(&vec![v, u]) {
                return Err(CoreError::NotTotalOrder(format!(
                    "both directions between {} and {}",
                    self.name(u),
                    self.name(v)
                )));
            }
            below[v as usize] += 1;
        }
        let all_pairs = n * n.saturating_sub(1) / 2;
        if pairs.len() != all_pairs {
            return Err(CoreError::NotTotalOrder(format!(
                "expected {} comparable pairs, found {}",
                all_pairs,
                pairs.len()
            )));
        }
        // With all pairs comparable and antisymmetric, in-degrees 0..n-1 give
        // the sort; transitivity follows from the degree sequence being a
        // permutation of 0..n-1.
        let mut seq: Vec<Vertex> = (0..n as Vertex).collect();
        seq.sort_by_key(|&v| below[v as usize]);
        for (i, &v) in seq.iter().enumerate() {
            if below[v as usize] != i {
                return Err(CoreError::NotTotalOrder("not transitive".into()));
            }
        }
        Ok(seq)
    }

    /// Position of each vertex in the total order.
    pub fn order_rank(&self) -> Result<Vec<usize>> {
        let seq = self.order_sequence()?;
        let mut rank = vec![0usize; self.n()];
        for (i, &v) in seq.iter().enumerate() {
            rank[v as usize] = i;
        }
        Ok(rank)
    }

    pub fn cmp_order(&self, u: Vertex, v: Vertex) -> Result<std::cmp::Ordering> {
        let rank = self.order_rank()?;
        Ok(rank[u as usize].cmp(&rank[v as usize]))
    }

    /// Same structure over the language without the order relation.
    pub fn unordered_reduct(&self) -> Structure {
        match self.lang.order_rel() {
            None => self.clone(),
            Some(o) => {
                let lang = Arc::new(self.lang.without_order());
                let rels = self
                    .rels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != o)
                    .map(|(_, r)| r.clone())
                    .collect();
                Structure {
                    lang,
                    names: self.names.clone(),
                    rels,
                    funs: self.funs.clone(),
                }
            }
        }
    }

    /// Copy of `self` over the ordered version of its language, ordered by
    /// `seq`.
    pub fn with_order(&self, seq: &[Vertex]) -> Result<Structure> {
        if self.lang.has_order() {
            let mut s = self.clone();
            s.set_order(seq)?;
            return Ok(s);
        }
        let lang = Arc::new(self.lang.ordered()?);
        let mut rels = self.rels.clone();
        rels.push(BTreeSet::new());
        let mut s = Structure {
            lang,
            names: self.names.clone(),
            rels,
            funs: self.funs.clone(),
        };
        s.set_order(seq)?;
        Ok(s)
    }

    // ----- validation -------------------------------------------------------

    /// Structural well-formedness: tuple arities and vertex ranges hold by
    /// construction; this re-checks them, plus order totality when the
    /// language is ordered.  Image sets may be smaller than the declared range
    /// size (completion fills domains with collapsed images); use
    /// [`Structure::validate_exact_images`] for the strict discipline.
    pub fn validate(&self) -> Result<()> {
        for (i, tuples) in self.rels.iter().enumerate() {
            let sym = &self.lang.rels()[i];
            for t in tuples {
                if t.len() != sym.arity {
                    return Err(CoreError::Arity {
                        sym: sym.name.clone(),
                        expected: sym.arity,
                        got: t.len(),
                    });
                }
                self.check_tuple(t)?;
            }
        }
        for (i, entries) in self.funs.iter().enumerate() {
            let sym = &self.lang.funs()[i];
            for (dom, img) in entries {
                if dom.len() != sym.dom_arity {
                    return Err(CoreError::Arity {
                        sym: sym.name.clone(),
                        expected: sym.dom_arity,
                        got: dom.len(),
                    });
                }
                self.check_tuple(dom)?;
                if img.is_empty() || img.len() > sym.range_size {
                    return Err(CoreError::Invalid(format!(
                        "image size {} of {} out of range",
                        img.len(),
                        sym.name
                    )));
                }
                for &v in img {
                    if v as usize >= self.n() {
                        return Err(CoreError::UnknownVertex(format!("#{v}")));
                    }
                }
            }
        }
        if self.lang.has_order() {
            self.order_sequence()?;
        }
        Ok(())
    }

    /// Every image set has exactly the declared number of elements.
    pub fn validate_exact_images(&self) -> Result<()> {
        self.validate()?;
        for (i, entries) in self.funs.iter().enumerate() {
            let sym = &self.lang.funs()[i];
            for img in entries.values() {
                if img.len() != sym.range_size {
                    return Err(CoreError::Invalid(format!(
                        "image of {} has {} vertices, expected exactly {}",
                        sym.name,
                        img.len(),
                        sym.range_size
                    )));
                }
            }
        }
        Ok(())
    }

    // ----- closure and substructures ---------------------------------------

    /// Least function-closed superset of `seed`: whenever a domain tuple lies
    /// inside the set, its image is pulled in, to a fixpoint.
    pub fn closure_set(&self, seed: impl IntoIterator<Item = Vertex>) -> BTreeSet<Vertex> {
        let mut cl: BTreeSet<Vertex> = seed.into_iter().collect();
        loop {
            let mut grew = false;
            for entries in &self.funs {
                for (dom, img) in entries {
                    if dom.iter().all(|v| cl.contains(v)) && !img.iter().all(|v| cl.contains(v)) {
                        cl.extend(img.iter().copied());
                        grew = true;
                    }
                }
            }
            if !grew {
                return cl;
            }
        }
    }

    pub fn is_closed(&self, set: &BTreeSet<Vertex>) -> bool {
        for entries in &self.funs {
            for (dom, img) in entries {
                if dom.iter().all(|v| set.contains(v)) && !img.iter().all(|v| set.contains(v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Substructure induced on a closed vertex set, together with the
    /// inclusion embedding (mapping new indices to old).
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> Result<(Structure, Vec<Vertex>)> {
        if !self.is_closed(set) {
            let cl = self.closure_set(set.iter().copied());
            let missing: Vec<&str> = cl.difference(set).map(|&v| self.name(v)).collect();
            return Err(CoreError::NotClosed(format!(
                "missing closure vertices: {}",
                missing.join(" ")
            )));
        }
        Ok(self.induced_raw(set))
    }

    /// Induced object on an arbitrary vertex set: keeps relation tuples lying
    /// inside the set and function entries whose domain *and* image lie
    /// inside.  On closed sets this is the substructure; on non-closed sets it
    /// is a labeled pattern, not a substructure.
    pub fn induced_raw(&self, set: &BTreeSet<Vertex>) -> (Structure, Vec<Vertex>) {
        let old: Vec<Vertex> = set.iter().copied().collect();
        let mut new_of = BTreeMap::new();
        for (i, &v) in old.iter().enumerate() {
            new_of.insert(v, i as Vertex);
        }
        let mut s = Structure::new(self.lang.clone());
        for &v in &old {
            s.add_vertex(self.names[v as usize].clone());
        }
        for (r, tuples) in self.rels.iter().enumerate() {
            for t in tuples {
                if t.iter().all(|v| new_of.contains_key(v)) {
                    let nt: Vec<Vertex> = t.iter().map(|v| new_of[v]).collect();
                    s.rels[r].insert(nt);
                }
            }
        }
        for (f, entries) in self.funs.iter().enumerate() {
            for (dom, img) in entries {
                if dom.iter().all(|v| new_of.contains_key(v))
                    && img.iter().all(|v| new_of.contains_key(v))
                {
                    let nd: Vec<Vertex> = dom.iter().map(|v| new_of[v]).collect();
                    let ni: BTreeSet<Vertex> = img.iter().map(|v| new_of[v]).collect();
                    s.funs[f].insert(nd, ni);
                }
            }
        }
        (s, old)
    }

    /// Closure of `seed` as a substructure plus the inclusion map.
    pub fn closure(&self, seed: impl IntoIterator<Item = Vertex>) -> (Structure, Vec<Vertex>) {
        let cl = self.closure_set(seed);
        self.induced_raw(&cl)
    }

    /// All distinct vertex-closures `Cl({v})`, one entry per vertex.
    pub fn vertex_closures(&self) -> Vec<BTreeSet<Vertex>> {
        self.vertices().map(|v| self.closure_set([v])).collect()
    }

    /// Renames every vertex (used to keep disjoint-union names unique).
    pub fn rename<F: FnMut(Vertex, &str) -> String>(&self, mut f: F) -> Structure {
        let mut s = self.clone();
        s.names = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| f(i as Vertex, n))
            .collect();
        s
    }
}
