//! Valuation functions and valuation structures over a certified base.
//!
//! A valuation function for a vertex `b` of the base extension assigns to
//! every big set `S` a number: `0` when `b ∉ S` and a value in `1..|S|`
//! when `b ∈ S`.  Two vertex–function pairs are *generic* when they are
//! equal or have distinct vertices and differ on every big set containing
//! both.
//!
//! A valuation rooted at `b` is a copy of a point closure of the original
//! structure, transported to the base extension: pick an automorphism `α`
//! of the extension sending `b` into the designated copy, take the closure
//! of `α(b)` there, pull its structure back along `α`, and decorate every
//! carried vertex with a valuation function, pairwise generically.  The
//! vertices of the extension built in the next module are exactly these
//! valuations.

use std::collections::{BTreeMap, BTreeSet};

use fam_core::{fmt, Budget, CoreError, Meter, Result, Structure, Vertex, VertexMap};

use crate::base::EppaBase;
use crate::bigsets::{apply_to_mask, BigSetFamily};

/// A valuation function: its vertex and one value per big set, aligned with
/// `BigSetFamily::sets()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ValuationFn {
    base: Vertex,
    values: Vec<u16>,
}

impl ValuationFn {
    pub fn new(base: Vertex, values: Vec<u16>, family: &BigSetFamily) -> Result<ValuationFn> {
        if values.len() != family.len() {
            return Err(CoreError::Invalid(format!(
                "valuation function has {} values for {} big sets",
                values.len(),
                family.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            let ok = if family.contains(i, base) {
                v >= 1 && (v as u32) < family.size_of(i)
            } else {
                v == 0
            };
            if !ok {
                return Err(CoreError::Invalid(format!(
                    "value {v} out of range on big set {i} for vertex #{base}"
                )));
            }
        }
        Ok(ValuationFn { base, values })
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn value(&self, set_index: usize) -> u16 {
        self.values[set_index]
    }

    /// Identity of the pair, for keys and lookups.
    pub fn id(&self) -> (Vertex, Vec<u16>) {
        (self.base, self.values.clone())
    }

    /// Short printable token: vertex name followed by the values.
    pub fn token(&self, b_minus: &Structure) -> String {
        let mut t = b_minus.name(self.base).to_string();
        for v in &self.values {
            t.push('.');
            t.push_str(&v.to_string());
        }
        t
    }
}

/// Are two vertex–function pairs generic: equal, or on distinct vertices
/// with different values on every big set containing both?
pub fn generic_pair(p: &ValuationFn, q: &ValuationFn, family: &BigSetFamily) -> bool {
    if p == q {
        return true;
    }
    if p.base == q.base {
        return false;
    }
    (0..family.len()).all(|i| {
        !(family.contains(i, p.base) && family.contains(i, q.base)) || p.values[i] != q.values[i]
    })
}

/// Every valuation function for `base`: the product of `1..|S|` over the big
/// sets containing it, zero elsewhere.  Deterministic (odometer order).
pub fn valuation_fns_for(
    base: Vertex,
    family: &BigSetFamily,
    budget: &Budget,
) -> Result<Vec<ValuationFn>> {
    let mut count: u64 = 1;
    for i in 0..family.len() {
        if family.contains(i, base) {
            count = count.saturating_mul(family.size_of(i) as u64 - 1);
        }
    }
    budget.check_steps(count)?;
    let mut out = Vec::new();
    let mut values = vec![0u16; family.len()];
    for (i, v) in values.iter_mut().enumerate() {
        if family.contains(i, base) {
            *v = 1;
        }
    }
    loop {
        out.push(ValuationFn {
            base,
            values: values.clone(),
        });
        // Advance the odometer over the sets containing `base`.
        let mut i = family.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if !family.contains(i, base) {
                continue;
            }
            if (values[i] as u32) + 1 < family.size_of(i) {
                values[i] += 1;
                break;
            }
            values[i] = 1;
        }
    }
}

/// The carried vertex set and transported structure of a valuation, before
/// valuation functions are chosen: `m[i]` is the base-extension vertex of
/// slot `i`, and `structure` is the pulled-back point closure on those
/// slots (vertex `i` of `structure` is slot `i`).
#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub m: Vec<Vertex>,
    pub structure: Structure,
}

/// Pulls the closure of `alpha(b)` (taken in the original structure) back
/// along `alpha`, producing the carried vertex set and its structure.
/// `alpha` must map `b` into the designated copy.
pub(crate) fn pullback_shape(base: &EppaBase, alpha: &VertexMap, b: Vertex) -> Result<Shape> {
    let a = base.a();
    let target_root = alpha[b as usize];
    if target_root as usize >= base.a_n() {
        return Err(CoreError::Invalid(format!(
            "automorphism does not carry vertex #{b} into the designated copy"
        )));
    }
    let target = a.closure_set([target_root]);
    let (cl, old_of_new) = a.induced(&target)?;
    // Invert alpha on the target: slot vertices are the preimages.
    let mut pre = vec![None; base.b_minus().n()];
    for (x, &ax) in alpha.iter().enumerate() {
        pre[ax as usize] = Some(x as Vertex);
    }
    let mut m: Vec<Vertex> = target
        .iter()
        .map(|&t| pre[t as usize].expect("automorphisms are onto"))
        .collect();
    m.sort_unstable();
    let slot_of: BTreeMap<Vertex, usize> = m.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // cl vertex i corresponds to original vertex old_of_new[i], whose slot is
    // the preimage under alpha.
    let slot_of_cl: Vec<usize> = old_of_new
        .iter()
        .map(|&orig| slot_of[&pre[orig as usize].expect("automorphisms are onto")])
        .collect();
    let mut s = Structure::new(a.lang().clone());
    for &v in &m {
        s.add_vertex(base.b_minus().name(v));
    }
    for r in 0..a.lang().rels().len() {
        for t in cl.rel_tuples(r) {
            let mapped: Vec<Vertex> = t.iter().map(|&x| slot_of_cl[x as usize] as Vertex).collect();
            s.add_rel(r, &mapped)?;
        }
    }
    for f in 0..a.lang().funs().len() {
        for (dom, img) in cl.fun_entries(f) {
            let nd: Vec<Vertex> = dom.iter().map(|&x| slot_of_cl[x as usize] as Vertex).collect();
            let ni: BTreeSet<Vertex> = img.iter().map(|&x| slot_of_cl[x as usize] as Vertex).collect();
            s.set_fun(f, nd, ni)?;
        }
    }
    Ok(Shape { m, structure: s })
}

/// All distinct shapes rooted at `b`: one per distinct (carried set,
/// transported structure) over the eligible automorphisms.
pub(crate) fn shapes_for(base: &EppaBase, b: Vertex, _budget: &Budget) -> Result<Vec<Shape>> {
    let mut seen: BTreeMap<(Vec<Vertex>, String), Shape> = BTreeMap::new();
    for alpha in base.auts() {
        if (alpha[b as usize] as usize) >= base.a_n() {
            continue;
        }
        let shape = pullback_shape(base, alpha, b)?;
        let key = (shape.m.clone(), fmt::to_text(&shape.structure)?);
        seen.entry(key).or_insert(shape);
    }
    if seen.is_empty() {
        return Err(CoreError::Invalid(format!(
            "no automorphism carries vertex #{b} into the designated copy; prune the base first"
        )));
    }
    Ok(seen.into_values().collect())
}

/// Reports on the shapes rooted at `b`: the number of distinct carried sets,
/// and whether all eligible automorphisms that produce the same carried set
/// also produce the same transported structure.
pub fn shape_consistency(base: &EppaBase, b: Vertex, budget: &Budget) -> Result<(usize, bool)> {
    let _ = budget;
    let mut by_m: BTreeMap<Vec<Vertex>, BTreeSet<String>> = BTreeMap::new();
    for alpha in base.auts() {
        if (alpha[b as usize] as usize) >= base.a_n() {
            continue;
        }
        let shape = pullback_shape(base, alpha, b)?;
        by_m
            .entry(shape.m.clone())
            .or_default()
            .insert(fmt::to_text(&shape.structure)?);
    }
    let consistent = by_m.values().all(|texts| texts.len() == 1);
    Ok((by_m.len(), consistent))
}

/// Ordering/lookup key of a valuation: root pair identity, all pair
/// identities, and the rendered structure.
pub type ValKey = ((Vertex, Vec<u16>), Vec<(Vertex, Vec<u16>)>, String);

/// A valuation: a root slot, decorated carried vertices (one valuation
/// function per slot, ascending by pair identity), and the transported
/// structure whose vertex `i` is slot `i`.
#[derive(Debug, Clone)]
pub struct Valuation {
    root: usize,
    pairs: Vec<ValuationFn>,
    structure: Structure,
}

impl Valuation {
    /// Decorates a shape with valuation functions.  `chis[i]` must sit on
    /// `shape.m[i]`, and the functions must be pairwise generic.
    pub(crate) fn assemble(
        shape: &Shape,
        root: Vertex,
        chis: Vec<ValuationFn>,
        family: &BigSetFamily,
        b_minus: &Structure,
    ) -> Result<Valuation> {
        if chis.len() != shape.m.len() {
            return Err(CoreError::Invalid("one valuation function per slot".into()));
        }
        for (i, chi) in chis.iter().enumerate() {
            if chi.base != shape.m[i] {
                return Err(CoreError::Invalid(format!(
                    "valuation function for slot {i} sits on the wrong vertex"
                )));
            }
            for other in &chis[..i] {
                if !generic_pair(chi, other, family) {
                    return Err(CoreError::Invalid(
                        "valuation functions are not pairwise generic".into(),
                    ));
                }
            }
        }
        let root_slot = shape
            .m
            .iter()
            .position(|&v| v == root)
            .ok_or_else(|| CoreError::Invalid("root vertex is not a carried slot".into()))?;
        // Rebuild the structure with pair tokens as names (carried sets hold
        // one pair per vertex, so slot order already sorts by identity).
        let mut s = Structure::new(shape.structure.lang().clone());
        for chi in &chis {
            s.add_vertex(chi.token(b_minus));
        }
        for r in 0..s.lang().rels().len() {
            for t in shape.structure.rel_tuples(r) {
                s.add_rel(r, t)?;
            }
        }
        for f in 0..s.lang().funs().len() {
            for (dom, img) in shape.structure.fun_entries(f) {
                s.set_fun(f, dom.clone(), img.clone())?;
            }
        }
        Ok(Valuation {
            root: root_slot,
            pairs: chis,
            structure: s,
        })
    }

    /// Slot index of the root pair.
    pub fn root_slot(&self) -> usize {
        self.root
    }

    /// Base-extension vertex the valuation is rooted at.
    pub fn root_base(&self) -> Vertex {
        self.pairs[self.root].base
    }

    pub fn root_fn(&self) -> &ValuationFn {
        &self.pairs[self.root]
    }

    pub fn pairs(&self) -> &[ValuationFn] {
        &self.pairs
    }

    /// The transported structure; vertex `i` carries `pairs()[i]`.
    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Slot of an exact pair, if carried.
    pub fn slot_of(&self, pair: &ValuationFn) -> Option<usize> {
        self.pairs.iter().position(|p| p == pair)
    }

    /// Slot of the unique pair on a given vertex, if carried.
    pub fn slot_on(&self, base: Vertex) -> Option<usize> {
        self.pairs.iter().position(|p| p.base == base)
    }

    pub fn key(&self) -> ValKey {
        (
            self.pairs[self.root].id(),
            self.pairs.iter().map(|p| p.id()).collect(),
            fmt::to_text(&self.structure).expect("valuation structures render"),
        )
    }

    /// Printable name: root token, then the other carried tokens.
    pub fn name(&self, b_minus: &Structure) -> String {
        let mut name = self.pairs[self.root].token(b_minus);
        let rest: Vec<String> = self
            .pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.root)
            .map(|(_, p)| p.token(b_minus))
            .collect();
        if !rest.is_empty() {
            name.push('|');
            name.push_str(&rest.join("+"));
        }
        name
    }

    /// The valuation carried by the closure of slot `idx`: same decorations,
    /// structure restricted to the closure, rooted at `idx`'s pair.
    pub fn closure_at(&self, idx: usize) -> Valuation {
        let cl = self.structure.closure_set([idx as Vertex]);
        let slots: Vec<usize> = cl.iter().map(|&v| v as usize).collect();
        let (ind, _) = self.structure.induced_raw(&cl);
        let pairs: Vec<ValuationFn> = slots.iter().map(|&i| self.pairs[i].clone()).collect();
        let root = slots
            .iter()
            .position(|&i| i == idx)
            .expect("closures contain their seed");
        Valuation {
            root,
            pairs,
            structure: ind,
        }
    }

    /// Pair identities and rendered structure of the closure at `idx`,
    /// for substructure-equality comparisons.
    fn closure_signature(&self, idx: usize) -> (Vec<(Vertex, Vec<u16>)>, String) {
        let v = self.closure_at(idx);
        (
            v.pairs.iter().map(|p| p.id()).collect(),
            fmt::to_text(&v.structure).expect("valuation structures render"),
        )
    }
}

/// Are two valuations generic?  Every cross pair of decorations must be
/// generic; a function edge of the base extension between carried vertices
/// forces the head's pair into the tail's valuation (in both directions);
/// and a shared pair must have the same closure substructure in both.
pub fn generic_valuations(
    x: &Valuation,
    y: &Valuation,
    base: &EppaBase,
    family: &BigSetFamily,
) -> bool {
    for p in &x.pairs {
        for q in &y.pairs {
            if !generic_pair(p, q, family) {
                return false;
            }
        }
    }
    let bm = base.b_minus();
    for (f, _) in base.a().lang().funs().iter().enumerate() {
        let rf = base.reduct().rel_of_fun(f);
        let tuples = bm.rel_tuples(rf);
        for p in &x.pairs {
            for q in &y.pairs {
                if tuples.contains(&vec![p.base, q.base]) && x.slot_of(q).is_none() {
                    return false;
                }
                if tuples.contains(&vec![q.base, p.base]) && y.slot_of(p).is_none() {
                    return false;
                }
            }
        }
    }
    for (i, p) in x.pairs.iter().enumerate() {
        if let Some(j) = y.slot_of(p) {
            if x.closure_signature(i) != y.closure_signature(j) {
                return false;
            }
        }
    }
    true
}

/// Is a whole set of valuations pairwise generic?
pub fn generic_set(vals: &[&Valuation], base: &EppaBase, family: &BigSetFamily) -> bool {
    for (i, x) in vals.iter().enumerate() {
        for y in &vals[i + 1..] {
            if !generic_valuations(x, y, base, family) {
                return false;
            }
        }
    }
    true
}

/// Every valuation rooted at `b`: all shapes, all pairwise-generic
/// decorations, sorted by key.
pub fn valuations_rooted_at(
    base: &EppaBase,
    family: &BigSetFamily,
    b: Vertex,
    budget: &Budget,
) -> Result<Vec<Valuation>> {
    let mut meter = Meter::new(budget);
    let mut out = Vec::new();
    for shape in shapes_for(base, b, budget)? {
        let options: Vec<Vec<ValuationFn>> = shape
            .m
            .iter()
            .map(|&v| valuation_fns_for(v, family, budget))
            .collect::<Result<_>>()?;
        let mut chosen: Vec<ValuationFn> = Vec::with_capacity(shape.m.len());
        assemble_rec(
            &shape,
            b,
            &options,
            &mut chosen,
            base,
            family,
            &mut out,
            &mut meter,
        )?;
    }
    out.sort_by_key(|v| v.key());
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assemble_rec(
    shape: &Shape,
    root: Vertex,
    options: &[Vec<ValuationFn>],
    chosen: &mut Vec<ValuationFn>,
    base: &EppaBase,
    family: &BigSetFamily,
    out: &mut Vec<Valuation>,
    meter: &mut Meter,
) -> Result<()> {
    if chosen.len() == options.len() {
        out.push(Valuation::assemble(
            shape,
            root,
            chosen.clone(),
            family,
            base.b_minus(),
        )?);
        return Ok(());
    }
    for cand in &options[chosen.len()] {
        meter.step()?;
        if chosen.iter().all(|c| generic_pair(cand, c, family)) {
            chosen.push(cand.clone());
            assemble_rec(shape, root, options, chosen, base, family, out, meter)?;
            chosen.pop();
        }
    }
    Ok(())
}

/// Image of a big set under an automorphism, as a family index.
pub fn image_set_index(family: &BigSetFamily, g: &VertexMap, i: usize) -> usize {
    family
        .index_of(apply_to_mask(g, family.sets()[i]))
        .expect("the big set family is invariant under automorphisms")
}

/// Transports a pair through a base automorphism and per-set value
/// correspondences: the vertex moves along `g` and the value on each big set
/// moves to the set's image under the correspondence chosen for it.
pub fn apply_pair(
    g: &VertexMap,
    thetas: &[Vec<u16>],
    p: &ValuationFn,
    family: &BigSetFamily,
) -> Result<ValuationFn> {
    let mut values = vec![0u16; family.len()];
    for s in 0..family.len() {
        values[image_set_index(family, g, s)] = thetas[s][p.values[s] as usize];
    }
    ValuationFn::new(g[p.base as usize], values, family)
}

/// Every pair: each base-extension vertex with each of its valuation
/// functions, ascending.
pub fn pair_universe(
    base: &EppaBase,
    family: &BigSetFamily,
    budget: &Budget,
) -> Result<Vec<ValuationFn>> {
    let mut out = Vec::new();
    for v in 0..base.b_minus().n() as Vertex {
        out.extend(valuation_fns_for(v, family, budget)?);
    }
    Ok(out)
}

impl Valuation {
    /// Transports the whole valuation: every pair moves through
    /// [`apply_pair`], slots are re-sorted by pair identity, and the
    /// structure is carried along.
    pub fn transport(
        &self,
        g: &VertexMap,
        thetas: &[Vec<u16>],
        family: &BigSetFamily,
        b_minus: &Structure,
    ) -> Result<Valuation> {
        let mapped: Vec<ValuationFn> = self
            .pairs
            .iter()
            .map(|p| apply_pair(g, thetas, p, family))
            .collect::<Result<_>>()?;
        let mut order: Vec<usize> = (0..mapped.len()).collect();
        order.sort_by_key(|&i| mapped[i].id());
        let mut new_of_old = vec![0usize; mapped.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let pairs: Vec<ValuationFn> = order.iter().map(|&old| mapped[old].clone()).collect();
        for (i, p) in pairs.iter().enumerate() {
            for q in &pairs[..i] {
                if !generic_pair(p, q, family) {
                    return Err(CoreError::Invalid(
                        "transported pairs are not pairwise generic".into(),
                    ));
                }
            }
        }
        let mut s = Structure::new(self.structure.lang().clone());
        for p in &pairs {
            s.add_vertex(p.token(b_minus));
        }
        for r in 0..s.lang().rels().len() {
            for t in self.structure.rel_tuples(r) {
                let mapped_t: Vec<Vertex> =
                    t.iter().map(|&x| new_of_old[x as usize] as Vertex).collect();
                s.add_rel(r, &mapped_t)?;
            }
        }
        for f in 0..s.lang().funs().len() {
            for (dom, img) in self.structure.fun_entries(f) {
                let nd: Vec<Vertex> =
                    dom.iter().map(|&x| new_of_old[x as usize] as Vertex).collect();
                let ni: BTreeSet<Vertex> =
                    img.iter().map(|&x| new_of_old[x as usize] as Vertex).collect();
                s.set_fun(f, nd, ni)?;
            }
        }
        Ok(Valuation {
            root: new_of_old[self.root],
            pairs,
            structure: s,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::Language;
    use std::sync::Arc;

    fn fun_edge_base() -> EppaBase {
        let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
        let mut a = Structure::new(lang);
        a.add_vertex("a");
        a.add_vertex("b");
        a.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
        EppaBase::by_search(a, 3, &Budget::default()).unwrap()
    }

    #[test]
    fn valuation_functions_respect_the_range_rules() {
        let base = fun_edge_base();
        let fam = BigSetFamily::classify(&base, &Budget::default()).unwrap();
        // One big set (all three vertices, size 3): every vertex gets 1 or 2.
        for v in 0..3u32 {
            let fns = valuation_fns_for(v, &fam, &Budget::default()).unwrap();
            assert_eq!(fns.len(), 2);
            assert_eq!(fns[0].values(), &[1]);
            assert_eq!(fns[1].values(), &[2]);
        }
        assert!(ValuationFn::new(0, vec![0], &fam).is_err());
        assert!(ValuationFn::new(0, vec![3], &fam).is_err());
    }

    #[test]
    fn pair_genericity_matches_the_definition() {
        let base = fun_edge_base();
        let fam = BigSetFamily::classify(&base, &Budget::default()).unwrap();
        let p = ValuationFn::new(0, vec![1], &fam).unwrap();
        let q = ValuationFn::new(0, vec![2], &fam).unwrap();
        let r = ValuationFn::new(1, vec![1], &fam).unwrap();
        let s = ValuationFn::new(1, vec![2], &fam).unwrap();
        assert!(generic_pair(&p, &p, &fam)); // equal pairs
        assert!(!generic_pair(&p, &q, &fam)); // same vertex, different functions
        assert!(!generic_pair(&p, &r, &fam)); // shared big set, same value
        assert!(generic_pair(&p, &s, &fam)); // values differ on the shared set
    }

    #[test]
    fn shapes_depend_on_the_chosen_automorphism_but_consistently() {
        let base = fun_edge_base();
        let budget = Budget::default();
        // Vertex 0 sits in the designated copy two ways: identically (carrying
        // its two-vertex closure) and rotated onto the bare endpoint.
        let (shapes0, consistent0) = shape_consistency(&base, 0, &budget).unwrap();
        assert_eq!(shapes0, 2);
        assert!(consistent0);
        for b in 0..3u32 {
            let (count, consistent) = shape_consistency(&base, b, &budget).unwrap();
            assert_eq!(count, 2);
            assert!(consistent);
        }
    }

    #[test]
    fn each_triangle_vertex_roots_four_valuations() {
        let base = fun_edge_base();
        let fam = BigSetFamily::classify(&base, &Budget::default()).unwrap();
        for b in 0..3u32 {
            let vals = valuations_rooted_at(&base, &fam, b, &Budget::default()).unwrap();
            // Two decorations of the bare point plus two of the function edge
            // (the two slot decorations must differ on the big set).
            assert_eq!(vals.len(), 4);
            let sizes: Vec<usize> = vals.iter().map(|v| v.len()).collect();
            assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 2);
            assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 2);
            for v in &vals {
                assert_eq!(v.root_base(), b);
                // The root generates the whole valuation.
                assert_eq!(v.closure_at(v.root_slot()).len(), v.len());
            }
        }
    }

    #[test]
    fn function_edges_force_heads_into_tails() {
        let base = fun_edge_base();
        let fam = BigSetFamily::classify(&base, &Budget::default()).unwrap();
        let budget = Budget::default();
        let at0 = valuations_rooted_at(&base, &fam, 0, &budget).unwrap();
        let at1 = valuations_rooted_at(&base, &fam, 1, &budget).unwrap();
        let edge0: Vec<&Valuation> = at0.iter().filter(|v| v.len() == 2).collect();
        let point1: Vec<&Valuation> = at1.iter().filter(|v| v.len() == 1).collect();
        // An edge valuation at 0 carries a pair on vertex 1; the point
        // valuation at 1 is generic with it exactly when it carries that
        // same pair.
        for e in &edge0 {
            let carried = &e.pairs()[e.slot_on(1).unwrap()];
            for p in &point1 {
                let expected = p.pairs()[0] == *carried;
                assert_eq!(generic_valuations(e, p, &base, &fam), expected);
            }
        }
        // Point valuations at 1 are never generic with point valuations at 0:
        // the base has a function edge from 0 to 1, so the pair on 1 must be
        // carried by the valuation at 0, and a point valuation carries none.
        let point0: Vec<&Valuation> = at0.iter().filter(|v| v.len() == 1).collect();
        for p0 in &point0 {
            for p1 in &point1 {
                assert!(!generic_valuations(p0, p1, &base, &fam));
            }
        }
    }
}
