//! Assembling the extension structure: its vertices are all valuations over
//! the certified base, a relation tuple is placed wherever the base has one
//! between the roots and the chosen valuations are pairwise generic, and a
//! function image is the set of closures of the root's successor slots
//! inside the valuation itself.  The input structure embeds by decorating
//! each of its point closures with the canonical rank decoration.

use std::collections::BTreeMap;

use fam_core::{identity, is_embedding, Budget, CoreError, Meter, Result, Structure, Vertex, VertexMap};

use crate::base::EppaBase;
use crate::bigsets::BigSetFamily;
use crate::valuation::{
    generic_valuations, pullback_shape, valuations_rooted_at, ValKey, Valuation, ValuationFn,
};

/// An extension structure with its certified base, big-set family, the
/// valuation carried by each vertex, and the designated embedding of the
/// input.
#[derive(Debug, Clone)]
pub struct EppaExtension {
    base: EppaBase,
    family: BigSetFamily,
    vals: Vec<Valuation>,
    index: BTreeMap<ValKey, usize>,
    c: Structure,
    phi: VertexMap,
    phi_inv: BTreeMap<Vertex, Vertex>,
}

/// Builds the extension for `a`: certifies the supplied base (or searches
/// for one within `max_extra` additional vertices), enumerates all
/// valuations, assembles the extension structure, and verifies that the
/// rank decoration embeds `a` into it.
pub fn build_eppa_extension(
    a: &Structure,
    supplied_base: Option<Structure>,
    max_extra: usize,
    budget: &Budget,
) -> Result<EppaExtension> {
    let base = match supplied_base {
        Some(b) => EppaBase::from_parts(a.clone(), b, budget)?,
        None => EppaBase::by_search(a.clone(), max_extra, budget)?,
    };
    EppaExtension::over(base, budget)
}

impl EppaExtension {
    pub fn over(base: EppaBase, budget: &Budget) -> Result<EppaExtension> {
        let family = BigSetFamily::classify(&base, budget)?;
        let bm_n = base.b_minus().n();

        // Every valuation, globally ordered by key; remember each root's
        // vertices for relation placement.
        let mut vals: Vec<Valuation> = Vec::new();
        for b in 0..bm_n as Vertex {
            vals.extend(valuations_rooted_at(&base, &family, b, budget)?);
        }
        vals.sort_by_key(|v| v.key());
        let mut index: BTreeMap<ValKey, usize> = BTreeMap::new();
        for (i, v) in vals.iter().enumerate() {
            if index.insert(v.key(), i).is_some() {
                return Err(CoreError::Invalid(
                    "two distinct valuations share a key".into(),
                ));
            }
        }
        let mut rooted: Vec<Vec<usize>> = vec![Vec::new(); bm_n];
        for (i, v) in vals.iter().enumerate() {
            rooted[v.root_base() as usize].push(i);
        }

        let mut c = Structure::new(base.a().lang().clone());
        let mut used_names: BTreeMap<String, usize> = BTreeMap::new();
        for v in &vals {
            let mut name = v.name(base.b_minus());
            let n = used_names.entry(name.clone()).or_insert(0);
            *n += 1;
            if *n > 1 {
                name.push('~');
                name.push_str(&n.to_string());
            }
            c.add_vertex(name);
        }

        // Relations: one tuple per base tuple and per pairwise-generic choice
        // of valuations rooted at its coordinates.
        let mut meter = Meter::new(budget);
        for r in 0..base.a().lang().rels().len() {
            for t in base.b_minus().rel_tuples(r) {
                let slots: Vec<&[usize]> = t.iter().map(|&v| &rooted[v as usize][..]).collect();
                let mut choice = vec![0usize; slots.len()];
                'combos: loop {
                    meter.step()?;
                    let picked: Vec<usize> = choice.iter().zip(&slots).map(|(&i, s)| s[i]).collect();
                    let mut distinct: Vec<usize> = picked.clone();
                    distinct.sort_unstable();
                    distinct.dedup();
                    let ok = {
                        let mut generic = true;
                        'pairs: for (i, &x) in distinct.iter().enumerate() {
                            for &y in &distinct[i + 1..] {
                                if !generic_valuations(&vals[x], &vals[y], &base, &family) {
                                    generic = false;
                                    break 'pairs;
                                }
                            }
                        }
                        generic
                    };
                    if ok {
                        let tuple: Vec<Vertex> = picked.iter().map(|&i| i as Vertex).collect();
                        c.add_rel(r, &tuple)?;
                    }
                    // Advance the odometer over choices.
                    let mut i = slots.len();
                    loop {
                        if i == 0 {
                            break 'combos;
                        }
                        i -= 1;
                        if choice[i] + 1 < slots[i].len() {
                            choice[i] += 1;
                            break;
                        }
                        choice[i] = 0;
                    }
                }
            }
        }

        // Functions: the image of a vertex is the set of closures of its
        // root's successor slots, which must themselves be vertices.
        for f in 0..base.a().lang().funs().len() {
            for (x, v) in vals.iter().enumerate() {
                let root = vec![v.root_slot() as Vertex];
                if let Some(img) = v.structure().fun_value(f, &root) {
                    let mut out = std::collections::BTreeSet::new();
                    for &s in img {
                        let cl = v.closure_at(s as usize);
                        let y = *index.get(&cl.key()).ok_or_else(|| {
                            CoreError::Invalid(format!(
                                "a successor closure of vertex #{x} is not a valuation vertex"
                            ))
                        })?;
                        out.insert(y as Vertex);
                    }
                    c.set_fun(f, vec![x as Vertex], out)?;
                }
            }
        }

        // The designated embedding: decorate each point closure of the input
        // with ranks inside the designated copy.
        let id = identity(bm_n);
        let mut phi: VertexMap = Vec::with_capacity(base.a().n());
        for av in 0..base.a().n() as Vertex {
            let shape = pullback_shape(&base, &id, av)?;
            let chis: Vec<ValuationFn> = shape
                .m
                .iter()
                .map(|&m| rank_decoration(&family, base.a_n(), m))
                .collect::<Result<_>>()?;
            let val = Valuation::assemble(&shape, av, chis, &family, base.b_minus())?;
            let idx = *index.get(&val.key()).ok_or_else(|| {
                CoreError::Invalid(format!(
                    "the rank-decorated closure of input vertex #{av} was not enumerated"
                ))
            })?;
            phi.push(idx as Vertex);
        }
        if !is_embedding(base.a(), &c, &phi)? {
            return Err(CoreError::Invalid(
                "the rank decoration does not embed the input into the extension".into(),
            ));
        }
        let phi_inv: BTreeMap<Vertex, Vertex> = phi
            .iter()
            .enumerate()
            .map(|(a, &cv)| (cv, a as Vertex))
            .collect();

        Ok(EppaExtension {
            base,
            family,
            vals,
            index,
            c,
            phi,
            phi_inv,
        })
    }

    pub fn base(&self) -> &EppaBase {
        &self.base
    }

    pub fn family(&self) -> &BigSetFamily {
        &self.family
    }

    /// The extension structure itself.
    pub fn c(&self) -> &Structure {
        &self.c
    }

    /// The valuation carried by vertex `i` of the extension.
    pub fn val(&self, i: usize) -> &Valuation {
        &self.vals[i]
    }

    pub fn vals(&self) -> &[Valuation] {
        &self.vals
    }

    /// The designated embedding of the input into the extension.
    pub fn phi(&self) -> &VertexMap {
        &self.phi
    }

    /// The input vertex a given extension vertex represents, if any.
    pub fn phi_preimage(&self, c_vertex: Vertex) -> Option<Vertex> {
        self.phi_inv.get(&c_vertex).copied()
    }

    /// The extension vertex carrying a given valuation, if enumerated.
    pub fn vertex_of(&self, v: &Valuation) -> Option<usize> {
        self.index.get(&v.key()).copied()
    }

    /// Cross-checks every function image against an independent search: the
    /// vertices whose roots are successors of this root in the base and
    /// which are generic with this vertex must be exactly the placed image.
    /// Returns one line per disagreement; empty means the two definitions
    /// coincide.
    pub fn function_images_unique(&self, budget: &Budget) -> Result<Vec<String>> {
        let mut meter = Meter::new(budget);
        let mut lines = Vec::new();
        for f in 0..self.base.a().lang().funs().len() {
            let rf = self.base.reduct().rel_of_fun(f);
            let tuples = self.base.b_minus().rel_tuples(rf);
            for (x, vx) in self.vals.iter().enumerate() {
                let mut candidates = std::collections::BTreeSet::new();
                for (y, vy) in self.vals.iter().enumerate() {
                    meter.step()?;
                    if tuples.contains(&vec![vx.root_base(), vy.root_base()])
                        && generic_valuations(vx, vy, &self.base, &self.family)
                    {
                        candidates.insert(y as Vertex);
                    }
                }
                let placed = self
                    .c
                    .fun_value(f, &[x as Vertex])
                    .cloned()
                    .unwrap_or_default();
                if candidates != placed {
                    lines.push(format!(
                        "function {} disagrees at vertex #{x}: placed {:?}, search found {:?}",
                        self.base.a().lang().funs()[f].name,
                        placed,
                        candidates
                    ));
                }
            }
        }
        Ok(lines)
    }
}

/// The canonical decoration of a designated-copy vertex: on each big set
/// containing it, its 1-based rank among the copy's members of that set.
fn rank_decoration(family: &BigSetFamily, a_n: usize, v: Vertex) -> Result<ValuationFn> {
    let mut values = vec![0u16; family.len()];
    for (i, value) in values.iter_mut().enumerate() {
        if !family.contains(i, v) {
            continue;
        }
        let mask = family.sets()[i] & family.a_mask();
        let mut rank = 0u16;
        for b in 0..a_n as u32 {
            if mask & (1u32 << b) != 0 {
                rank += 1;
                if b == v {
                    break;
                }
            }
        }
        *value = rank;
    }
    ValuationFn::new(v, values, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::{automorphisms, canonical_key, Language};
    use std::collections::BTreeSet;
    use std::sync::Arc;

    fn k2() -> Structure {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut a = Structure::new(lang);
        a.add_vertex("a");
        a.add_vertex("b");
        a.add_rel(0, &[0, 1]).unwrap();
        a.add_rel(0, &[1, 0]).unwrap();
        a
    }

    fn fun_edge() -> Structure {
        let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
        let mut a = Structure::new(lang);
        a.add_vertex("a");
        a.add_vertex("b");
        a.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
        a
    }

    #[test]
    fn the_edge_extension_is_the_edge_itself() {
        let a = k2();
        let ext = build_eppa_extension(&a, None, 2, &Budget::default()).unwrap();
        // No big sets, so each vertex carries exactly one (empty) decoration
        // and the extension is another copy of the edge.
        assert!(ext.family().is_empty());
        assert_eq!(ext.c().n(), 2);
        assert_eq!(
            canonical_key(ext.c(), &Budget::default()).unwrap(),
            canonical_key(&a, &Budget::default()).unwrap()
        );
        assert_eq!(ext.phi().len(), 2);
        assert!(ext.function_images_unique(&Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn the_function_edge_extension_has_twelve_vertices() {
        let a = fun_edge();
        let ext = build_eppa_extension(&a, None, 3, &Budget::default()).unwrap();
        // Three roots, four valuations each.
        assert_eq!(ext.c().n(), 12);
        // Each two-slot valuation maps to the point closure of its carried
        // successor pair; points have no entry.
        let mut edges = 0;
        for (x, v) in ext.vals().iter().enumerate() {
            let img = ext.c().fun_value(0, &[x as Vertex]);
            if v.len() == 2 {
                let img = img.expect("two-slot valuations have function entries");
                assert_eq!(img.len(), 1);
                let y = *img.iter().next().unwrap() as usize;
                assert_eq!(ext.val(y).len(), 1);
                assert_eq!(
                    ext.val(y).pairs()[0],
                    v.pairs()[1 - v.root_slot()].clone()
                );
                edges += 1;
            } else {
                assert!(img.is_none());
            }
        }
        assert_eq!(edges, 6);
        assert!(ext.function_images_unique(&Budget::default()).unwrap().is_empty());
    }

    #[test]
    fn the_designated_embedding_reaches_distinct_automorphism_orbits() {
        let a = fun_edge();
        let ext = build_eppa_extension(&a, None, 3, &Budget::default()).unwrap();
        let phi = ext.phi();
        assert_eq!(phi.len(), 2);
        assert_ne!(phi[0], phi[1]);
        // The image of the function's domain vertex is a two-slot valuation
        // whose function image is the image of the range vertex.
        let img = ext
            .c()
            .fun_value(0, &[phi[0]])
            .expect("the embedded domain vertex keeps its entry");
        assert_eq!(img, &BTreeSet::from([phi[1]]));
        assert_eq!(ext.phi_preimage(phi[0]), Some(0));
        assert_eq!(ext.phi_preimage(phi[1]), Some(1));
        assert_eq!(ext.phi_preimage(99), None);
    }

    #[test]
    fn extension_vertices_are_distinctly_named_and_rendered() {
        let a = fun_edge();
        let ext = build_eppa_extension(&a, None, 3, &Budget::default()).unwrap();
        let names: BTreeSet<&str> = (0..ext.c().n()).map(|v| ext.c().name(v as Vertex)).collect();
        assert_eq!(names.len(), 12);
        let text = fam_core::fmt::to_text(ext.c()).unwrap();
        let back = fam_core::fmt::parse(&text).unwrap();
        assert_eq!(fam_core::fmt::to_text(&back).unwrap(), text);
    }

    #[test]
    fn extensions_over_supplied_and_searched_bases_agree() {
        let a = fun_edge();
        let searched = build_eppa_extension(&a, None, 3, &Budget::default()).unwrap();
        let supplied =
            build_eppa_extension(&a, Some(searched.base().b_minus().clone()), 0, &Budget::default())
                .unwrap();
        assert_eq!(
            fam_core::fmt::to_text(searched.c()).unwrap(),
            fam_core::fmt::to_text(supplied.c()).unwrap()
        );
        assert_eq!(searched.phi(), supplied.phi());
        // The extension structure has at least as rich an automorphism group
        // as the base is symmetric: rotations of the triangle act on it.
        assert!(automorphisms(searched.c(), &Budget::default()).unwrap().len() >= 3);
    }
}
