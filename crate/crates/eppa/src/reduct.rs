//! Encoding unary set-valued functions as binary relations.
//!
//! A structure whose function symbols are all unary can be flattened into a
//! purely relational structure over an extended language: every function
//! symbol `F` becomes a binary relation holding `(t, u)` exactly when
//! `u ∈ F(t)`.  The flattening loses nothing — the image of `t` is recovered
//! as the out-neighbourhood of `t` — so the original structure and its
//! encoding have the same automorphisms, and every partial automorphism of
//! the original induces a partial isomorphism of the encoding.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::{CoreError, Language, RelId, RelSym, Result, Structure};

/// A purely relational encoding of a structure with unary functions,
/// together with the bookkeeping needed to go back: `rel_of_fun[f]` is the
/// relation (in the encoding's language) that carries the graph of function
/// `f` of the original language.
#[derive(Debug, Clone)]
pub struct RelationalReduct {
    reduct: Structure,
    rel_of_fun: Vec<RelId>,
}

impl RelationalReduct {
    /// The relational structure itself.
    pub fn structure(&self) -> &Structure {
        &self.reduct
    }

    /// Relation id (in the reduct language) encoding function `f` of the
    /// original language.
    pub fn rel_of_fun(&self, f: usize) -> RelId {
        self.rel_of_fun[f]
    }

    /// All function-encoding relation ids, indexed by original function id.
    pub fn fun_rels(&self) -> &[RelId] {
        &self.rel_of_fun
    }

    pub fn into_structure(self) -> Structure {
        self.reduct
    }
}

/// Flattens a structure whose functions are all unary into a relational
/// structure: same vertices, same relations, plus one binary relation per
/// function symbol holding `(t, u)` for every `u ∈ F(t)`.
///
/// Errors when a function symbol has domain arity other than one or when the
/// input carries a distinguished order (the flattening is defined for plain
/// structures only).
pub fn relational_reduct(a: &Structure) -> Result<RelationalReduct> {
    let lang = a.lang();
    if lang.has_order() {
        return Err(CoreError::Invalid(
            "relational encoding expects an unordered structure".into(),
        ));
    }
    for f in lang.funs() {
        if f.dom_arity != 1 {
            return Err(CoreError::Invalid(format!(
                "function {} has domain arity {}; only unary functions can be encoded",
                f.name, f.dom_arity
            )));
        }
    }

    let mut rels: Vec<RelSym> = lang.rels().to_vec();
    let taken: BTreeSet<String> = lang
        .rels()
        .iter()
        .map(|r| r.name.clone())
        .chain(lang.funs().iter().map(|f| f.name.clone()))
        .collect();
    let mut rel_of_fun = Vec::with_capacity(lang.funs().len());
    for f in lang.funs() {
        let mut name = format!("{}~", f.name);
        while taken.contains(&name) || rels.iter().any(|r| r.name == name) {
            name.push('~');
        }
        rel_of_fun.push(rels.len());
        rels.push(RelSym { name, arity: 2 });
    }
    let reduct_lang = Arc::new(Language::new(rels, Vec::new())?);

    let mut reduct = Structure::new(reduct_lang);
    for v in a.vertices() {
        reduct.add_vertex(a.name(v));
    }
    for (r, _) in lang.rels().iter().enumerate() {
        for t in a.rel_tuples(r) {
            reduct.add_rel(r, t)?;
        }
    }
    for (f, _) in lang.funs().iter().enumerate() {
        for (dom, img) in a.fun_entries(f) {
            for &u in img {
                reduct.add_rel(rel_of_fun[f], &[dom[0], u])?;
            }
        }
    }
    Ok(RelationalReduct { reduct, rel_of_fun })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::{automorphisms, enumerate::for_each_structure, Budget};

    #[test]
    fn function_free_structures_are_their_own_encoding() {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut s = Structure::with_vertices(lang, 3);
        s.add_rel(0, &[0, 1]).unwrap();
        let r = relational_reduct(&s).unwrap();
        assert_eq!(
            fam_core::fmt::to_text(r.structure()).unwrap(),
            fam_core::fmt::to_text(&s).unwrap()
        );
    }

    #[test]
    fn a_function_edge_becomes_one_relation_tuple() {
        let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
        let mut s = Structure::with_vertices(lang, 2);
        s.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
        let r = relational_reduct(&s).unwrap();
        let rf = r.rel_of_fun(0);
        assert_eq!(
            r.structure().rel_tuples(rf),
            &BTreeSet::from([vec![0, 1]])
        );
        assert!(r.structure().lang().funs().is_empty());
    }

    #[test]
    fn set_valued_images_become_one_tuple_per_member() {
        let lang = Arc::new(Language::functional(&[("F", 1, 2)]));
        let mut s = Structure::with_vertices(lang, 3);
        s.set_fun(0, vec![0], BTreeSet::from([1, 2])).unwrap();
        let r = relational_reduct(&s).unwrap();
        let rf = r.rel_of_fun(0);
        assert_eq!(
            r.structure().rel_tuples(rf),
            &BTreeSet::from([vec![0, 1], vec![0, 2]])
        );
        let b = Budget::default();
        assert_eq!(
            automorphisms(&s, &b).unwrap(),
            automorphisms(r.structure(), &b).unwrap()
        );
    }

    #[test]
    fn binary_functions_are_rejected() {
        let lang = Arc::new(Language::functional(&[("G", 2, 1)]));
        let s = Structure::with_vertices(lang, 2);
        assert!(relational_reduct(&s).is_err());
    }

    #[test]
    fn automorphism_groups_match_on_every_small_mixed_structure() {
        let lang = fam_core::enumerate::rel1fun1_language();
        let b = Budget::default();
        for n in 0..=3 {
            for_each_structure(&lang, n, &b, &mut |s: &Structure| {
                let r = relational_reduct(s).unwrap();
                assert_eq!(
                    automorphisms(s, &b).unwrap(),
                    automorphisms(r.structure(), &b).unwrap(),
                    "automorphism groups differ on a {n}-vertex structure"
                );
                true
            })
            .unwrap();
        }
    }
}
