//! Totalization of partial functions in an ordered structure: every
//! undefined tuple receives a filler image, and fresh relations mark the
//! original domains so the move is reversible.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::{
    enumerate::all_tuples, Budget, CoreError, FunSym, Language, RelSym, Result, Structure,
};

/// Prefix of the relation marking a function's original domain.
const DOMAIN_MARK: &str = "Dom_";

/// The language of totalized structures: one extra relation `Dom_F` per
/// function `F`, with the function's domain arity. Order is kept.
pub fn completed_language(lang: &Language) -> Result<Arc<Language>> {
    if lang.order_rel().is_none() {
        return Err(CoreError::Invalid(
            "totalization needs an ordered language".into(),
        ));
    }
    let mut rels: Vec<RelSym> = lang.plain_rels().map(|r| lang.rels()[r].clone()).collect();
    for f in lang.funs() {
        rels.push(RelSym {
            name: format!("{DOMAIN_MARK}{}", f.name),
            arity: f.dom_arity,
        });
    }
    let funs: Vec<FunSym> = lang.funs().to_vec();
    Ok(Arc::new(Language::with_order(rels, funs)?))
}

/// Makes every function of `b` total: original entries keep their images and
/// have their domains marked; every other tuple maps to its least vertex in
/// the order of `b`. Copies of any structure in `b` correspond exactly to
/// copies of its totalization, so Ramsey statements transfer.
pub fn complete(b: &Structure, budget: &Budget) -> Result<Structure> {
    b.validate()?;
    let rank = b.order_rank()?;
    let lang = completed_language(b.lang())?;
    let plain = b.lang().plain_rels().count();

    let mut out = Structure::new(lang);
    for v in b.vertices() {
        out.add_vertex(b.name(v));
    }
    for r in 0..plain {
        for tuple in b.rel_tuples(r) {
            out.add_rel(r, tuple)?;
        }
    }
    for (f, sym) in b.lang().funs().iter().enumerate() {
        let tuples = all_tuples(b.n(), sym.dom_arity);
        budget.check_steps(tuples.len() as u64)?;
        for dom in tuples {
            match b.fun_value(f, &dom) {
                Some(img) => {
                    out.add_rel(plain + f, &dom)?;
                    out.set_fun(f, dom.clone(), img.clone())?;
                }
                None => {
                    let least = dom
                        .iter()
                        .copied()
                        .min_by_key(|&v| rank[v as usize])
                        .expect("function domains are nonempty");
                    out.set_fun(f, dom, BTreeSet::from([least]))?;
                }
            }
        }
    }
    out.set_order(&b.order_sequence()?)?;
    out.validate()?;
    Ok(out)
}

/// Undoes `complete`: drops the domain marks and all unmarked entries,
/// returning to the original language bit for bit.
pub fn decomplete(c: &Structure, original: &Arc<Language>) -> Result<Structure> {
    let expect = completed_language(original)?;
    if c.lang().as_ref() != expect.as_ref() {
        return Err(CoreError::LanguageMismatch);
    }
    let plain = original.plain_rels().count();
    let mut out = Structure::new(original.clone());
    for v in c.vertices() {
        out.add_vertex(c.name(v));
    }
    for r in 0..plain {
        for tuple in c.rel_tuples(r) {
            out.add_rel(r, tuple)?;
        }
    }
    for f in 0..original.funs().len() {
        for dom in c.rel_tuples(plain + f) {
            let img = c.fun_value(f, dom).ok_or_else(|| {
                CoreError::Invalid(format!(
                    "marked tuple lacks an entry for function {}",
                    original.funs()[f].name
                ))
            })?;
            out.set_fun(f, dom.clone(), img.clone())?;
        }
    }
    if original.has_order() {
        out.set_order(&c.order_sequence()?)?;
    }
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::{enumerate_embeddings, Language};

    /// Edge with a unary function into two extra vertices, ordered.
    fn crossing() -> Structure {
        let lang = std::sync::Arc::new(Language::mixed(&[("R", 2)], &[("F", 1, 1)]));
        let mut s = Structure::with_vertices(lang, 4);
        s.add_rel(0, &[0, 1]).unwrap();
        s.set_fun(0, vec![0], BTreeSet::from([2])).unwrap();
        s.set_fun(0, vec![1], BTreeSet::from([3])).unwrap();
        s.with_order(&[0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn totalization_fills_with_least_vertices_and_marks_domains() {
        let b = crossing();
        let c = complete(&b, &Budget::default()).unwrap();
        // F is now total; the fillers map each fresh vertex to itself.
        for v in c.vertices() {
            let img = c.fun_value(0, &[v]).unwrap();
            let expect = match v {
                0 => 2,
                1 => 3,
                v => v, // fillers: least vertex of the singleton tuple
            };
            assert_eq!(img, &BTreeSet::from([expect]));
        }
        // Domain marks sit exactly on the original entries.
        let mark = c.lang().rel_id("Dom_F").unwrap();
        let marked: Vec<_> = c.rel_tuples(mark).iter().cloned().collect();
        assert_eq!(marked, vec![vec![0], vec![1]]);
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let b = crossing();
        let c = complete(&b, &Budget::default()).unwrap();
        let back = decomplete(&c, b.lang()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn binary_function_fillers_take_the_tuple_minimum() {
        let lang = std::sync::Arc::new(Language::functional(&[("G", 2, 1)]));
        let mut s = Structure::with_vertices(lang, 3);
        s.set_fun(0, vec![0, 1], BTreeSet::from([2])).unwrap();
        // Order places vertex 2 first, so fillers involving it pick 2.
        let b = s.with_order(&[2, 0, 1]).unwrap();
        let c = complete(&b, &Budget::default()).unwrap();
        assert_eq!(c.fun_value(0, &[0, 1]).unwrap(), &BTreeSet::from([2]));
        assert_eq!(c.fun_value(0, &[1, 2]).unwrap(), &BTreeSet::from([2]));
        assert_eq!(c.fun_value(0, &[1, 0]).unwrap(), &BTreeSet::from([0]));
        assert_eq!(c.fun_value(0, &[1, 1]).unwrap(), &BTreeSet::from([1]));
        assert_eq!(decomplete(&c, b.lang()).unwrap(), b);
    }

    #[test]
    fn embeddings_correspond_exactly_across_totalization() {
        let b = crossing();
        // A = the closure of one domain vertex, with the inherited order.
        let seed = b.unordered_reduct().closure(std::iter::once(0)).0;
        let a = seed.with_order(&[0, 1]).unwrap();
        let budget = Budget::default();
        let before = enumerate_embeddings(&a, &b, &budget).unwrap();
        let after = enumerate_embeddings(
            &complete(&a, &budget).unwrap(),
            &complete(&b, &budget).unwrap(),
            &budget,
        )
        .unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn unordered_input_is_rejected() {
        let lang = std::sync::Arc::new(Language::functional(&[("F", 1, 1)]));
        let s = Structure::with_vertices(lang, 2);
        assert!(complete(&s, &Budget::default()).is_err());
    }
}
