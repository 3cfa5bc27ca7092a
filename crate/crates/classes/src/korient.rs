//! Orientations with bounded out-degree, encoded as structures whose
//! functions record out-neighborhoods.
//!
//! A digraph in which every vertex has out-degree at most `k` becomes a
//! structure over unary functions `F1..Fk`: `Fi` is defined exactly on the
//! vertices of out-degree `i`, and sends such a vertex to its
//! out-neighborhood (a set of `i` vertices).  Vertices of out-degree zero
//! carry no function entry.  Substructures of an encoding correspond
//! exactly to successor-closed vertex sets: no arc may leave the subset.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::{CoreError, Language, Result, Structure, Vertex};

use crate::graph::Digraph;

/// Language with unary set-valued functions `F1..Fk`, where `Fi` yields
/// image sets of size `i`.
pub fn orientation_language(k: usize) -> Arc<Language> {
    let names: Vec<String> = (1..=k).map(|i| format!("F{i}")).collect();
    let table: Vec<(&str, usize, usize)> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), 1, i + 1))
        .collect();
    Arc::new(Language::functional(&table))
}

/// Encodes a digraph with all out-degrees at most `k` over
/// [`orientation_language`]: each vertex of out-degree `i ≥ 1` gets the
/// entry `Fi(v) = out-neighborhood(v)`.
pub fn encode_k_orientation(g: &Digraph, k: usize) -> Result<Structure> {
    if k == 0 {
        return Err(CoreError::Invalid(
            "the out-degree bound must be at least one".into(),
        ));
    }
    let lang = orientation_language(k);
    let mut s = Structure::new(lang.clone());
    for v in g.vertices() {
        s.add_vertex(g.name(v).to_string())?;
    }
    for v in g.vertices() {
        let out = g.out_neighbors(v);
        let d = out.len();
        if d == 0 {
            continue;
        }
        if d > k {
            return Err(CoreError::Invalid(format!(
                "vertex `{}` has out-degree {d}, above the bound {k}",
                g.name(v)
            )));
        }
        let f = lang
            .fun_id(&format!("F{d}"))
            .ok_or_else(|| CoreError::UnknownSymbol(format!("F{d}")))?;
        s.set_fun(f, vec![v], out)?;
    }
    Ok(s)
}

/// Checks that a structure's language is [`orientation_language`] for some
/// `k ≥ 1` and returns that `k`.
pub fn orientation_bound(s: &Structure) -> Result<usize> {
    let lang = s.lang();
    if !lang.rels().is_empty() || lang.has_order() {
        return Err(CoreError::Invalid(
            "an orientation encoding has no relations".into(),
        ));
    }
    let funs = lang.funs();
    if funs.is_empty() {
        return Err(CoreError::Invalid(
            "an orientation encoding needs functions F1..Fk".into(),
        ));
    }
    for (i, f) in funs.iter().enumerate() {
        let want = format!("F{}", i + 1);
        if f.name != want || f.dom_arity != 1 || f.range_size != i + 1 {
            return Err(CoreError::Invalid(format!(
                "function #{i} should be `{want}` with one argument and image size {}",
                i + 1
            )));
        }
    }
    Ok(funs.len())
}

/// Decodes an encoding back to the digraph, validating the encoding shape:
/// every entry of `Fi` must have an image of exactly `i` vertices not
/// containing the argument, and no vertex may carry two entries.
pub fn decode_k_orientation(s: &Structure) -> Result<Digraph> {
    let k = orientation_bound(s)?;
    let mut g = Digraph::empty();
    for v in s.vertices() {
        g.add_vertex(s.name(v).to_string())?;
    }
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    for i in 1..=k {
        let f = s
            .lang()
            .fun_id(&format!("F{i}"))
            .ok_or_else(|| CoreError::UnknownSymbol(format!("F{i}")))?;
        for (dom, image) in s.fun_entries(f) {
            let v = dom[0];
            if !seen.insert(v) {
                return Err(CoreError::Invalid(format!(
                    "vertex `{}` carries two out-neighborhood entries",
                    s.name(v)
                )));
            }
            if image.len() != i {
                return Err(CoreError::Invalid(format!(
                    "F{i} at `{}` has image size {}, expected {i}",
                    s.name(v),
                    image.len()
                )));
            }
            if image.contains(&v) {
                return Err(CoreError::Invalid(format!(
                    "F{i} at `{}` contains the vertex itself",
                    s.name(v)
                )));
            }
            for &w in image {
                g.add_arc(v, w)?;
            }
        }
    }
    Ok(g)
}

/// No arc leaves `set`: every out-neighbor of a member is a member.
pub fn successor_closed(g: &Digraph, set: &BTreeSet<Vertex>) -> bool {
    g.arcs()
        .iter()
        .all(|&(u, v)| !set.contains(&u) || set.contains(&v))
}

/// Validator for membership in the encoded class: the structure must decode
/// and re-encode to itself bit-for-bit.  Returns human-readable violations.
pub fn orientation_violations(s: &Structure, k: usize) -> Vec<String> {
    let mut out = Vec::new();
    match decode_k_orientation(s) {
        Err(e) => out.push(format!("decode failed: {e}")),
        Ok(g) => match encode_k_orientation(&g, k) {
            Err(e) => out.push(format!("re-encode failed: {e}")),
            Ok(back) => {
                if fam_core::fmt::to_text(&back) != fam_core::fmt::to_text(s) {
                    out.push("decode/encode round trip changed the structure".into());
                }
            }
        },
    }
    out
}

/// Enumerates every digraph on `n` fixed vertices with out-degrees at most
/// `k`, calling `visit` on each.  Out-neighborhoods are chosen per vertex,
/// so the bound prunes the search.
pub fn for_each_bounded_digraph(
    n: usize,
    k: usize,
    visit: &mut dyn FnMut(&Digraph) -> Result<()>,
) -> Result<()> {
    fn rec(
        outs: &mut Vec<Vec<Vertex>>,
        n: usize,
        k: usize,
        visit: &mut dyn FnMut(&Digraph) -> Result<()>,
    ) -> Result<()> {
        let v = outs.len();
        if v == n {
            let mut g = Digraph::new(n);
            for (u, nbrs) in outs.iter().enumerate() {
                for &w in nbrs {
                    g.add_arc(u as Vertex, w)?;
                }
            }
            return visit(&g);
        }
        let others: Vec<Vertex> = (0..n as Vertex).filter(|&u| u != v as Vertex).collect();
        for mask in 0u32..(1 << others.len()) {
            if (mask.count_ones() as usize) > k {
                continue;
            }
            outs.push(
                others
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &u)| u)
                    .collect(),
            );
            rec(outs, n, k, visit)?;
            outs.pop();
        }
        Ok(())
    }
    rec(&mut Vec::new(), n, k, visit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::Budget;

    #[test]
    fn edgeless_digraph_encodes_with_no_entries() {
        let g = Digraph::new(3);
        let s = encode_k_orientation(&g, 2).unwrap();
        assert_eq!(s.n(), 3);
        for (f, _) in s.lang().funs().iter().enumerate() {
            assert!(s.fun_entries(fam_core::FunId(f)).is_empty());
        }
        assert_eq!(decode_k_orientation(&s).unwrap(), g);
    }

    #[test]
    fn directed_triangle_uses_only_the_singleton_function() {
        let g = Digraph::cycle(3);
        let s = encode_k_orientation(&g, 1).unwrap();
        let f1 = s.lang().fun_id("F1").unwrap();
        assert_eq!(s.fun_entries(f1).len(), 3);
        for v in 0..3 {
            assert_eq!(
                s.fun_value(f1, &[v]).unwrap(),
                &BTreeSet::from([(v + 1) % 3])
            );
        }
        assert_eq!(decode_k_orientation(&s).unwrap(), g);
    }

    #[test]
    fn out_degree_above_the_bound_is_rejected() {
        let mut g = Digraph::new(3);
        g.add_arc(0, 1).unwrap();
        g.add_arc(0, 2).unwrap();
        assert!(encode_k_orientation(&g, 1).is_err());
        assert!(encode_k_orientation(&g, 2).is_ok());
    }

    #[test]
    fn tampered_images_fail_to_decode() {
        let mut g = Digraph::new(3);
        g.add_arc(0, 1).unwrap();
        let s = encode_k_orientation(&g, 2).unwrap();
        // Move the entry from F1 to F2 with a padded image: wrong size shape.
        let lang = s.lang().clone();
        let mut bad = Structure::new(lang.clone());
        for v in s.vertices() {
            bad.add_vertex(s.name(v).to_string()).unwrap();
        }
        let f2 = lang.fun_id("F2").unwrap();
        bad.set_fun(f2, vec![0], BTreeSet::from([1])).unwrap();
        assert!(decode_k_orientation(&bad).is_err());
    }

    #[test]
    fn substructures_are_exactly_successor_closed_sets() {
        // Every digraph on up to 4 vertices with out-degree at most 2,
        // every vertex subset: the subset induces a substructure of the
        // encoding exactly when no arc leaves it.  Vertex names survive
        // both induction paths, so the comparison is plain text equality.
        let mut checked = 0u64;
        for n in 0..=4usize {
            for_each_bounded_digraph(n, 2, &mut |g| {
                let s = encode_k_orientation(g, 2)?;
                for mask in 0u32..(1 << n) {
                    let set: BTreeSet<Vertex> =
                        (0..n as Vertex).filter(|&v| mask >> v & 1 == 1).collect();
                    let closed_here = successor_closed(g, &set);
                    let is_sub = s.is_closed(&set) && {
                        let (ind, _) = s.induced(&set)?;
                        let (sub, _) = g.induced(&set);
                        let enc = encode_k_orientation(&sub, 2)?;
                        fam_core::fmt::to_text(&ind) == fam_core::fmt::to_text(&enc)
                    };
                    assert_eq!(
                        closed_here, is_sub,
                        "mismatch on {} with subset {set:?}",
                        g.to_text()
                    );
                    checked += 1;
                }
                Ok(())
            })
            .unwrap();
        }
        assert!(checked > 10_000, "swept {checked} cases");
    }
}
