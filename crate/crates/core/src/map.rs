//! Vertex maps between structures and the hierarchy of map kinds they can
//! satisfy: homomorphism, monomorphism, and embedding.
//!
//! A map sends each relation tuple to a relation tuple and each function
//! entry `F(d) = I` to an entry with `F(f(d)) ⊇ f(I)`.  An embedding is an
//! injective map that also *reflects* structure: preimages of tuples are
//! tuples and `f(d) ∈ Dom(F)` exactly when `d ∈ Dom(F)`, with images mapped
//! onto images.

use std::collections::BTreeSet;

use crate::error::{CoreError, Result};
use crate::lang::Vertex;
use crate::structure::Structure;

/// Total map from the vertices of a source structure into a target, stored
/// as `target_vertex = map[source_vertex]`.
pub type VertexMap = Vec<Vertex>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MapKind {
    Homomorphism,
    Monomorphism,
    Embedding,
}

fn same_language(a: &Structure, b: &Structure) -> Result<()> {
    if a.lang().as_ref() != b.lang().as_ref() {
        return Err(CoreError::LanguageMismatch);
    }
    Ok(())
}

fn check_total(a: &Structure, b: &Structure, f: &VertexMap) -> Result<()> {
    if f.len() != a.n() {
        return Err(CoreError::Invalid(format!(
            "map covers {} of {} vertices",
            f.len(),
            a.n()
        )));
    }
    for &v in f {
        if v as usize >= b.n() {
            return Err(CoreError::UnknownVertex(format!("#{v}")));
        }
    }
    Ok(())
}

pub fn is_injective(f: &VertexMap) -> bool {
    let mut seen = BTreeSet::new();
    f.iter().all(|&v| seen.insert(v))
}

fn apply(f: &VertexMap, t: &[Vertex]) -> Vec<Vertex> {
    t.iter().map(|&v| f[v as usize]).collect()
}

fn apply_set(f: &VertexMap, s: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    s.iter().map(|&v| f[v as usize]).collect()
}

/// Checks whether `f : a → b` is a homomorphism: relation tuples land on
/// relation tuples, and for every entry `F(d) = I` the image tuple is in the
/// domain of `F` with `F(f(d)) ⊇ f(I)`.
pub fn is_homomorphism(a: &Structure, b: &Structure, f: &VertexMap) -> Result<bool> {
    same_language(a, b)?;
    check_total(a, b, f)?;
    for r in 0..a.lang().rels().len() {
        for t in a.rel_tuples(r) {
            if !b.rel_tuples(r).contains(&apply(f, t)) {
                return Ok(false);
            }
        }
    }
    for fun in 0..a.lang().funs().len() {
        for (dom, img) in a.fun_entries(fun) {
            match b.fun_value(fun, &apply(f, dom)) {
                None => return Ok(false),
                Some(bi) => {
                    if !apply_set(f, img).is_subset(bi) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_monomorphism(a: &Structure, b: &Structure, f: &VertexMap) -> Result<bool> {
    Ok(is_injective(f) && is_homomorphism(a, b, f)?)
}

/// Checks whether `f : a → b` is an embedding: an injective map under which
/// membership in each relation and in each function domain is preserved and
/// reflected, with `F(f(d)) = f(F(d))` on the domain.
pub fn is_embedding(a: &Structure, b: &Structure, f: &VertexMap) -> Result<bool> {
    same_language(a, b)?;
    check_total(a, b, f)?;
    if !is_injective(f) {
        return Ok(false);
    }
    let image: BTreeSet<Vertex> = f.iter().copied().collect();
    for r in 0..a.lang().rels().len() {
        for t in a.rel_tuples(r) {
            if !b.rel_tuples(r).contains(&apply(f, t)) {
                return Ok(false);
            }
        }
        // Reflection: tuples of b inside the image must pull back to tuples.
        for t in b.rel_tuples(r) {
            if t.iter().all(|v| image.contains(v)) {
                let pre: Vec<Vertex> = t
                    .iter()
                    .map(|&v| f.iter().position(|&w| w == v).unwrap() as Vertex)
                    .collect();
                if !a.rel_tuples(r).contains(&pre) {
                    return Ok(false);
                }
            }
        }
    }
    for fun in 0..a.lang().funs().len() {
        for (dom, img) in a.fun_entries(fun) {
            match b.fun_value(fun, &apply(f, dom)) {
                None => return Ok(false),
                Some(bi) => {
                    if apply_set(f, img) != *bi {
                        return Ok(false);
                    }
                }
            }
        }
        for dom in b.fun_entries(fun).keys() {
            if dom.iter().all(|v| image.contains(v)) {
                let pre: Vec<Vertex> = dom
                    .iter()
                    .map(|&v| f.iter().position(|&w| w == v).unwrap() as Vertex)
                    .collect();
                if a.fun_value(fun, &pre).is_none() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn check_map(a: &Structure, b: &Structure, f: &VertexMap, kind: MapKind) -> Result<bool> {
    match kind {
        MapKind::Homomorphism => is_homomorphism(a, b, f),
        MapKind::Monomorphism => is_monomorphism(a, b, f),
        MapKind::Embedding => is_embedding(a, b, f),
    }
}

/// Composition `g ∘ f` where `f : a → b` and `g : b → c`.
pub fn compose(f: &VertexMap, g: &VertexMap) -> VertexMap {
    f.iter().map(|&v| g[v as usize]).collect()
}

/// Inverse of a bijective map.
pub fn invert(f: &VertexMap) -> VertexMap {
    let mut inv = vec![0; f.len()];
    for (i, &v) in f.iter().enumerate() {
        inv[v as usize] = i as Vertex;
    }
    inv
}

pub fn identity(n: usize) -> VertexMap {
    (0..n as Vertex).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Language;
    use std::sync::Arc;

    /// Path a-b-c versus triangle, as plain graphs.
    fn graphs() -> (Structure, Structure) {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut p = Structure::with_vertices(lang.clone(), 3);
        for (u, v) in [(0, 1), (1, 2)] {
            p.add_rel(0, &[u, v]).unwrap();
            p.add_rel(0, &[v, u]).unwrap();
        }
        let mut k = Structure::with_vertices(lang, 3);
        for u in 0..3u32 {
            for v in 0..3u32 {
                if u != v {
                    k.add_rel(0, &[u, v]).unwrap();
                }
            }
        }
        (p, k)
    }

    #[test]
    fn hierarchy_on_graphs() {
        let (p, k) = graphs();
        let id = identity(3);
        // Path into triangle: mono but not embedding (edge 0-2 reflects badly).
        assert!(is_monomorphism(&p, &k, &id).unwrap());
        assert!(!is_embedding(&p, &k, &id).unwrap());
        // Fold the path onto one triangle edge: hom but not mono.
        let fold = vec![0, 1, 0];
        assert!(is_homomorphism(&p, &k, &fold).unwrap());
        assert!(!is_monomorphism(&p, &k, &fold).unwrap());
        // Triangle into path is not even a homomorphism.
        assert!(!is_homomorphism(&k, &p, &id).unwrap());
        assert!(is_embedding(&k, &k, &id).unwrap());
    }

    #[test]
    fn function_domains_reflect_under_embeddings() {
        let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
        let mut a = Structure::with_vertices(lang.clone(), 2);
        let mut b = Structure::with_vertices(lang, 2);
        b.set_fun(0, vec![0], std::collections::BTreeSet::from([1]))
            .unwrap();
        let id = identity(2);
        // a has no entry, b has one on the image: hom yes, embedding no.
        assert!(is_homomorphism(&a, &b, &id).unwrap());
        assert!(!is_embedding(&a, &b, &id).unwrap());
        a.set_fun(0, vec![0], std::collections::BTreeSet::from([1]))
            .unwrap();
        assert!(is_embedding(&a, &b, &id).unwrap());
        // Swapping vertices moves the entry off the domain.
        assert!(!is_embedding(&b, &a, &vec![1, 0]).unwrap());
    }
}
