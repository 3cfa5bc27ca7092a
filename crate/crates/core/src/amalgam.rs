//! Free amalgamation: gluing two structures along a common substructure
//! without adding any tuple that would touch both sides.

use std::collections::BTreeSet;

use crate::error::{CoreError, Result};
use crate::lang::Vertex;
use crate::map::{is_embedding, VertexMap};
use crate::structure::Structure;

/// Result of gluing `b1` and `b2` along a shared substructure: the glued
/// structure plus the two canonical embeddings of the sides into it.
#[derive(Debug, Clone)]
pub struct Amalgam {
    pub result: Structure,
    pub into_1: VertexMap,
    pub into_2: VertexMap,
}

fn fresh_name(taken: &mut BTreeSet<String>, base: &str) -> String {
    let mut name = base.to_string();
    while !taken.insert(name.clone()) {
        name.push('\'');
    }
    name
}

/// Free amalgam of `b1` and `b2` over `a`, glued along the embeddings
/// `f1 : a → b1` and `f2 : a → b2`.  The result contains exactly the tuples
/// and function entries of the two sides — nothing crosses.
///
/// With an ordered language the union of the two orders is usually not total,
/// so the result fails [`Structure::validate`]; amalgamate unordered reducts
/// and reorder afterwards.
pub fn free_amalgam(
    a: &Structure,
    b1: &Structure,
    f1: &VertexMap,
    b2: &Structure,
    f2: &VertexMap,
) -> Result<Amalgam> {
    if !is_embedding(a, b1, f1)? {
        return Err(CoreError::NotA("embedding into the first side"));
    }
    if !is_embedding(a, b2, f2)? {
        return Err(CoreError::NotA("embedding into the second side"));
    }

    let mut result = Structure::new(b1.lang().clone());
    let mut taken: BTreeSet<String> = BTreeSet::new();

    let into_1: VertexMap = (0..b1.n() as Vertex).collect();
    for v in b1.vertices() {
        let name = fresh_name(&mut taken, b1.name(v));
        result.add_vertex(name);
    }

    // Vertices of b2 in the image of a are glued to their partners in b1.
    const UNSET: Vertex = Vertex::MAX;
    let mut into_2: VertexMap = vec![UNSET; b2.n()];
    for (x, &v2) in f2.iter().enumerate() {
        into_2[v2 as usize] = f1[x];
    }
    for v in b2.vertices() {
        if into_2[v as usize] == UNSET {
            let name = fresh_name(&mut taken, b2.name(v));
            into_2[v as usize] = result.add_vertex(name);
        }
    }

    for (side, map) in [(b1, &into_1), (b2, &into_2)] {
        for r in 0..side.lang().rels().len() {
            for t in side.rel_tuples(r) {
                let nt: Vec<Vertex> = t.iter().map(|&v| map[v as usize]).collect();
                result.add_rel(r, &nt)?;
            }
        }
        for f in 0..side.lang().funs().len() {
            for (dom, img) in side.fun_entries(f) {
                let nd: Vec<Vertex> = dom.iter().map(|&v| map[v as usize]).collect();
                let ni: BTreeSet<Vertex> = img.iter().map(|&v| map[v as usize]).collect();
                // Entries with domain inside the glued part agree on both
                // sides because f1 and f2 are embeddings of the same a.
                result.set_fun(f, nd, ni)?;
            }
        }
    }

    Ok(Amalgam {
        result,
        into_1,
        into_2,
    })
}

/// Disjoint union: free amalgam over the empty structure.
pub fn disjoint_union(b1: &Structure, b2: &Structure) -> Result<Amalgam> {
    let empty = Structure::new(b1.lang().clone());
    free_amalgam(&empty, b1, &Vec::new(), b2, &Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::embed::are_isomorphic;
    use crate::lang::Language;
    use std::sync::Arc;

    #[test]
    fn two_edges_over_a_point_make_a_path() {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut edge = Structure::with_vertices(lang.clone(), 2);
        edge.add_rel(0, &[0, 1]).unwrap();
        edge.add_rel(0, &[1, 0]).unwrap();
        let point = Structure::with_vertices(lang.clone(), 1);

        let am = free_amalgam(&point, &edge, &vec![0], &edge, &vec![0]).unwrap();
        assert_eq!(am.result.n(), 3);
        assert_eq!(am.result.rel_tuples(0).len(), 4);
        assert_eq!(am.into_2[0], 0);
        assert_ne!(am.into_2[1], 1);

        let mut path = Structure::with_vertices(lang, 3);
        for (u, v) in [(0, 1), (0, 2)] {
            path.add_rel(0, &[u, v]).unwrap();
            path.add_rel(0, &[v, u]).unwrap();
        }
        assert!(are_isomorphic(&am.result, &path, &Budget::default()).unwrap());
    }

    #[test]
    fn gluing_respects_function_entries() {
        // F1(c) = {a, b}, F2(a, b) = {c}; glue two copies along {a}.
        let lang = Arc::new(Language::functional(&[("F1", 1, 2), ("F2", 2, 1)]));
        let mut s = Structure::new(lang.clone());
        let a = s.add_vertex("a");
        let b = s.add_vertex("b");
        let c = s.add_vertex("c");
        s.set_fun(0, vec![c], BTreeSet::from([a, b])).unwrap();
        s.set_fun(1, vec![a, b], BTreeSet::from([c])).unwrap();

        let point = {
            let mut p = Structure::new(lang);
            p.add_vertex("a");
            p
        };
        let am = free_amalgam(&point, &s, &vec![a], &s, &vec![a]).unwrap();
        assert_eq!(am.result.n(), 5);
        assert_eq!(am.result.fun_entries(0).len(), 2);
        assert_eq!(am.result.fun_entries(1).len(), 2);
        assert!(am.result.validate_exact_images().is_ok());
        // Names stay unique after gluing.
        let names: BTreeSet<&str> = am.result.vertices().map(|v| am.result.name(v)).collect();
        assert_eq!(names.len(), 5);
    }

    #[test]
    fn non_embedding_sides_are_rejected() {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut edge = Structure::with_vertices(lang.clone(), 2);
        edge.add_rel(0, &[0, 1]).unwrap();
        let two = Structure::with_vertices(lang, 2);
        // The identity from `edge` into edgeless `two` is not an embedding.
        assert!(free_amalgam(&edge, &two, &vec![0, 1], &two, &vec![0, 1]).is_err());
        let am = disjoint_union(&two, &two).unwrap();
        assert_eq!(am.result.n(), 4);
    }
}
