//! Worked examples with independently derived expected values: closures,
//! substructures, map classification, embedding counts, free amalgams,
//! irreducibility, and automorphism groups.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::oracles::{
    all_maps_oracle, automorphisms_oracle, closure_oracle, irreducible_pairs_oracle, kind_oracle,
};
use fam_core::{
    are_isomorphic, automorphisms, copies_of, disjoint_union, enumerate_embeddings, free_amalgam,
    is_embedding, is_homomorphism, is_irreducible, is_monomorphism, Budget, Language, MapKind,
    Structure, Vertex,
};

fn graph(n: usize, edges: &[(Vertex, Vertex)]) -> Structure {
    let lang = Arc::new(Language::relational(&[("E", 2)]));
    let mut s = Structure::with_vertices(lang, n);
    for &(u, v) in edges {
        s.add_rel(0, &[u, v]).unwrap();
        s.add_rel(0, &[v, u]).unwrap();
    }
    s
}

/// n triangles glued along the common base edge 0-1; tops are 2..n+2.
fn chimney(n: usize) -> Structure {
    let mut edges = vec![(0, 1)];
    for t in 0..n as Vertex {
        edges.push((0, 2 + t));
        edges.push((1, 2 + t));
    }
    graph(n + 2, &edges)
}

/// Two triangles sharing the single vertex 0.
fn bowtie() -> Structure {
    graph(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
}

#[test]
fn closure_of_a_crossing_pair_pulls_in_the_witness() {
    // F1(c) = {a, b} and F2(a, b) = {c}: the pair {a, b} is not closed, its
    // closure adds c, and the closure of {a} alone is just {a}.
    let lang = Arc::new(Language::functional(&[("F1", 1, 2), ("F2", 2, 1)]));
    let mut s = Structure::new(lang);
    let a = s.add_vertex("a");
    let b = s.add_vertex("b");
    let c = s.add_vertex("c");
    s.set_fun(0, vec![c], BTreeSet::from([a, b])).unwrap();
    s.set_fun(1, vec![a, b], BTreeSet::from([c])).unwrap();

    assert_eq!(s.closure_set([a, b]), BTreeSet::from([a, b, c]));
    assert_eq!(s.closure_set([a]), BTreeSet::from([a]));
    assert_eq!(s.closure_set([]), BTreeSet::new());
    assert!(s.induced(&BTreeSet::from([a, b])).is_err());
    let (full, _) = s.induced(&BTreeSet::from([a, b, c])).unwrap();
    assert_eq!(full, s);
}

#[test]
fn father_chain_closure_matches_the_minimality_oracle() {
    let lang = Arc::new(Language::functional(&[("father", 1, 1)]));
    let mut s = Structure::with_vertices(lang, 3);
    s.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
    s.set_fun(0, vec![1], BTreeSet::from([2])).unwrap();
    assert_eq!(s.closure_set([0]), BTreeSet::from([0, 1, 2]));
    for seed_mask in 0u32..8 {
        let seed: BTreeSet<Vertex> = (0..3).filter(|v| seed_mask >> v & 1 == 1).collect();
        assert_eq!(s.closure_set(seed.iter().copied()), closure_oracle(&s, &seed));
    }
}

#[test]
fn induced_two_subsets_of_a_triangle_embed_back() {
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    for pair in [[0u32, 1], [1, 2], [0, 2]] {
        let set: BTreeSet<Vertex> = pair.iter().copied().collect();
        let (sub, old) = k3.induced(&set).unwrap();
        assert_eq!(sub.rel_tuples(0).len(), 2);
        assert!(is_embedding(&sub, &k3, &old).unwrap());
    }
}

#[test]
fn map_classification_walks_the_hierarchy() {
    // Folding an edge onto a looped vertex: homomorphism, not monomorphism.
    let lang = Arc::new(Language::relational(&[("R", 2)]));
    let mut edge = Structure::with_vertices(lang.clone(), 2);
    edge.add_rel(0, &[0, 1]).unwrap();
    edge.add_rel(0, &[1, 0]).unwrap();
    let mut loop1 = Structure::with_vertices(lang, 1);
    loop1.add_rel(0, &[0, 0]).unwrap();
    let fold = vec![0, 0];
    assert!(is_homomorphism(&edge, &loop1, &fold).unwrap());
    assert!(!is_monomorphism(&edge, &loop1, &fold).unwrap());
    assert!(kind_oracle(&edge, &loop1, &fold, MapKind::Homomorphism));
    assert!(!kind_oracle(&edge, &loop1, &fold, MapKind::Monomorphism));

    // Identity is always an embedding.
    let id = vec![0, 1];
    assert!(is_embedding(&edge, &edge, &id).unwrap());

    // Father chains: landing on a vertex with a defined entry reflects badly.
    let father = Arc::new(Language::functional(&[("father", 1, 1)]));
    let point = Structure::with_vertices(father.clone(), 1);
    let mut chain = Structure::with_vertices(father, 3);
    chain.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
    chain.set_fun(0, vec![1], BTreeSet::from([2])).unwrap();
    for target in 0..3u32 {
        let f = vec![target];
        let expected = target == 2; // only the top of the chain has no entry
        assert_eq!(is_embedding(&point, &chain, &f).unwrap(), expected);
        assert_eq!(kind_oracle(&point, &chain, &f, MapKind::Embedding), expected);
        assert!(is_homomorphism(&point, &chain, &f).unwrap());
    }
}

#[test]
fn edge_into_triangle_has_six_embeddings_three_copies() {
    let edge = graph(2, &[(0, 1)]);
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let budget = Budget::default();
    let embs = enumerate_embeddings(&edge, &k3, &budget).unwrap();
    assert_eq!(embs.len(), 6);
    assert_eq!(copies_of(&edge, &k3, &budget).unwrap().len(), 3);
    let slow = all_maps_oracle(&edge, &k3, MapKind::Embedding, &budget).unwrap();
    assert_eq!(
        embs.into_iter().collect::<BTreeSet<_>>(),
        slow.into_iter().collect::<BTreeSet<_>>()
    );
}

#[test]
fn self_embeddings_are_the_automorphism_group() {
    let ch2 = chimney(2);
    let budget = Budget::default();
    let self_embs = enumerate_embeddings(&ch2, &ch2, &budget).unwrap();
    let autos = automorphisms(&ch2, &budget).unwrap();
    assert_eq!(self_embs, autos);
    assert!(autos.contains(&vec![0, 1, 2, 3]));
}

#[test]
fn no_bowtie_embeds_into_a_chimney() {
    let budget = Budget::default();
    let bt = bowtie();
    let ch3 = chimney(3);
    assert_eq!(bt.n(), ch3.n());
    assert_eq!(enumerate_embeddings(&bt, &ch3, &budget).unwrap().len(), 0);
    assert_eq!(
        all_maps_oracle(&bt, &ch3, MapKind::Embedding, &budget).unwrap().len(),
        0
    );
}

#[test]
fn chimneys_are_amalgams_of_triangles_over_the_base_edge() {
    let budget = Budget::default();
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let base = graph(2, &[(0, 1)]);
    let inc = vec![0, 1];
    let two = free_amalgam(&base, &k3, &inc, &k3, &inc).unwrap();
    assert!(are_isomorphic(&two.result, &chimney(2), &budget).unwrap());
    let three = free_amalgam(&base, &two.result, &inc, &k3, &inc).unwrap();
    assert!(are_isomorphic(&three.result, &chimney(3), &budget).unwrap());
    assert!(is_embedding(&k3, &two.result, &two.into_2).unwrap());
}

#[test]
fn amalgam_over_everything_is_the_structure_itself() {
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let id = vec![0, 1, 2];
    let am = free_amalgam(&k3, &k3, &id, &k3, &id).unwrap();
    assert_eq!(am.result, k3);
}

#[test]
fn amalgam_tuples_never_cross_the_sides() {
    let edge = graph(2, &[(0, 1)]);
    let point = graph(1, &[]);
    let am = free_amalgam(&point, &edge, &vec![0], &edge, &vec![0]).unwrap();
    let path = am.result;
    assert!(are_isomorphic(&path, &graph(3, &[(0, 1), (0, 2)]), &Budget::default()).unwrap());
    let img1: BTreeSet<Vertex> = am.into_1.iter().copied().collect();
    let img2: BTreeSet<Vertex> = am.into_2.iter().copied().collect();
    for t in path.rel_tuples(0) {
        let inside_1 = t.iter().all(|v| img1.contains(v));
        let inside_2 = t.iter().all(|v| img2.contains(v));
        assert!(inside_1 || inside_2);
    }
}

#[test]
fn crossing_relation_and_function_entries_make_structures_irreducible() {
    // One relation pair plus one function entry per vertex of the pair:
    // R(a,b), F(a) = {c}, F(b) = {d}.  Every proper closed subset misses a
    // or b, and the R-tuple would cross any split of {a, b}.
    let lang = Arc::new(Language::mixed(&[("R", 2)], &[("F", 1, 1)]));
    let mut s = Structure::new(lang);
    let a = s.add_vertex("a");
    let b = s.add_vertex("b");
    let c = s.add_vertex("c");
    let d = s.add_vertex("d");
    s.add_rel(0, &[a, b]).unwrap();
    s.set_fun(0, vec![a], BTreeSet::from([c])).unwrap();
    s.set_fun(0, vec![b], BTreeSet::from([d])).unwrap();
    let budget = Budget::default();
    assert!(is_irreducible(&s, &budget).unwrap());
    assert!(irreducible_pairs_oracle(&s));

    let point = graph(1, &[]);
    assert!(is_irreducible(&point, &budget).unwrap());

    let two_edges = disjoint_union(&graph(2, &[(0, 1)]), &graph(2, &[(0, 1)])).unwrap();
    assert!(!is_irreducible(&two_edges.result, &budget).unwrap());
    assert!(!irreducible_pairs_oracle(&two_edges.result));
}

#[test]
fn automorphism_group_sizes() {
    let budget = Budget::default();
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    assert_eq!(automorphisms(&k3, &budget).unwrap().len(), 6);

    // Unary marks pin every vertex: only the identity survives.
    let lang = Arc::new(Language::relational(&[("U0", 1), ("U1", 1)]));
    let mut rigid = Structure::with_vertices(lang, 2);
    rigid.add_rel(0, &[0]).unwrap();
    rigid.add_rel(1, &[1]).unwrap();
    assert_eq!(automorphisms(&rigid, &budget).unwrap(), vec![vec![0, 1]]);

    // Two triangles over a shared base edge: swap the tops, swap the base,
    // or both.
    let ch2 = chimney(2);
    let autos = automorphisms(&ch2, &budget).unwrap();
    assert_eq!(autos.len(), 4);
    assert_eq!(
        autos,
        automorphisms_oracle(&ch2, &budget).unwrap()
    );
}
