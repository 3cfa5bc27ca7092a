//! The dichotomy for free orderings: over relational structures whose
//! vertices all look alike, unrestricted orderings have the ordering
//! property on pinned witnesses; as soon as single-vertex types differ —
//! loops in a relational language, or father edges in a functional one —
//! some ordering is never realized, whatever the candidate witness.

use std::sync::Arc;

use fam_core::budget::Budget;
use fam_core::lang::{Language, Vertex};
use fam_core::structure::Structure;
use fam_orderings::{structure_universe, verify_ordering_property, OrderClass, OrderedStructure};

fn digraph_lang() -> Arc<Language> {
    Arc::new(Language::relational(&[("E", 2)]))
}

fn complete_graph(k: usize) -> Structure {
    let mut s = Structure::with_vertices(digraph_lang(), k);
    for u in 0..k as Vertex {
        for v in 0..k as Vertex {
            if u != v {
                s.add_rel(0, &[u, v]).unwrap();
            }
        }
    }
    s
}

#[test]
fn uniform_relational_structures_admit_pinned_witnesses() {
    let budget = Budget::default();
    let all = OrderClass::All;

    // Complete graphs and edgeless graphs witness themselves: all of their
    // orderings are isomorphic as ordered structures.
    for k in 1..=3 {
        let b = complete_graph(k);
        let a = OrderedStructure::order(&b, &(0..k as Vertex).collect::<Vec<_>>()).unwrap();
        assert!(verify_ordering_property(&a, &b, &all, &budget).unwrap());

        let b = Structure::with_vertices(digraph_lang(), k);
        let a = OrderedStructure::order(&b, &(0..k as Vertex).collect::<Vec<_>>()).unwrap();
        assert!(verify_ordering_property(&a, &b, &all, &budget).unwrap());
    }

    // The directed triangle witnesses the directed edge: any linear order
    // of a directed cycle leaves at least one arc forward and one backward.
    let mut edge = Structure::with_vertices(digraph_lang(), 2);
    edge.add_rel(0, &[0, 1]).unwrap();
    let a = OrderedStructure::order(&edge, &[0, 1]).unwrap();
    let mut cycle = Structure::with_vertices(digraph_lang(), 3);
    for (u, v) in [(0, 1), (1, 2), (2, 0)] {
        cycle.add_rel(0, &[u, v]).unwrap();
    }
    assert!(verify_ordering_property(&a, &cycle, &all, &budget).unwrap());

    // The bare disjoint union of the edge and its reversal is not enough:
    // sorting it end to end keeps every arc forward.
    let mut union = Structure::with_vertices(digraph_lang(), 4);
    union.add_rel(0, &[0, 1]).unwrap();
    union.add_rel(0, &[3, 2]).unwrap();
    assert!(!verify_ordering_property(&a, &union, &all, &budget).unwrap());
}

#[test]
fn differing_vertex_types_break_the_property_everywhere() {
    // One looped and one unlooped vertex: the two orderings of this pair
    // are different ordered types, and no digraph on up to three vertices
    // realizes both in each of its orderings — sorting any candidate by
    // loop status hides one of them.
    let budget = Budget::default();
    let all = OrderClass::All;
    let lang = digraph_lang();
    let mut pair = Structure::with_vertices(lang.clone(), 2);
    pair.add_rel(0, &[0, 0]).unwrap();
    let a = OrderedStructure::order(&pair, &[0, 1]).unwrap();

    let everything = |_: &Structure| true;
    let universe = structure_universe(&lang, 3, &budget, &everything).unwrap();
    assert!(universe.len() > 100, "sweep should cover all digraph types");
    for b in &universe {
        assert!(
            !verify_ordering_property(&a, b, &all, &budget).unwrap(),
            "unexpected witness with {} vertices",
            b.n()
        );
    }
}

#[test]
fn father_edges_break_the_property_everywhere() {
    // The functional counterpart: a son's closure differs from a root's, and
    // the child-before-father ordering of the edge is never realized under
    // any forest witness up to four vertices.
    let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
    let budget = Budget::default();
    let is_forest = |s: &Structure| {
        let n = s.n();
        (0..n as Vertex).all(|start| {
            let mut v = start;
            for _ in 0..=n {
                match s.fun_value(0, &[v]) {
                    Some(img) => v = *img.iter().next().unwrap(),
                    None => return true,
                }
            }
            false
        })
    };
    let mut edge = Structure::with_vertices(lang.clone(), 2);
    edge.set_fun(0, vec![1], std::collections::BTreeSet::from([0]))
        .unwrap();
    let child_first = OrderedStructure::order(&edge, &[1, 0]).unwrap();

    let universe = structure_universe(&lang, 4, &budget, &is_forest).unwrap();
    assert_eq!(universe.len(), 17);
    for b in &universe {
        assert!(
            !verify_ordering_property(&child_first, b, &OrderClass::All, &budget).unwrap(),
            "unexpected witness with {} vertices",
            b.n()
        );
    }
}
