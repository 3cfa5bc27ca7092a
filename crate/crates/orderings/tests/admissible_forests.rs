//! End-to-end checks of the greedy class builder over oriented forests with
//! up to four vertices: every axiom holds, admitted orders sort vertices by
//! level and by closure type, and the class survives its text format.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::budget::Budget;
use fam_core::lang::{Language, Vertex};
use fam_core::structure::Structure;
use fam_orderings::{
    analyze, build_admissible_class, check_admissibility_axioms, closure_type_key, level_oracle,
    structure_universe, AdmissibleClass,
};

fn forest_lang() -> Arc<Language> {
    Arc::new(Language::functional(&[("F", 1, 1)]))
}

/// Acyclic single-valued parent maps: following parents terminates.
fn is_forest(s: &Structure) -> bool {
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
}

#[test]
fn the_forest_class_up_to_four_vertices_is_admissible() {
    let budget = Budget::default();
    let universe = structure_universe(&forest_lang(), 4, &budget, &is_forest).unwrap();
    // Forest shapes by size: 1, 1, 2, 4, 9.
    assert_eq!(universe.len(), 17);

    let class = build_admissible_class(&universe, &budget).unwrap();
    let report = check_admissibility_axioms(&class, &universe, &budget).unwrap();
    assert!(report.ok(), "{report:?}");

    for rep in class.reps() {
        let ana = analyze(rep.structure());
        let mut by_rank: Vec<Vertex> = (0..rep.n() as Vertex).collect();
        by_rank.sort_by_key(|&v| rep.rank_of(v));

        // Levels never decrease along an admitted order.
        let levels: Vec<usize> = by_rank.iter().map(|&v| ana.level(v)).collect();
        assert!(
            levels.windows(2).all(|w| w[0] <= w[1]),
            "levels {levels:?} out of order"
        );

        // Closure types never decrease either: vertices of strictly smaller
        // or lexicographically earlier closure type come first.
        let keys: Vec<_> = by_rank
            .iter()
            .map(|&v| closure_type_key(rep.structure(), &ana, v, &budget).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] <= w[1]), "types out of order");
    }
}

#[test]
fn level_computations_agree_with_the_recursive_oracle() {
    let budget = Budget::default();
    for s in structure_universe(&forest_lang(), 4, &budget, &is_forest).unwrap() {
        let ana = analyze(&s);
        for v in 0..s.n() as Vertex {
            assert_eq!(ana.level(v), level_oracle(&s, v));
        }
    }
    // Same agreement over every mixed-language structure on three vertices,
    // where components are no longer singletons.
    let lang = Arc::new(Language::mixed(&[("R", 2)], &[("F", 1, 1)]));
    fam_core::enumerate::for_each_structure(&lang, 3, &budget, |s| {
        let ana = analyze(s);
        for v in 0..3 {
            assert_eq!(ana.level(v), level_oracle(s, v));
        }
        true
    })
    .unwrap();
}

#[test]
fn the_class_survives_its_text_format() {
    let budget = Budget::default();
    let universe = structure_universe(&forest_lang(), 4, &budget, &is_forest).unwrap();
    let class = build_admissible_class(&universe, &budget).unwrap();
    let text = class.to_text().unwrap();
    let back = AdmissibleClass::parse(&text).unwrap();
    assert_eq!(back.to_text().unwrap(), text);
    assert_eq!(back.reps().len(), class.reps().len());

    // Membership answers match on every ordering of every universe shape.
    use itertools::Itertools;
    for s in &universe {
        for perm in (0..s.n() as Vertex).permutations(s.n()) {
            let x = fam_orderings::OrderedStructure::order(s, &perm).unwrap();
            assert_eq!(class.contains(&x).unwrap(), back.contains(&x).unwrap());
        }
    }
}

#[test]
fn roots_precede_sons_in_every_admitted_order() {
    let budget = Budget::default();
    let universe = structure_universe(&forest_lang(), 4, &budget, &is_forest).unwrap();
    let class = build_admissible_class(&universe, &budget).unwrap();

    // Cherry with an extra free root: vertex 0 fathers 1 and 2, vertex 3 is
    // free.  Roots are mutually equivalent (either may come first) and both
    // strictly precede the sons; the brothers' relative order is free and
    // collapses to one ordered type under their swap automorphism.
    let mut s = Structure::with_vertices(forest_lang(), 4);
    s.set_fun(0, vec![1], BTreeSet::from([0])).unwrap();
    s.set_fun(0, vec![2], BTreeSet::from([0])).unwrap();
    for seq in [[0, 3, 1, 2], [3, 0, 1, 2], [0, 3, 2, 1]] {
        let x = fam_orderings::OrderedStructure::order(&s, &seq).unwrap();
        assert!(class.contains(&x).unwrap(), "{seq:?}");
    }
    // A root after a son is rejected: the son's closure type is larger.
    for seq in [[0, 1, 3, 2], [0, 1, 2, 3]] {
        let x = fam_orderings::OrderedStructure::order(&s, &seq).unwrap();
        assert!(!class.contains(&x).unwrap(), "{seq:?}");
    }
}
