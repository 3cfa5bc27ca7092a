//! Whole-pipeline runs: find a minimal base witness by brute force, feed it
//! to the picture construction, and certify the resulting arrow; and for a
//! language with partial functions, totalize first, run the construction in
//! the enlarged language, and translate back at the end.

use std::collections::BTreeSet;
use std::sync::Arc;

use fam_core::{are_isomorphic, Budget, Language, Structure, Vertex};
use fam_partite::{
    base_ramsey_bruteforce, complete, decomplete, partite_construction, verify_arrow, ClassSpec,
    StagePlan,
};

fn ordered_free(lang: &Arc<Language>, n: usize) -> Structure {
    let s = Structure::with_vertices(lang.clone(), n);
    let seq: Vec<Vertex> = s.vertices().collect();
    s.with_order(&seq).unwrap()
}

#[test]
fn bruteforced_witness_feeds_the_construction() {
    // A = ordered vertex, B = two ordered vertices, two colors. The search
    // finds the three-vertex witness, the construction builds its pictures,
    // and the final structure still satisfies the arrow.
    let lang = Arc::new(Language::relational(&[("E", 2)]));
    let a = ordered_free(&lang, 1);
    let b = ordered_free(&lang, 2);
    let budget = Budget::default();

    let c0 = base_ramsey_bruteforce(&a, &b, 2, 4, &budget).unwrap();
    assert_eq!(c0.n(), 3);

    let out = partite_construction(
        &a,
        &b,
        &c0,
        &ClassSpec::Unrestricted,
        &StagePlan::default(),
        &budget,
    )
    .unwrap();
    assert!(verify_arrow(&out.result, &b, &a, 2, &budget).unwrap().holds());

    // Every picture projects onto the witness and is a valid system.
    for p in &out.pictures {
        p.validate().unwrap();
        assert_eq!(p.base().n(), c0.n());
    }
}

#[test]
fn partial_functions_run_through_totalization_and_back() {
    // Original language: one unary set-valued function. B sends its first
    // vertex to its second and is silent elsewhere; totalization fills the
    // gaps, the pipeline runs in the enlarged language, and the final
    // structure translates back to the original language.
    let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
    let budget = Budget::default();

    let mut b_raw = Structure::with_vertices(lang.clone(), 2);
    b_raw.set_fun(0, vec![0], BTreeSet::from([1])).unwrap();
    let b_raw = b_raw.with_order(&[0, 1]).unwrap();
    let a_raw = ordered_free(&lang, 1);

    let a = complete(&a_raw, &budget).unwrap();
    let b = complete(&b_raw, &budget).unwrap();
    assert_eq!(a.lang(), b.lang());

    // Inside a copy of B only the second vertex matches A (the first has a
    // marked domain and a non-loop image), so families are singletons and
    // B is its own minimal witness.
    let c0 = base_ramsey_bruteforce(&a, &b, 2, 3, &budget).unwrap();
    assert_eq!(c0.n(), 2);

    let out = partite_construction(
        &a,
        &b,
        &c0,
        &ClassSpec::Unrestricted,
        &StagePlan::default(),
        &budget,
    )
    .unwrap();
    assert!(verify_arrow(&out.result, &b, &a, 2, &budget).unwrap().holds());

    // Translate back: marks disappear, fillers are dropped, the genuine
    // entry survives, and what remains is B again.
    let lang_ord = Arc::new(lang.ordered().unwrap());
    let back = decomplete(&out.result, &lang_ord).unwrap();
    assert_eq!(back.n(), 2);
    assert_eq!(back.fun_entries(0).len(), 1);
    // The one surviving entry sends the order-least vertex to the other.
    let rank = back.order_rank().unwrap();
    let (dom, img) = back.fun_entries(0).iter().next().unwrap();
    assert_eq!(rank[dom[0] as usize], 0);
    assert_eq!(img.iter().map(|&v| rank[v as usize]).collect::<Vec<_>>(), [1]);
    assert!(are_isomorphic(&back, &b_raw, &budget).unwrap());
}
