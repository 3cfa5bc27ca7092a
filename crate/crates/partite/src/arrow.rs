//! Brute-force check of the Ramsey arrow `C → (B)ᴬ_k`: for every coloring
//! of the copies of A in C with k colors, some copy of B in C has all its
//! A-copies in one color.

use std::collections::{BTreeMap, BTreeSet};

use fam_core::{copies_of, enumerate_embeddings, Budget, CoreError, Result, Structure, Vertex};

/// Outcome of an arrow check. A failure carries the first bad coloring in
/// enumeration order: colorings are base-k counters over the A-copies of C
/// (listed ascending by image set), copy 0 least significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arrow {
    Holds,
    Fails { coloring: Vec<(BTreeSet<Vertex>, usize)> },
}

impl Arrow {
    pub fn holds(&self) -> bool {
        matches!(self, Arrow::Holds)
    }
}

/// Checks `c → (b)^a_k` by exhausting colorings. The number of colorings
/// `k^(#copies of a in c)` is charged against the budget up front.
pub fn verify_arrow(
    c: &Structure,
    b: &Structure,
    a: &Structure,
    k: usize,
    budget: &Budget,
) -> Result<Arrow> {
    if k == 0 {
        return Err(CoreError::Invalid("at least one color is needed".into()));
    }
    let copies_a = copies_of(a, c, budget)?;
    let index: BTreeMap<&BTreeSet<Vertex>, usize> =
        copies_a.iter().enumerate().map(|(i, s)| (s, i)).collect();

    // A-copies inside each copy of B in C, as index families. Two embeddings
    // with one image push the same family, deduplicated by the set.
    let copies_ab = copies_of(a, b, budget)?;
    let mut families: BTreeSet<Vec<usize>> = BTreeSet::new();
    for g in enumerate_embeddings(b, c, budget)? {
        let mut fam: Vec<usize> = copies_ab
            .iter()
            .map(|s| {
                let image: BTreeSet<Vertex> = s.iter().map(|&v| g[v as usize]).collect();
                index[&image]
            })
            .collect();
        fam.sort_unstable();
        fam.dedup();
        families.insert(fam);
    }
    let families: Vec<Vec<usize>> = families.into_iter().collect();

    let m = copies_a.len();
    let total = (k as u128).checked_pow(m as u32).ok_or(CoreError::Budget {
        what: "colorings",
        limit: budget.max_colorings,
    })?;
    budget.check_colorings(u64::try_from(total).map_err(|_| CoreError::Budget {
        what: "colorings",
        limit: budget.max_colorings,
    })?)?;

    let mut coloring = vec![0usize; m];
    loop {
        // A family with no A-copies is vacuously monochromatic.
        let good = families
            .iter()
            .any(|fam| fam.windows(2).all(|w| coloring[w[0]] == coloring[w[1]]));
        if !good {
            let witness = copies_a
                .iter()
                .cloned()
                .zip(coloring.iter().copied())
                .collect();
            return Ok(Arrow::Fails { coloring: witness });
        }
        // Advance the base-k counter, copy 0 least significant.
        let mut i = 0;
        loop {
            if i == m {
                return Ok(Arrow::Holds);
            }
            coloring[i] += 1;
            if coloring[i] < k {
                break;
            }
            coloring[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fam_core::Language;

    fn free(lang: &std::sync::Arc<Language>, n: usize) -> Structure {
        let s = Structure::with_vertices(lang.clone(), n);
        let seq: Vec<Vertex> = s.vertices().collect();
        s.with_order(&seq).unwrap()
    }

    #[test]
    fn pigeonhole_on_plain_vertices() {
        // 3 vertices → (2 vertices)^(1 vertex) in 2 colors: among any 3
        // colored points two share a color.
        let lang = std::sync::Arc::new(Language::relational(&[]));
        let a = free(&lang, 1);
        let b = free(&lang, 2);
        let c3 = free(&lang, 3);
        assert!(verify_arrow(&c3, &b, &a, 2, &Budget::default()).unwrap().holds());
        // And 2 vertices do not suffice.
        let c2 = free(&lang, 2);
        let res = verify_arrow(&c2, &b, &a, 2, &Budget::default()).unwrap();
        let Arrow::Fails { coloring } = res else { panic!("expected failure") };
        // First failing counter: colors (1, 0) — copy 0 flipped first.
        assert_eq!(coloring[0].1, 1);
        assert_eq!(coloring[1].1, 0);
    }

    #[test]
    fn path_arrows_edges_trivially_but_not_over_vertex_colorings() {
        let lang = std::sync::Arc::new(Language::relational(&[("E", 2)]));
        let mut path = Structure::with_vertices(lang.clone(), 3);
        for (u, v) in [(0u32, 1u32), (1, 2)] {
            path.add_rel(0, &[u, v]).unwrap();
            path.add_rel(0, &[v, u]).unwrap();
        }
        let path = path.with_order(&[0, 1, 2]).unwrap();
        let mut edge = Structure::with_vertices(lang.clone(), 2);
        edge.add_rel(0, &[0, 1]).unwrap();
        edge.add_rel(0, &[1, 0]).unwrap();
        let edge = edge.with_order(&[0, 1]).unwrap();
        let vertex = free(&lang, 1);
        // With A = B each family is the single copy itself, so the arrow
        // holds for any number of colors; the real test is coloring the
        // vertices, where painting the middle vertex apart kills both edges.
        let res = verify_arrow(&path, &edge, &edge, 2, &Budget::default()).unwrap();
        assert!(res.holds());
        let res = verify_arrow(&path, &edge, &vertex, 2, &Budget::default()).unwrap();
        assert!(!res.holds());
    }

    #[test]
    fn structure_arrows_itself_in_one_color() {
        let lang = std::sync::Arc::new(Language::relational(&[("E", 2)]));
        let mut b = Structure::with_vertices(lang, 2);
        b.add_rel(0, &[0, 1]).unwrap();
        let b = b.with_order(&[0, 1]).unwrap();
        assert!(verify_arrow(&b, &b, &b, 1, &Budget::default()).unwrap().holds());
        // k=2 also holds when A = B: a single copy is always monochromatic.
        assert!(verify_arrow(&b, &b, &b, 2, &Budget::default()).unwrap().holds());
    }

    #[test]
    fn missing_b_copy_fails_with_the_zero_coloring() {
        let lang = std::sync::Arc::new(Language::relational(&[("E", 2)]));
        let mut b = Structure::with_vertices(lang.clone(), 2);
        b.add_rel(0, &[0, 1]).unwrap();
        let b = b.with_order(&[0, 1]).unwrap();
        let c = free(&lang, 2); // no edge, so no copy of b
        let a = free(&lang, 1);
        let res = verify_arrow(&c, &b, &a, 2, &Budget::default()).unwrap();
        let Arrow::Fails { coloring } = res else { panic!("expected failure") };
        assert!(coloring.iter().all(|(_, col)| *col == 0));
    }

    #[test]
    fn coloring_budget_is_enforced() {
        let lang = std::sync::Arc::new(Language::relational(&[]));
        let a = free(&lang, 1);
        let b = free(&lang, 2);
        let c = free(&lang, 30);
        let tight = Budget { max_colorings: 1 << 10, ..Budget::default() };
        assert!(matches!(
            verify_arrow(&c, &b, &a, 2, &tight),
            Err(CoreError::Budget { .. })
        ));
    }
}
