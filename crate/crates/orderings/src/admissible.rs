//! Admissible classes of vertex orderings.
//!
//! An admissible class fixes, for every structure of a universe, which total
//! vertex orders are allowed, subject to six requirements checked by
//! [`check_admissibility_axioms`]: every structure gets at least one admitted
//! order, admitted orders restrict to admitted orders on closed
//! substructures, they respect the vertex precedence preorder, they keep
//! components contiguous, compatible partial orders on unions of closures
//! extend to admitted full orders, and similar admitted extensions are
//! isomorphic.  [`build_admissible_class`] constructs such a class greedily,
//! smallest structures first.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;

use fam_core::budget::{Budget, Meter};
use fam_core::canon::{canonical_key, CanonKey};
use fam_core::enumerate::for_each_structure;
use fam_core::error::{CoreError, Result};
use fam_core::lang::{Language, Vertex};
use fam_core::structure::Structure;

use crate::analysis::{analyze, ClosureAnalysis};
use crate::ceorder::similar;
use crate::ordered::OrderedStructure;
use crate::precedes::strictly_precedes_in;

/// True when the stored order puts `u` before `v` whenever `u` strictly
/// precedes `v` in the closure-based preorder.
pub fn refines_precedence(
    x: &OrderedStructure,
    ana: &ClosureAnalysis,
    budget: &Budget,
) -> Result<bool> {
    let n = x.n() as Vertex;
    for u in 0..n {
        for v in 0..n {
            if u != v
                && x.rank_of(u) >= x.rank_of(v)
                && strictly_precedes_in(x.structure(), ana, x.rank(), u, v, budget)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when every component occupies a contiguous block of order ranks.
pub fn components_are_intervals(x: &OrderedStructure, ana: &ClosureAnalysis) -> bool {
    (0..ana.component_count()).all(|c| {
        let mut ranks: Vec<usize> = ana.component(c).iter().map(|&v| x.rank_of(v)).collect();
        ranks.sort_unstable();
        ranks.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

/// A set of admitted ordering types over one ordered language, queried by
/// canonical key.  The empty ordering is always admitted.
#[derive(Debug, Clone)]
pub struct AdmissibleClass {
    lang: Arc<Language>,
    max_n: usize,
    admitted: BTreeSet<CanonKey>,
    reps: Vec<OrderedStructure>,
}

impl AdmissibleClass {
    /// Builds a class from representative ordered structures; duplicates of
    /// one ordered type collapse, and representatives end up sorted by key.
    pub fn from_reps(
        max_n: usize,
        lang: Arc<Language>,
        reps: Vec<OrderedStructure>,
    ) -> Result<AdmissibleClass> {
        if !lang.has_order() {
            return Err(CoreError::Invalid(
                "an admissible class needs an ordered language".into(),
            ));
        }
        let mut empty = Structure::with_vertices(lang.clone(), 0);
        empty.set_order(&[])?;
        let empty = OrderedStructure::new(empty)?;
        let mut by_key: BTreeMap<CanonKey, OrderedStructure> = BTreeMap::new();
        by_key.insert(empty.key(), empty);
        for r in reps {
            if r.structure().lang().as_ref() != lang.as_ref() {
                return Err(CoreError::LanguageMismatch);
            }
            if r.n() > max_n {
                return Err(CoreError::Invalid(format!(
                    "representative has {} vertices but the class caps at {max_n}",
                    r.n()
                )));
            }
            by_key.insert(r.key(), r);
        }
        Ok(AdmissibleClass {
            lang,
            max_n,
            admitted: by_key.keys().cloned().collect(),
            reps: by_key.into_values().collect(),
        })
    }

    /// Membership of an ordered structure, by its ordered isomorphism type.
    /// Errors on a different language or a structure beyond the class bound.
    pub fn contains(&self, x: &OrderedStructure) -> Result<bool> {
        if x.structure().lang().as_ref() != self.lang.as_ref() {
            return Err(CoreError::LanguageMismatch);
        }
        if x.n() > self.max_n {
            return Err(CoreError::Invalid(format!(
                "structure has {} vertices but the class only decides up to {}",
                x.n(),
                self.max_n
            )));
        }
        Ok(self.admitted.contains(&x.key()))
    }

    /// One representative per admitted ordering type, sorted by key.
    pub fn reps(&self) -> &[OrderedStructure] {
        &self.reps
    }

    pub fn lang(&self) -> &Arc<Language> {
        &self.lang
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Deterministic text form: a `max-n` header, then one block per
    /// representative separated by `---` lines.
    pub fn to_text(&self) -> Result<String> {
        let mut out = format!("max-n {}\n", self.max_n);
        for r in &self.reps {
            out.push_str("---\n");
            out.push_str(&fam_core::fmt::to_text(r.structure())?);
        }
        Ok(out)
    }

    /// Parses the [`Self::to_text`] format.
    pub fn parse(text: &str) -> Result<AdmissibleClass> {
        let mut lines = text.lines().enumerate();
        let max_n = loop {
            let (i, line) = lines.next().ok_or(CoreError::Parse {
                line: 0,
                msg: "missing max-n header".into(),
            })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match line.strip_prefix("max-n ") {
                Some(v) => {
                    break v.trim().parse::<usize>().map_err(|_| CoreError::Parse {
                        line: i + 1,
                        msg: format!("bad max-n value `{v}`"),
                    })?
                }
                None => {
                    return Err(CoreError::Parse {
                        line: i + 1,
                        msg: "expected `max-n N` header".into(),
                    })
                }
            }
        };

        let mut reps = Vec::new();
        let mut block = String::new();
        let flush = |block: &mut String, reps: &mut Vec<OrderedStructure>| -> Result<()> {
            if !block.trim().is_empty() {
                reps.push(OrderedStructure::new(fam_core::fmt::parse(block)?)?);
            }
            block.clear();
            Ok(())
        };
        for (_, line) in lines {
            if line.trim() == "---" {
                flush(&mut block, &mut reps)?;
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        flush(&mut block, &mut reps)?;

        let lang = match reps.first() {
            Some(r) => r.structure().lang().clone(),
            None => {
                return Err(CoreError::Parse {
                    line: 0,
                    msg: "class text needs at least one representative block".into(),
                })
            }
        };
        AdmissibleClass::from_reps(max_n, lang, reps)
    }
}

/// All structures over an unordered language with at most `max_n` vertices
/// passing `keep`, one representative per isomorphism type, sorted by
/// canonical key (so smaller structures come first).
pub fn structure_universe(
    lang: &Arc<Language>,
    max_n: usize,
    budget: &Budget,
    keep: &dyn Fn(&Structure) -> bool,
) -> Result<Vec<Structure>> {
    if lang.has_order() {
        return Err(CoreError::Invalid(
            "universe enumeration expects an unordered language".into(),
        ));
    }
    let mut seen: BTreeMap<CanonKey, Structure> = BTreeMap::new();
    for n in 0..=max_n {
        let mut failure = None;
        for_each_structure(lang, n, budget, |s| {
            if !keep(s) {
                return true;
            }
            match canonical_key(s, budget) {
                Ok(k) => {
                    seen.entry(k).or_insert_with(|| s.clone());
                    true
                }
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(seen.into_values().collect())
}

fn mask_set(mask: u32) -> BTreeSet<Vertex> {
    (0..32u32).filter(|&b| mask & (1u32 << b) != 0).collect()
}

/// Restriction of an order candidate to a closed subset, as an ordered
/// structure on fresh vertices.  `rank` may be partial as long as it covers
/// the subset.
pub(crate) fn restrict_order(
    s: &Structure,
    rank: &[usize],
    set: &BTreeSet<Vertex>,
) -> Result<OrderedStructure> {
    let (sub, old) = s.unordered_reduct().induced(set)?;
    let mut seq: Vec<Vertex> = (0..sub.n() as Vertex).collect();
    seq.sort_by_key(|&i| rank[old[i as usize] as usize]);
    OrderedStructure::order(&sub, &seq)
}

/// Greedy construction of an admissible class over a universe of unordered
/// structures (one representative per isomorphism type, one shared language,
/// closed under nonempty closed substructures).
///
/// Structures are processed smallest first; each structure's candidate
/// orderings are visited in canonical-key order and admitted when they
/// respect strict precedence, keep components contiguous, restrict to
/// admitted orderings on every proper closed subset, and — for closure
/// extensions — are not similar to an admitted extension of a different
/// ordered type.
pub fn build_admissible_class(universe: &[Structure], budget: &Budget) -> Result<AdmissibleClass> {
    let lang = match universe.first() {
        Some(s) => s.lang().clone(),
        None => {
            return Err(CoreError::Invalid(
                "the universe needs at least one structure".into(),
            ))
        }
    };
    if lang.has_order() {
        return Err(CoreError::Invalid(
            "the universe must consist of unordered structures".into(),
        ));
    }

    let mut meter = Meter::new(budget);
    let mut by_key: BTreeMap<CanonKey, &Structure> = BTreeMap::new();
    for s in universe {
        if s.lang().as_ref() != lang.as_ref() {
            return Err(CoreError::LanguageMismatch);
        }
        if s.n() > 31 {
            return Err(CoreError::Budget {
                what: "subset enumeration",
                limit: 31,
            });
        }
        if by_key.insert(canonical_key(s, budget)?, s).is_some() {
            return Err(CoreError::Invalid(
                "two universe structures share an isomorphism type".into(),
            ));
        }
    }
    for s in universe {
        let n = s.n();
        for mask in 1..(1u32 << n).saturating_sub(1) {
            meter.step()?;
            let set = mask_set(mask);
            if !s.is_closed(&set) {
                continue;
            }
            let (sub, _) = s.induced(&set)?;
            if !by_key.contains_key(&canonical_key(&sub, budget)?) {
                return Err(CoreError::Invalid(
                    "the universe is not closed under substructures".into(),
                ));
            }
        }
    }

    let max_n = universe.iter().map(Structure::n).max().unwrap_or(0);
    let mut admitted: BTreeSet<CanonKey> = BTreeSet::new();
    let mut reps: Vec<OrderedStructure> = Vec::new();
    let mut extensions: Vec<(CanonKey, OrderedStructure)> = Vec::new();

    // Keys begin with the vertex count, so key order processes smaller
    // structures first and every proper closed subset is already decided.
    for (ukey, &s) in &by_key {
        let n = s.n();
        let ana = analyze(s);
        let is_extension = ana.extension().is_some();

        let mut candidates: BTreeMap<CanonKey, OrderedStructure> = BTreeMap::new();
        for perm in (0..n as Vertex).permutations(n) {
            meter.step()?;
            let x = OrderedStructure::order(s, &perm)?;
            candidates.entry(x.key()).or_insert(x);
        }

        'cand: for (key, x) in candidates {
            if !refines_precedence(&x, &ana, budget)? || !components_are_intervals(&x, &ana) {
                continue;
            }
            for mask in 1..(1u32 << n).saturating_sub(1) {
                meter.step()?;
                let set = mask_set(mask);
                if !s.is_closed(&set) {
                    continue;
                }
                if !admitted.contains(&restrict_order(x.structure(), x.rank(), &set)?.key()) {
                    continue 'cand;
                }
            }
            if is_extension {
                for (prev_ukey, prev) in &extensions {
                    if prev_ukey == ukey && prev.key() != key && similar(&x, prev, budget)? {
                        continue 'cand;
                    }
                }
            }
            admitted.insert(key);
            if is_extension {
                extensions.push((ukey.clone(), x.clone()));
            }
            reps.push(x);
        }
    }

    let ordered_lang = Arc::new(lang.ordered()?);
    // Rebuild each representative over the shared ordered language value.
    AdmissibleClass::from_reps(max_n, ordered_lang, reps)
}

/// Outcome of checking the class axioms over a universe.  All booleans true
/// and no conflicts means the class is admissible for that universe.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Every universe structure has at least one admitted ordering.
    pub orderable: bool,
    /// Admitted orderings restrict to admitted ones on closed subsets.
    pub substructure_closed: bool,
    /// Admitted orderings respect the strict precedence preorder.
    pub refines_precedence: bool,
    /// Components fill contiguous rank intervals in admitted orderings.
    pub component_intervals: bool,
    /// Compatible partial orders on unions of closures extend to admitted
    /// full orderings.
    pub partial_orders_extend: bool,
    /// Pairs of representatives that are similar extensions without being
    /// isomorphic as ordered structures (must be empty).
    pub similar_extension_conflicts: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.orderable
            && self.substructure_closed
            && self.refines_precedence
            && self.component_intervals
            && self.partial_orders_extend
            && self.similar_extension_conflicts.is_empty()
    }
}

/// Checks all class axioms of `class` against `universe` (unordered
/// representatives over the class's language without its order relation).
pub fn check_admissibility_axioms(
    class: &AdmissibleClass,
    universe: &[Structure],
    budget: &Budget,
) -> Result<AxiomReport> {
    let unordered = class.lang().without_order();
    for s in universe {
        if s.lang().as_ref() != &unordered {
            return Err(CoreError::LanguageMismatch);
        }
        if s.n() > 31 {
            return Err(CoreError::Budget {
                what: "subset enumeration",
                limit: 31,
            });
        }
    }
    let mut meter = Meter::new(budget);

    // Admitted full orderings of each universe structure, as rank vectors.
    let mut admitted_ranks: Vec<Vec<Vec<usize>>> = Vec::with_capacity(universe.len());
    for s in universe {
        let mut ranks = Vec::new();
        for perm in (0..s.n() as Vertex).permutations(s.n()) {
            meter.step()?;
            let x = OrderedStructure::order(s, &perm)?;
            if class.contains(&x)? {
                ranks.push(x.rank().to_vec());
            }
        }
        admitted_ranks.push(ranks);
    }

    let orderable = admitted_ranks.iter().all(|r| !r.is_empty());

    let mut substructure_closed = true;
    let mut refines = true;
    let mut intervals = true;
    for x in class.reps() {
        let ana = analyze(x.structure());
        refines = refines && refines_precedence(x, &ana, budget)?;
        intervals = intervals && components_are_intervals(x, &ana);
        let n = x.n();
        let plain = x.structure().unordered_reduct();
        for mask in 1..(1u32 << n).saturating_sub(1) {
            meter.step()?;
            let set = mask_set(mask);
            if !plain.is_closed(&set) {
                continue;
            }
            let sub = restrict_order(x.structure(), x.rank(), &set)?;
            if !class.contains(&sub)? {
                substructure_closed = false;
            }
        }
    }

    // Partial orders on unions of closures: when a partial order respects
    // strict precedence, keeps components contiguous, and restricts to
    // admitted orderings on closed subsets, some admitted full ordering
    // must extend it.
    let mut partial_orders_extend = true;
    for (si, s) in universe.iter().enumerate() {
        let n = s.n();
        let ana = analyze(s);
        for mask in 1..(1u32 << n) {
            let members = mask_set(mask);
            let closure_union = members
                .iter()
                .all(|&v| ana.closure(v).iter().all(|&w| mask & (1 << w) != 0));
            if !closure_union {
                continue;
            }
            'orders: for perm in members.iter().copied().permutations(members.len()) {
                meter.step()?;
                let mut rank = vec![usize::MAX; n];
                for (i, &v) in perm.iter().enumerate() {
                    rank[v as usize] = i;
                }

                // Strict precedence (ranks are only read inside closures,
                // which stay inside the subset).
                for &u in &members {
                    for &v in &members {
                        if u != v
                            && rank[u as usize] >= rank[v as usize]
                            && strictly_precedes_in(s, &ana, &rank, u, v, budget)?
                        {
                            continue 'orders;
                        }
                    }
                }
                // Components meet the subset in contiguous rank blocks.
                for c in 0..ana.component_count() {
                    let mut cr: Vec<usize> = ana
                        .component(c)
                        .iter()
                        .filter(|&&v| mask & (1 << v) != 0)
                        .map(|&v| rank[v as usize])
                        .collect();
                    cr.sort_unstable();
                    if cr.windows(2).any(|w| w[1] != w[0] + 1) {
                        continue 'orders;
                    }
                }
                // Closed subsets inside the set carry admitted orderings.
                let mut sub = mask;
                loop {
                    meter.step()?;
                    if sub != 0 {
                        let subset = mask_set(sub);
                        if s.is_closed(&subset)
                            && !class.contains(&restrict_order(s, &rank, &subset)?)?
                        {
                            continue 'orders;
                        }
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & mask;
                }

                // The partial order is compatible; some admitted full
                // ordering must restrict to it.
                let extended = admitted_ranks[si].iter().any(|full| {
                    members.iter().all(|&u| {
                        members.iter().all(|&v| {
                            (full[u as usize] < full[v as usize])
                                == (rank[u as usize] < rank[v as usize])
                        })
                    })
                });
                if !extended {
                    partial_orders_extend = false;
                }
            }
        }
    }

    let mut conflicts = Vec::new();
    let extension_reps: Vec<usize> = (0..class.reps().len())
        .filter(|&i| analyze(class.reps()[i].structure()).extension().is_some())
        .collect();
    for (a, &i) in extension_reps.iter().enumerate() {
        for &j in &extension_reps[a + 1..] {
            meter.step()?;
            if similar(&class.reps()[i], &class.reps()[j], budget)? {
                conflicts.push(format!(
                    "representatives {i} and {j} are similar extensions of distinct ordered types"
                ));
            }
        }
    }

    Ok(AxiomReport {
        orderable,
        substructure_closed,
        refines_precedence: refines,
        component_intervals: intervals,
        partial_orders_extend,
        similar_extension_conflicts: conflicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn forest_universe(max_n: usize) -> Vec<Structure> {
        structure_universe(&forest_lang(), max_n, &Budget::default(), &is_forest).unwrap()
    }

    #[test]
    fn forest_universe_has_one_rep_per_shape() {
        // Shapes up to three vertices: empty; root; two roots; edge; three
        // roots; edge plus root; oriented path; root with two sons.
        assert_eq!(forest_universe(3).len(), 8);
    }

    #[test]
    fn greedy_builder_admits_the_expected_forest_orderings() {
        let universe = forest_universe(3);
        let budget = Budget::default();
        let class = build_admissible_class(&universe, &budget).unwrap();

        // Counts per structure: empty 1, root 1, two roots 1, edge 1,
        // three roots 1, edge plus root 2, path 1, root with two sons 1.
        assert_eq!(class.reps().len(), 9);

        // The edge admits exactly the root-first ordering.
        let mut edge = Structure::with_vertices(forest_lang(), 2);
        edge.set_fun(0, vec![1], BTreeSet::from([0])).unwrap();
        assert!(class
            .contains(&OrderedStructure::order(&edge, &[0, 1]).unwrap())
            .unwrap());
        assert!(!class
            .contains(&OrderedStructure::order(&edge, &[1, 0]).unwrap())
            .unwrap());

        // The edge-plus-free-root shape admits two ordered types: the free
        // root may land before or after the other root, never after the son.
        let mut s = Structure::with_vertices(forest_lang(), 3);
        s.set_fun(0, vec![1], BTreeSet::from([0])).unwrap();
        for (seq, want) in [
            ([0, 2, 1], true),
            ([2, 0, 1], true),
            ([0, 1, 2], false),
            ([1, 0, 2], false),
        ] {
            let x = OrderedStructure::order(&s, &seq).unwrap();
            assert_eq!(class.contains(&x).unwrap(), want, "order {seq:?}");
        }
    }

    #[test]
    fn forest_class_passes_every_axiom() {
        let universe = forest_universe(3);
        let budget = Budget::default();
        let class = build_admissible_class(&universe, &budget).unwrap();
        let report = check_admissibility_axioms(&class, &universe, &budget).unwrap();
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn loop_free_digraphs_admit_every_ordering() {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let no_loops =
            |s: &Structure| s.vertices().all(|v| !s.rel_tuples(0).contains(&vec![v, v]));
        let budget = Budget::default();
        let universe = structure_universe(&lang, 2, &budget, &no_loops).unwrap();
        assert_eq!(universe.len(), 5);
        let class = build_admissible_class(&universe, &budget).unwrap();
        for s in &universe {
            for perm in (0..s.n() as Vertex).permutations(s.n()) {
                let x = OrderedStructure::order(s, &perm).unwrap();
                assert!(class.contains(&x).unwrap());
            }
        }
        let report = check_admissibility_axioms(&class, &universe, &budget).unwrap();
        assert!(report.ok(), "{report:?}");
    }

    #[test]
    fn a_class_without_orderings_fails_the_first_axiom() {
        let universe = forest_universe(1);
        let lang = Arc::new(forest_lang().ordered().unwrap());
        let class = AdmissibleClass::from_reps(1, lang, vec![]).unwrap();
        let report = check_admissibility_axioms(&class, &universe, &Budget::default()).unwrap();
        assert!(!report.orderable);
        assert!(report.substructure_closed && report.refines_precedence);
        assert!(!report.ok());
    }

    #[test]
    fn similar_nonisomorphic_extensions_are_reported() {
        // Two orderings of the oriented path that agree on the interior but
        // place the deepest vertex differently are similar yet distinct.
        let mut s = Structure::with_vertices(forest_lang(), 3);
        s.set_fun(0, vec![1], BTreeSet::from([0])).unwrap();
        s.set_fun(0, vec![2], BTreeSet::from([1])).unwrap();
        let a = OrderedStructure::order(&s, &[0, 1, 2]).unwrap();
        let b = OrderedStructure::order(&s, &[0, 2, 1]).unwrap();
        let lang = a.structure().lang().clone();
        let class = AdmissibleClass::from_reps(3, lang, vec![a, b]).unwrap();
        let report =
            check_admissibility_axioms(&class, &forest_universe(3), &Budget::default()).unwrap();
        assert_eq!(report.similar_extension_conflicts.len(), 1);
        assert!(!report.ok());
    }

    #[test]
    fn class_text_round_trips() {
        let universe = forest_universe(2);
        let budget = Budget::default();
        let class = build_admissible_class(&universe, &budget).unwrap();
        let text = class.to_text().unwrap();
        let back = AdmissibleClass::parse(&text).unwrap();
        assert_eq!(back.max_n(), class.max_n());
        assert_eq!(back.to_text().unwrap(), text);
        for (a, b) in class.reps().iter().zip(back.reps()) {
            assert_eq!(a.key(), b.key());
        }
    }

    #[test]
    fn builder_rejects_a_universe_with_holes() {
        // The oriented path alone is missing its own substructures.
        let mut s = Structure::with_vertices(forest_lang(), 2);
        s.set_fun(0, vec![1], BTreeSet::from([0])).unwrap();
        let err = build_admissible_class(&[s], &Budget::default()).unwrap_err();
        assert!(matches!(err, CoreError::Invalid(_)));
    }
}
