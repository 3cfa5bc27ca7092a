//! The picture construction: starting from a base witness C0 of the arrow
//! for (A, B), build a tower of C0-partite systems ("pictures") by powering
//! and free amalgamation, and return the final carrier with an order
//! extending the part order.
//!
//! Stage k restricts the previous picture to the parts under the k-th copy
//! of A, raises that restriction to a partite power, and extends every copy
//! image of the restriction inside the power back to a full copy of the
//! previous picture by free amalgamation. Gluing works at the level of copy
//! images (one canonical embedding per image): a coloring argument only ever
//! needs the image of a copy to sit inside an extended picture, and image
//! enumeration stays polynomial where embedding enumeration is factorial.
//!
//! Every picture is certified on the way: each irreducible subsystem must be
//! transversal and embeddable into B. Power exponents come from a caller
//! plan (true Hales-Jewett dimensions are astronomically out of reach), so
//! arrow claims about the output are certified separately by `verify_arrow`.

use std::collections::BTreeSet;

use itertools::Itertools;

use fam_core::{
    enumerate_embeddings, exists_embedding, for_each_map, free_amalgam,
    irreducible_closed_subsets, Budget, CoreError, MapKind, Meter, Result, Search, Structure,
    Vertex, VertexMap,
};

use crate::power::partite_power;
use crate::system::PartiteSystem;

/// A free amalgamation class, presented as the caller prefers.
pub enum ClassSpec<'a> {
    /// No constraint; every structure is admitted.
    Unrestricted,
    /// Finitely many forbidden structures: admitted means none embeds.
    Forbidden(&'a [Structure]),
    /// Membership callback over unordered structures.
    Membership(&'a dyn Fn(&Structure) -> Result<bool>),
}

impl ClassSpec<'_> {
    pub fn admits(&self, s: &Structure, budget: &Budget) -> Result<bool> {
        match self {
            ClassSpec::Unrestricted => Ok(true),
            ClassSpec::Forbidden(list) => {
                for f in *list {
                    if exists_embedding(f, s, budget)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            ClassSpec::Membership(f) => f(s),
        }
    }
}

/// Power exponents per stage; stages beyond the list use 1.
#[derive(Debug, Clone, Default)]
pub struct StagePlan {
    pub exponents: Vec<usize>,
}

impl StagePlan {
    pub fn uniform(e: usize, stages: usize) -> StagePlan {
        StagePlan { exponents: vec![e; stages] }
    }

    pub fn exponent(&self, stage: usize) -> usize {
        self.exponents.get(stage).copied().unwrap_or(1)
    }
}

/// What one stage did, and what the certification saw.
#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: usize,
    pub power_exponent: usize,
    pub carrier_size: usize,
    pub glued_copies: usize,
    pub irreducible_subsystems: usize,
}

#[derive(Debug)]
pub struct Construction {
    /// The final picture's carrier, ordered part by part (base order across
    /// parts, carrier index within).
    pub result: Structure,
    /// Pictures P0..Pb over the unordered reduct of C0.
    pub pictures: Vec<PartiteSystem>,
    pub reports: Vec<StageReport>,
}

/// Property check for one picture: every irreducible subsystem is
/// transversal and embeds into `b0`. Returns how many subsystems were seen.
fn certify_picture(p: &PartiteSystem, b0: &Structure, budget: &Budget) -> Result<usize> {
    let subs = irreducible_closed_subsets(p.carrier(), budget)?;
    for set in &subs {
        let mut seen = vec![false; p.base().n()];
        for &v in set {
            let q = p.part_of(v);
            if seen[q] {
                return Err(CoreError::Invalid(format!(
                    "irreducible subsystem {set:?} crowds part {}",
                    q + 1
                )));
            }
            seen[q] = true;
        }
        let (sub, _) = p.carrier().induced(set)?;
        if !exists_embedding(&sub, b0, budget)? {
            return Err(CoreError::Invalid(format!(
                "irreducible subsystem {set:?} does not embed into the small side"
            )));
        }
    }
    Ok(subs.len())
}

/// P0: one disjoint copy of B per copy of B in C0, each projecting onto its
/// copy.
fn initial_picture(
    b0: &Structure,
    c00: &Structure,
    copies_b: &[VertexMap],
) -> Result<PartiteSystem> {
    let mut carrier = Structure::new(b0.lang().clone());
    let mut part_of = Vec::new();
    for (j, g) in copies_b.iter().enumerate() {
        let off = carrier.n() as Vertex;
        for v in b0.vertices() {
            carrier.add_vertex(format!("{}@{}", b0.name(v), j + 1));
            part_of.push(g[v as usize] as usize);
        }
        for r in 0..b0.lang().rels().len() {
            for t in b0.rel_tuples(r) {
                let shifted: Vec<Vertex> = t.iter().map(|&v| v + off).collect();
                carrier.add_rel(r, &shifted)?;
            }
        }
        for f in 0..b0.lang().funs().len() {
            for (dom, img) in b0.fun_entries(f) {
                let nd: Vec<Vertex> = dom.iter().map(|&v| v + off).collect();
                let ni: BTreeSet<Vertex> = img.iter().map(|&v| v + off).collect();
                carrier.set_fun(f, nd, ni)?;
            }
        }
    }
    PartiteSystem::new(c00.clone(), carrier, part_of)
}

fn binom(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 1..=k {
        res = res.checked_mul(n - k + i)?;
        res /= i;
    }
    Some(res)
}

/// One part-preserving embedding per copy image of `pat` inside `sys` (same
/// base on both sides). Candidate images are assembled one subset per part,
/// so parts with few relations do not blow the search up factorially.
fn copies_into(
    sys: &PartiteSystem,
    pat: &PartiteSystem,
    budget: &Budget,
) -> Result<Vec<VertexMap>> {
    if sys.base() != pat.base() {
        return Err(CoreError::LanguageMismatch);
    }
    if pat.carrier().n() == 0 {
        return Ok(vec![VertexMap::new()]);
    }
    let np = pat.base().n();
    let mut pat_parts: Vec<Vec<Vertex>> = vec![Vec::new(); np];
    for v in pat.carrier().vertices() {
        pat_parts[pat.part_of(v)].push(v);
    }
    let mut sys_parts: Vec<Vec<Vertex>> = vec![Vec::new(); np];
    for v in sys.carrier().vertices() {
        sys_parts[sys.part_of(v)].push(v);
    }
    let active: Vec<usize> = (0..np).filter(|&p| !pat_parts[p].is_empty()).collect();
    let mut candidates: u128 = 1;
    for &p in &active {
        if pat_parts[p].len() > sys_parts[p].len() {
            return Ok(Vec::new());
        }
        candidates = binom(sys_parts[p].len() as u128, pat_parts[p].len() as u128)
            .and_then(|c| candidates.checked_mul(c))
            .ok_or(CoreError::Budget { what: "copy image candidates", limit: u64::MAX })?;
    }
    if candidates > budget.max_steps as u128 {
        return Err(CoreError::Budget { what: "copy image candidates", limit: budget.max_steps });
    }

    let mut meter = Meter::new(budget);
    let mut out = Vec::new();
    let per_part = active
        .iter()
        .map(|&p| sys_parts[p].iter().copied().combinations(pat_parts[p].len()))
        .multi_cartesian_product();
    for choice in per_part {
        meter.step()?;
        let set: BTreeSet<Vertex> = choice.iter().flatten().copied().collect();
        if !sys.carrier().is_closed(&set) {
            continue;
        }
        let (ind, old) = sys.carrier().induced_raw(&set);
        let keep = |s: Vertex, t: Vertex| pat.part_of(s) == sys.part_of(old[t as usize]);
        let search = Search::new(MapKind::Embedding, budget).with_candidate(&keep);
        let mut found: Option<VertexMap> = None;
        for_each_map(pat.carrier(), &ind, &search, |f| {
            found = Some(f.clone());
            false
        })?;
        if let Some(f) = found {
            out.push(f.iter().map(|&t| old[t as usize]).collect());
        }
    }
    Ok(out)
}

/// One stage: restrict the previous picture over one copy of A, power it,
/// and extend every copy image of the restriction back to a copy of the
/// previous picture by free amalgamation (copies stay disjoint outside the
/// power).
fn stage(
    prev: &PartiteSystem,
    atil: &[Vertex],
    exponent: usize,
    budget: &Budget,
) -> Result<(PartiteSystem, usize)> {
    let parts: BTreeSet<usize> = atil.iter().map(|&v| v as usize).collect();
    let v_k: BTreeSet<Vertex> = prev
        .carrier()
        .vertices()
        .filter(|&v| parts.contains(&prev.part_of(v)))
        .collect();
    let (bk, bk_into_prev) = prev.induced(&v_k)?;

    let power = partite_power(&bk, exponent, budget)?;
    let copies = copies_into(&power.system, &bk, budget)?;

    let mut acc = power.system.carrier().clone();
    let mut acc_parts: Vec<usize> = power.system.part_map().to_vec();
    for e in &copies {
        let am = free_amalgam(bk.carrier(), &acc, e, prev.carrier(), &bk_into_prev)?;
        // Old carrier vertices keep their indices; fresh ones were appended
        // in ascending origin order.
        for v in prev.carrier().vertices() {
            let w = am.into_2[v as usize] as usize;
            if w == acc_parts.len() {
                acc_parts.push(prev.part_of(v));
            }
        }
        acc = am.result;
        budget.check_vertices(acc.n() as u64)?;
    }

    let sys = PartiteSystem::new(prev.base().clone(), acc, acc_parts)?;
    Ok((sys, copies.len()))
}

/// Runs the whole construction. `a`, `b`, `c0` are ordered structures over
/// one language; `c0` is the caller's base witness (its arrow is NOT
/// re-verified here — run `verify_arrow` separately on micro inputs). The
/// output's membership in `class` is checked at the end.
pub fn partite_construction(
    a: &Structure,
    b: &Structure,
    c0: &Structure,
    class: &ClassSpec,
    plan: &StagePlan,
    budget: &Budget,
) -> Result<Construction> {
    for s in [a, b, c0] {
        s.validate()?;
        s.validate_exact_images()?;
        if !s.lang().has_order() {
            return Err(CoreError::Invalid("construction inputs must be ordered".into()));
        }
    }
    if a.lang() != b.lang() || b.lang() != c0.lang() {
        return Err(CoreError::LanguageMismatch);
    }

    let b0 = b.unordered_reduct();
    let c00 = c0.unordered_reduct();

    // Copies of A in C0, in lexicographic image order; ordered embeddings
    // are rigid, so embeddings and images correspond one to one.
    let mut copies_a = enumerate_embeddings(a, c0, budget)?;
    copies_a.sort_by_key(|e| {
        let mut img = e.clone();
        img.sort_unstable();
        img
    });
    let copies_b = enumerate_embeddings(b, c0, budget)?;

    let mut pictures = vec![initial_picture(&b0, &c00, &copies_b)?];
    let mut reports = vec![StageReport {
        stage: 0,
        power_exponent: 0,
        carrier_size: pictures[0].carrier().n(),
        glued_copies: copies_b.len(),
        irreducible_subsystems: certify_picture(&pictures[0], &b0, budget)?,
    }];

    for (k, atil) in copies_a.iter().enumerate() {
        let exponent = plan.exponent(k);
        let (next, glued) = stage(pictures.last().unwrap(), atil, exponent, budget)?;
        reports.push(StageReport {
            stage: k + 1,
            power_exponent: exponent,
            carrier_size: next.carrier().n(),
            glued_copies: glued,
            irreducible_subsystems: certify_picture(&next, &b0, budget)?,
        });
        pictures.push(next);
    }

    // Order the final carrier by part order, carrier index within a part.
    let last = pictures.last().unwrap();
    let rank = c0.order_rank()?;
    let mut seq: Vec<Vertex> = last.carrier().vertices().collect();
    seq.sort_by_key(|&v| (rank[last.part_of(v)], v));
    let result = last.carrier().with_order(&seq)?;

    if !class.admits(&result.unordered_reduct(), budget)? {
        return Err(CoreError::Invalid(
            "construction output leaves the target class".into(),
        ));
    }

    Ok(Construction { result, pictures, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::verify_arrow;
    use fam_core::Language;
    use std::sync::Arc;

    fn ordered_free(lang: &Arc<Language>, n: usize) -> Structure {
        let s = Structure::with_vertices(lang.clone(), n);
        let seq: Vec<Vertex> = s.vertices().collect();
        s.with_order(&seq).unwrap()
    }

    #[test]
    fn no_copies_of_b_gives_an_empty_picture() {
        // B has an edge, C0 does not: nothing to build from.
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut a = Structure::with_vertices(lang.clone(), 2);
        a.add_rel(0, &[0, 1]).unwrap();
        let a = a.with_order(&[0, 1]).unwrap();
        let b = a.clone();
        let c0 = ordered_free(&lang, 3);
        let out = partite_construction(
            &a,
            &b,
            &c0,
            &ClassSpec::Unrestricted,
            &StagePlan::default(),
            &Budget::default(),
        )
        .unwrap();
        // No copies of A in C0 either, so only the initial picture exists.
        assert_eq!(out.pictures.len(), 1);
        assert_eq!(out.result.n(), 0);
        assert_eq!(out.reports[0].glued_copies, 0);
    }

    #[test]
    fn pigeonhole_instance_satisfies_the_arrow() {
        // A = ordered vertex, B = two ordered vertices, C0 = three: the
        // output must arrow (B)^A in 2 colors.
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let a = ordered_free(&lang, 1);
        let b = ordered_free(&lang, 2);
        let c0 = ordered_free(&lang, 3);
        let out = partite_construction(
            &a,
            &b,
            &c0,
            &ClassSpec::Unrestricted,
            &StagePlan::default(),
            &Budget::default(),
        )
        .unwrap();
        // Three copies of B in C0, so P0 has 6 vertices; each stage powers
        // a single part at exponent 1 and glues the one copy image back.
        assert_eq!(out.pictures.len(), 4);
        assert_eq!(out.result.n(), 6);
        for r in &out.reports {
            assert_eq!(r.carrier_size, 6);
        }
        assert!(verify_arrow(&out.result, &b, &a, 2, &Budget::default())
            .unwrap()
            .holds());
    }

    #[test]
    fn edge_in_triangle_stays_certified_and_in_class() {
        // A = ordered vertex, B = ordered edge, C0 = ordered triangle.
        // Exponent 1 keeps every picture the size of P0; certification
        // checks every irreducible subsystem along the way.
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut b = Structure::with_vertices(lang.clone(), 2);
        b.add_rel(0, &[0, 1]).unwrap();
        b.add_rel(0, &[1, 0]).unwrap();
        let b = b.with_order(&[0, 1]).unwrap();
        let a = ordered_free(&lang, 1);
        let mut c0 = Structure::with_vertices(lang.clone(), 3);
        for (u, v) in [(0u32, 1u32), (0, 2), (1, 2)] {
            c0.add_rel(0, &[u, v]).unwrap();
            c0.add_rel(0, &[v, u]).unwrap();
        }
        let c0 = c0.with_order(&[0, 1, 2]).unwrap();
        // C0 itself arrows (B)^A in two colors: pigeonhole on a triangle.
        assert!(verify_arrow(&c0, &b, &a, 2, &Budget::default()).unwrap().holds());

        let triangle = c0.unordered_reduct();
        let out = partite_construction(
            &a,
            &b,
            &c0,
            &ClassSpec::Forbidden(std::slice::from_ref(&triangle)),
            &StagePlan::default(),
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(out.pictures.len(), 4);
        // P0 = three disjoint edges; every later picture stays that size at
        // exponent 1 because the single copy image glues P back once.
        for r in &out.reports {
            assert_eq!(r.carrier_size, 6);
            // 6 vertices + 3 edges, each irreducible, nothing larger.
            assert_eq!(r.irreducible_subsystems, 9);
        }
        assert_eq!(out.reports[0].glued_copies, 3);
        for r in &out.reports[1..] {
            assert_eq!(r.glued_copies, 1);
        }
        for p in &out.pictures {
            p.validate().unwrap();
        }
    }

    #[test]
    fn powered_stage_glues_every_copy_image() {
        // A = ordered vertex, B = ordered edge, C0 = ordered path 0-1-2.
        // Exponent 2 on the middle stage squares a two-vertex free part to
        // four vertices with six copy images, each gluing the picture back.
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut b = Structure::with_vertices(lang.clone(), 2);
        b.add_rel(0, &[0, 1]).unwrap();
        b.add_rel(0, &[1, 0]).unwrap();
        let b = b.with_order(&[0, 1]).unwrap();
        let a = ordered_free(&lang, 1);
        let mut c0 = Structure::with_vertices(lang.clone(), 3);
        for (u, v) in [(0u32, 1u32), (1, 2)] {
            c0.add_rel(0, &[u, v]).unwrap();
            c0.add_rel(0, &[v, u]).unwrap();
        }
        let c0 = c0.with_order(&[0, 1, 2]).unwrap();

        let out = partite_construction(
            &a,
            &b,
            &c0,
            &ClassSpec::Unrestricted,
            &StagePlan { exponents: vec![2, 2, 1] },
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(out.pictures.len(), 4);
        let sizes: Vec<usize> = out.reports.iter().map(|r| r.carrier_size).collect();
        assert_eq!(sizes, [4, 4, 16, 16]);
        let glued: Vec<usize> = out.reports.iter().map(|r| r.glued_copies).collect();
        // P0 glues the two copies of B; part 0 has one vertex (one image
        // even squared), part 1 has two (six images of a free pair in its
        // square), part 2's six vertices give a single image at exponent 1.
        assert_eq!(glued, [2, 1, 6, 1]);
        assert_eq!(out.result.n(), 16);
        for p in &out.pictures {
            p.validate().unwrap();
        }
    }

    #[test]
    fn membership_class_is_checked_on_the_output() {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let a = ordered_free(&lang, 1);
        let b = ordered_free(&lang, 2);
        let c0 = ordered_free(&lang, 3);
        let deny = |_: &Structure| Ok(false);
        let err = partite_construction(
            &a,
            &b,
            &c0,
            &ClassSpec::Membership(&deny),
            &StagePlan::default(),
            &Budget::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("target class"));
    }
}
