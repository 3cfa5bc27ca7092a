//! Extending partial automorphisms of the extension structure.
//!
//! A partial automorphism between generic substructures determines, through
//! any compatible base automorphism, a correspondence on the carried pairs;
//! per big set this yields a partial value map which is completed to a
//! permutation fixing 0, order-preservingly on the unconstrained values.
//! Transporting every valuation through the result gives a total
//! automorphism extending the partial one, and choosing the base
//! automorphisms coherently makes the whole family of extensions compose:
//! whenever `h = g ∘ f` as partial maps, the extension of `h` is the
//! composition of the extensions.

use std::collections::{BTreeMap, BTreeSet};

use fam_core::{compose, is_embedding, is_injective, Budget, CoreError, Meter, Result, Vertex, VertexMap};

use crate::base::{partial_isomorphisms, PartialMap};
use crate::extension::EppaExtension;
use crate::valuation::{apply_pair, generic_valuations, pair_universe, ValuationFn};

/// Completes a partial injective map on `0..size` to a permutation fixing 0:
/// the unassigned keys, ascending, take the unused values, ascending.
pub fn complete_partial_permutation(size: u16, partial: &BTreeMap<u16, u16>) -> Result<Vec<u16>> {
    let mut perm: Vec<Option<u16>> = vec![None; size as usize];
    let mut used = vec![false; size as usize];
    perm[0] = Some(0);
    used[0] = true;
    for (&k, &v) in partial {
        if k >= size || v >= size {
            return Err(CoreError::Invalid(format!(
                "value correspondence entry {k} -> {v} is out of range 0..{size}"
            )));
        }
        if (k == 0) != (v == 0) {
            return Err(CoreError::Invalid(
                "a value correspondence must fix 0 and only 0".into(),
            ));
        }
        match perm[k as usize] {
            Some(old) if old != v => {
                return Err(CoreError::Invalid(format!(
                    "conflicting value correspondence at {k}: {old} and {v}"
                )))
            }
            Some(_) => {}
            None => {
                if used[v as usize] {
                    return Err(CoreError::Invalid(format!(
                        "value correspondence is not injective at {v}"
                    )));
                }
                perm[k as usize] = Some(v);
                used[v as usize] = true;
            }
        }
    }
    let free: Vec<u16> = (0..size).filter(|&v| !used[v as usize]).collect();
    let mut next = free.into_iter();
    let out: Vec<u16> = perm
        .into_iter()
        .map(|slot| slot.unwrap_or_else(|| next.next().expect("counts match")))
        .collect();
    Ok(out)
}

/// A total automorphism of the extension structure, with the data that
/// built it: the base automorphism, one completed value correspondence per
/// big set, and the vertex map itself.
#[derive(Debug, Clone)]
pub struct ExtendedAutomorphism {
    pub g: VertexMap,
    pub thetas: Vec<Vec<u16>>,
    pub phat: VertexMap,
}

impl ExtendedAutomorphism {
    /// Where the lift sends a pair.
    pub fn apply_pair(&self, ext: &EppaExtension, p: &ValuationFn) -> Result<ValuationFn> {
        apply_pair(&self.g, &self.thetas, p, ext.family())
    }
}

fn vertex_set(p: &PartialMap, side_range: bool) -> BTreeSet<Vertex> {
    p.iter()
        .map(|(&x, &y)| if side_range { y } else { x })
        .collect()
}

/// Validates that `p` is a partial automorphism of the extension between
/// generic substructures: injective, closed domain and range, an
/// isomorphism between the induced substructures, both sides pairwise
/// generic.
fn validate_partial(ext: &EppaExtension, p: &PartialMap, budget: &Budget) -> Result<()> {
    let c = ext.c();
    for (&x, &y) in p {
        if x as usize >= c.n() || y as usize >= c.n() {
            return Err(CoreError::UnknownVertex(format!("#{}", x.max(y))));
        }
    }
    let dom = vertex_set(p, false);
    let rng = vertex_set(p, true);
    if dom.len() != rng.len() {
        return Err(CoreError::Invalid("partial map is not injective".into()));
    }
    if !c.is_closed(&dom) || !c.is_closed(&rng) {
        return Err(CoreError::Invalid(
            "partial map sides are not substructures".into(),
        ));
    }
    let (ds, d_old) = c.induced(&dom)?;
    let (rs, r_old) = c.induced(&rng)?;
    let pos_in_range: BTreeMap<Vertex, Vertex> = r_old
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    let mapped: VertexMap = d_old.iter().map(|&x| pos_in_range[&p[&x]]).collect();
    if !is_embedding(&ds, &rs, &mapped)? {
        return Err(CoreError::Invalid(
            "partial map is not an isomorphism between its sides".into(),
        ));
    }
    for side in [&dom, &rng] {
        let vals: Vec<usize> = side.iter().map(|&v| v as usize).collect();
        for (i, &x) in vals.iter().enumerate() {
            for &y in &vals[i + 1..] {
                if !generic_valuations(ext.val(x), ext.val(y), ext.base(), ext.family()) {
                    return Err(CoreError::Invalid(format!(
                        "vertices #{x} and #{y} are not generic, the extension theorem does not apply"
                    )));
                }
            }
        }
    }
    let _ = budget;
    Ok(())
}

/// The root-level projection of a partial map on the extension: each
/// domain vertex's root must go to its image's root, consistently.
fn root_projection(ext: &EppaExtension, p: &PartialMap) -> Result<PartialMap> {
    let mut out = PartialMap::new();
    for (&x, &y) in p {
        let bx = ext.val(x as usize).root_base();
        let by = ext.val(y as usize).root_base();
        if let Some(&old) = out.get(&bx) {
            if old != by {
                return Err(CoreError::Invalid(
                    "partial map does not project to a map on roots".into(),
                ));
            }
        }
        out.insert(bx, by);
    }
    Ok(out)
}

/// Extends a partial automorphism through a chosen base automorphism.
/// Fails when the base automorphism is incompatible with the partial map;
/// try the next candidate then.
pub fn extend_partial(
    ext: &EppaExtension,
    p: &PartialMap,
    g: &VertexMap,
    budget: &Budget,
) -> Result<ExtendedAutomorphism> {
    validate_partial(ext, p, budget)?;
    let family = ext.family();
    let roots = root_projection(ext, p)?;
    for (&b, &b2) in &roots {
        if g[b as usize] != b2 {
            return Err(CoreError::Invalid(
                "base automorphism does not extend the root projection".into(),
            ));
        }
    }

    // Pair correspondence: every pair carried by a domain valuation must be
    // matched, on the image of its vertex, by a pair of the image valuation.
    let mut q: BTreeMap<(Vertex, Vec<u16>), (Vertex, Vec<u16>)> = BTreeMap::new();
    for (&x, &y) in p {
        let vx = ext.val(x as usize);
        let vy = ext.val(y as usize);
        for pr in vx.pairs() {
            let target_base = g[pr.base() as usize];
            let slot = vy.slot_on(target_base).ok_or_else(|| {
                CoreError::Invalid(format!(
                    "image valuation #{y} carries nothing over the image of vertex #{}",
                    pr.base()
                ))
            })?;
            let target = vy.pairs()[slot].id();
            if let Some(old) = q.get(&pr.id()) {
                if *old != target {
                    return Err(CoreError::Invalid(
                        "partial map forces two images on one pair".into(),
                    ));
                }
            }
            q.insert(pr.id(), target);
        }
    }

    // Per big set, the constrained value correspondence, completed.
    let mut thetas = Vec::with_capacity(family.len());
    for s in 0..family.len() {
        let target_set = crate::valuation::image_set_index(family, g, s);
        let mut partial: BTreeMap<u16, u16> = BTreeMap::new();
        for ((_, values), (_, values2)) in &q {
            let (k, v) = (values[s], values2[target_set]);
            if k == 0 && v == 0 {
                continue;
            }
            if let Some(&old) = partial.get(&k) {
                if old != v {
                    return Err(CoreError::Invalid(format!(
                        "conflicting value correspondence on big set {s}"
                    )));
                }
            }
            partial.insert(k, v);
        }
        if partial.values().collect::<BTreeSet<_>>().len() != partial.len() {
            return Err(CoreError::Invalid(format!(
                "value correspondence on big set {s} is not injective"
            )));
        }
        thetas.push(complete_partial_permutation(
            family.size_of(s) as u16,
            &partial,
        )?);
    }

    // Transport every valuation; each image must itself be a vertex.
    let mut phat: VertexMap = Vec::with_capacity(ext.c().n());
    for x in 0..ext.c().n() {
        let moved = ext
            .val(x)
            .transport(g, &thetas, family, ext.base().b_minus())?;
        let y = ext.vertex_of(&moved).ok_or_else(|| {
            CoreError::Invalid(format!("the image of vertex #{x} is not a valuation vertex"))
        })?;
        phat.push(y as Vertex);
    }
    for (&x, &y) in p {
        if phat[x as usize] != y {
            return Err(CoreError::Invalid(format!(
                "the lift disagrees with the partial map at #{x}"
            )));
        }
    }
    if !is_injective(&phat) || !is_embedding(ext.c(), ext.c(), &phat)? {
        return Err(CoreError::Invalid(
            "the lift is not an automorphism of the extension".into(),
        ));
    }
    Ok(ExtendedAutomorphism {
        g: g.clone(),
        thetas,
        phat,
    })
}

/// Every successful lift of `p`, one per compatible base automorphism, in
/// the deterministic base-automorphism order.
pub fn lift_candidates(
    ext: &EppaExtension,
    p: &PartialMap,
    budget: &Budget,
) -> Result<Vec<ExtendedAutomorphism>> {
    validate_partial(ext, p, budget)?;
    let roots = root_projection(ext, p)?;
    let mut out = Vec::new();
    for g in ext.base().auts() {
        if roots.iter().any(|(&b, &b2)| g[b as usize] != b2) {
            continue;
        }
        if let Ok(ea) = extend_partial(ext, p, g, budget) {
            out.push(ea);
        }
    }
    Ok(out)
}

/// Extends `p` through the first compatible base automorphism.
pub fn extend_partial_auto(
    ext: &EppaExtension,
    p: &PartialMap,
    budget: &Budget,
) -> Result<ExtendedAutomorphism> {
    lift_candidates(ext, p, budget)?
        .into_iter()
        .next()
        .ok_or_else(|| CoreError::Invalid("no base automorphism lifts the partial map".into()))
}

/// Does the pair transport of a lift preserve genericity in both
/// directions on the whole pair universe?
pub fn qhat_preserves_genericity(
    ext: &EppaExtension,
    ea: &ExtendedAutomorphism,
    budget: &Budget,
) -> Result<bool> {
    let family = ext.family();
    let universe = pair_universe(ext.base(), family, budget)?;
    let images: Vec<ValuationFn> = universe
        .iter()
        .map(|p| ea.apply_pair(ext, p))
        .collect::<Result<_>>()?;
    let distinct: BTreeSet<(Vertex, Vec<u16>)> = images.iter().map(|p| p.id()).collect();
    if distinct.len() != universe.len() {
        return Ok(false);
    }
    let mut meter = Meter::new(budget);
    for (i, x) in universe.iter().enumerate() {
        for (j, y) in universe.iter().enumerate() {
            meter.step()?;
            let before = crate::valuation::generic_pair(x, y, family);
            let after = crate::valuation::generic_pair(&images[i], &images[j], family);
            if before != after {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every partial automorphism between substructures of the designated
/// copy, transported into the extension, sorted.
pub fn partial_automorphisms_of_image(
    ext: &EppaExtension,
    budget: &Budget,
) -> Result<Vec<PartialMap>> {
    let phi = ext.phi();
    let mut out: Vec<PartialMap> = partial_isomorphisms(ext.base().a(), budget)?
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|(x, y)| (phi[x as usize], phi[y as usize]))
                .collect()
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The outcome of certifying the extension: how many partial maps and
/// composable pairs were checked, and whether every certificate passed.
#[derive(Debug, Clone)]
pub struct EppaReport {
    pub piso_count: usize,
    pub triple_count: usize,
    pub all_extend: bool,
    pub coherent: bool,
    pub qhat_bijective: bool,
    pub genericity_preserved: bool,
    pub function_images_agree: bool,
    pub failures: Vec<String>,
}

impl EppaReport {
    pub fn passed(&self) -> bool {
        self.all_extend
            && self.coherent
            && self.qhat_bijective
            && self.genericity_preserved
            && self.function_images_agree
            && self.failures.is_empty()
    }
}

impl std::fmt::Display for EppaReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let line = |ok: bool| if ok { "pass" } else { "fail" };
        writeln!(f, "partial maps of the designated copy: {}", self.piso_count)?;
        writeln!(f, "composable pairs checked: {}", self.triple_count)?;
        writeln!(f, "every partial map extends: {}", line(self.all_extend))?;
        writeln!(f, "one coherent choice of lifts: {}", line(self.coherent))?;
        writeln!(
            f,
            "pair transport stays bijective: {}",
            line(self.qhat_bijective)
        )?;
        writeln!(
            f,
            "pair transport preserves genericity: {}",
            line(self.genericity_preserved)
        )?;
        writeln!(
            f,
            "function images match the independent search: {}",
            line(self.function_images_agree)
        )?;
        for fail in &self.failures {
            writeln!(f, "failure: {fail}")?;
        }
        write!(f, "overall: {}", line(self.passed()))
    }
}

/// Certifies the extension end to end: enumerates every partial
/// automorphism of the designated copy, lifts each through every
/// compatible base automorphism, searches for one choice of lifts under
/// which all composable pairs compose, and checks the pair-transport
/// certificates for the chosen lifts.
pub fn certify_eppa(ext: &EppaExtension, budget: &Budget) -> Result<EppaReport> {
    let pisos = partial_automorphisms_of_image(ext, budget)?;
    let mut failures = Vec::new();

    let mut candidates: Vec<Vec<ExtendedAutomorphism>> = Vec::with_capacity(pisos.len());
    for p in &pisos {
        let cands = lift_candidates(ext, p, budget)?;
        if cands.is_empty() {
            failures.push(format!("no lift extends the partial map {p:?}"));
        }
        candidates.push(cands);
    }
    let all_extend = candidates.iter().all(|c| !c.is_empty());

    // Composable pairs: range of one map is the domain of the next; their
    // composition is again a listed partial map.
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    for (i, f) in pisos.iter().enumerate() {
        let rng = vertex_set(f, true);
        for (j, gm) in pisos.iter().enumerate() {
            if vertex_set(gm, false) != rng {
                continue;
            }
            let h: PartialMap = f.iter().map(|(&x, &y)| (x, gm[&y])).collect();
            let k = pisos
                .iter()
                .position(|cand| *cand == h)
                .ok_or_else(|| CoreError::Invalid("composition left the enumerated maps".into()))?;
            triples.push((i, j, k));
        }
    }

    // One choice of lift per map making every composable pair compose,
    // found by backtracking; lifts are tried in enumeration order.
    let mut by_max: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); pisos.len()];
    for &(i, j, k) in &triples {
        by_max[i.max(j).max(k)].push((i, j, k));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(pisos.len());
    let coherent = all_extend && assign_lifts(&candidates, &by_max, &mut chosen);

    let mut qhat_bijective = true;
    let mut genericity_preserved = true;
    if coherent {
        for (i, &c) in chosen.iter().enumerate() {
            let ea = &candidates[i][c];
            if !qhat_preserves_genericity(ext, ea, budget)? {
                genericity_preserved = false;
                failures.push(format!(
                    "the lift chosen for {:?} disturbs pair genericity",
                    pisos[i]
                ));
            }
            let universe = pair_universe(ext.base(), ext.family(), budget)?;
            let images: BTreeSet<(Vertex, Vec<u16>)> = universe
                .iter()
                .map(|p| ea.apply_pair(ext, p).map(|q| q.id()))
                .collect::<Result<_>>()?;
            if images.len() != universe.len() {
                qhat_bijective = false;
                failures.push(format!(
                    "the lift chosen for {:?} is not bijective on pairs",
                    pisos[i]
                ));
            }
        }
    } else if all_extend {
        failures.push("no choice of lifts makes all composable pairs compose".into());
    }

    let fun_lines = ext.function_images_unique(budget)?;
    let function_images_agree = fun_lines.is_empty();
    failures.extend(fun_lines);

    Ok(EppaReport {
        piso_count: pisos.len(),
        triple_count: triples.len(),
        all_extend,
        coherent,
        qhat_bijective,
        genericity_preserved,
        function_images_agree,
        failures,
    })
}

fn assign_lifts(
    candidates: &[Vec<ExtendedAutomorphism>],
    by_max: &[Vec<(usize, usize, usize)>],
    chosen: &mut Vec<usize>,
) -> bool {
    let i = chosen.len();
    if i == candidates.len() {
        return true;
    }
    for c in 0..candidates[i].len() {
        chosen.push(c);
        let ok = by_max[i].iter().all(|&(a, b, h)| {
            let pa = &candidates[a][chosen[a]].phat;
            let pb = &candidates[b][chosen[b]].phat;
            let ph = &candidates[h][chosen[h]].phat;
            compose(pa, pb) == *ph
        });
        if ok && assign_lifts(candidates, by_max, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
