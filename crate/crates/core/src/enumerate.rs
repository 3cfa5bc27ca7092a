//! Exhaustive enumeration of structures on a fixed vertex set.
//!
//! Two tiers: a generic enumerator over any language, used at micro scale,
//! and a bit-packed sweep for the workhorse language of one binary relation
//! plus one unary function with singleton images, fast enough to enumerate
//! all four-vertex structures up to isomorphism in seconds.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use crate::budget::Budget;
use crate::error::{CoreError, Result};
use crate::lang::{Language, Vertex};
use crate::structure::Structure;

/// All tuples over `0..n` of the given arity, lexicographically.
pub fn all_tuples(n: usize, arity: usize) -> Vec<Vec<Vertex>> {
    (0..arity)
        .map(|_| 0..n as Vertex)
        .multi_cartesian_product()
        .collect()
}

/// Number of structures the generic enumerator would visit.
pub fn enumeration_size(lang: &Language, n: usize) -> Option<u128> {
    let mut total: u128 = 1;
    for r in lang.rels() {
        let tuples = (n as u128).checked_pow(r.arity as u32)?;
        if tuples > 127 {
            return None;
        }
        total = total.checked_mul(1u128.checked_shl(tuples as u32)?)?;
    }
    for f in lang.funs() {
        if f.range_size > n {
            continue; // no legal image set, so the function stays empty
        }
        let doms = (n as u128).checked_pow(f.dom_arity as u32)?;
        let choices = (binomial(n, f.range_size)? + 1) as u128;
        for _ in 0..doms {
            total = total.checked_mul(choices)?;
        }
    }
    Some(total)
}

fn binomial(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let mut b: u64 = 1;
    for i in 0..k {
        b = b.checked_mul((n - i) as u64)? / (i as u64 + 1);
    }
    Some(b)
}

/// Visits every structure on vertices `0..n` over `lang` whose function
/// images have exactly the declared size.  `visit` returns `false` to stop.
pub fn for_each_structure(
    lang: &Arc<Language>,
    n: usize,
    budget: &Budget,
    mut visit: impl FnMut(&Structure) -> bool,
) -> Result<()> {
    let total = enumeration_size(lang, n).ok_or(CoreError::Budget {
        what: "structure enumeration size",
        limit: u64::MAX,
    })?;
    if total > budget.max_steps as u128 {
        return Err(CoreError::Budget {
            what: "structure enumeration",
            limit: budget.max_steps,
        });
    }

    // Positions: one bit per possible relation tuple, one mixed-radix digit
    // per possible function domain tuple (0 = absent, else image index + 1).
    let rel_tuples: Vec<Vec<Vec<Vertex>>> = lang
        .rels()
        .iter()
        .map(|r| all_tuples(n, r.arity))
        .collect();
    let fun_doms: Vec<Vec<Vec<Vertex>>> = lang
        .funs()
        .iter()
        .map(|f| all_tuples(n, f.dom_arity))
        .collect();
    let fun_images: Vec<Vec<BTreeSet<Vertex>>> = lang
        .funs()
        .iter()
        .map(|f| {
            (0..n as Vertex)
                .combinations(f.range_size)
                .map(|c| c.into_iter().collect())
                .collect()
        })
        .collect();

    let total_bits: usize = rel_tuples.iter().map(|t| t.len()).sum();
    let mut fun_digits: Vec<(usize, usize)> = Vec::new(); // (fun, dom index)
    for (f, doms) in fun_doms.iter().enumerate() {
        for d in 0..doms.len() {
            fun_digits.push((f, d));
        }
    }

    let mut rel_mask: u128 = 0;
    let mut digits = vec![0usize; fun_digits.len()];
    loop {
        let mut s = Structure::with_vertices(lang.clone(), n);
        let mut bit = 0;
        for (r, tuples) in rel_tuples.iter().enumerate() {
            for t in tuples {
                if rel_mask >> bit & 1 == 1 {
                    s.add_rel(r, t)?;
                }
                bit += 1;
            }
        }
        for (i, &(f, d)) in fun_digits.iter().enumerate() {
            if digits[i] > 0 {
                s.set_fun(f, fun_doms[f][d].clone(), fun_images[f][digits[i] - 1].clone())?;
            }
        }
        if !visit(&s) {
            return Ok(());
        }

        // Advance: digits first, then the relation mask.
        let mut i = 0;
        loop {
            if i == digits.len() {
                rel_mask += 1;
                if total_bits >= 128 || rel_mask >> total_bits != 0 {
                    return Ok(());
                }
                break;
            }
            let (f, _) = fun_digits[i];
            digits[i] += 1;
            if digits[i] <= fun_images[f].len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// The workhorse language: one binary relation `R`, one unary function `F`
/// with singleton images.
pub fn rel1fun1_language() -> Arc<Language> {
    Arc::new(Language::mixed(&[("R", 2)], &[("F", 1, 1)]))
}

/// Packed encoding over `rel1fun1_language`: bit `u*n + v` of `rel_mask`
/// holds `R(u, v)`; digit `v` (base `n+1`) of `fun_code` holds `0` for
/// "`F` undefined at `v`" and `w + 1` for `F(v) = {w}`.
pub fn structure_from_packed(
    lang: &Arc<Language>,
    n: usize,
    rel_mask: u32,
    fun_code: u32,
) -> Structure {
    let mut s = Structure::with_vertices(lang.clone(), n);
    for u in 0..n {
        for v in 0..n {
            if rel_mask >> (u * n + v) & 1 == 1 {
                s.add_rel(0, &[u as Vertex, v as Vertex]).unwrap();
            }
        }
    }
    let mut code = fun_code;
    for v in 0..n {
        let digit = code % (n as u32 + 1);
        code /= n as u32 + 1;
        if digit > 0 {
            s.set_fun(0, vec![v as Vertex], BTreeSet::from([digit as Vertex - 1]))
                .unwrap();
        }
    }
    s
}

/// Visits one representative `(rel_mask, fun_code)` per isomorphism class of
/// structures on `n ≤ 4` vertices over `rel1fun1_language`, choosing the
/// lexicographically least packed encoding.  Returns the number of classes.
pub fn for_each_canonical_rel1fun1(
    n: usize,
    budget: &Budget,
    mut visit: impl FnMut(u32, u32) -> Result<()>,
) -> Result<u64> {
    assert!(n <= 4, "packed sweep is sized for at most 4 vertices");
    let base = n as u32 + 1;
    let rel_space: u32 = 1 << (n * n);
    let fun_space: u32 = base.pow(n as u32);
    budget.check_steps(rel_space as u64 * fun_space as u64)?;

    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();

    // rel_tab[p][mask] = mask with both coordinates relabeled by perm p.
    let mut rel_tab: Vec<Vec<u32>> = Vec::with_capacity(perms.len());
    for p in &perms {
        let mut tab = vec![0u32; rel_space as usize];
        for (mask, slot) in tab.iter_mut().enumerate() {
            let mut out = 0u32;
            let mut m = mask as u32;
            while m != 0 {
                let bit = m.trailing_zeros() as usize;
                m &= m - 1;
                let (u, v) = (bit / n, bit % n);
                out |= 1 << (p[u] * n + p[v]);
            }
            *slot = out;
        }
        rel_tab.push(tab);
    }

    // fun_tab[p][code] = code with vertices and images relabeled by perm p.
    let mut fun_tab: Vec<Vec<u32>> = Vec::with_capacity(perms.len());
    for p in &perms {
        let mut tab = vec![0u32; fun_space as usize];
        for (code, slot) in tab.iter_mut().enumerate() {
            let mut out = 0u32;
            let mut c = code as u32;
            for v in 0..n {
                let digit = c % base;
                c /= base;
                if digit > 0 {
                    let img = p[digit as usize - 1] as u32 + 1;
                    out += img * base.pow(p[v] as u32);
                }
            }
            *slot = out;
        }
        fun_tab.push(tab);
    }

    let mut classes = 0u64;
    let mut eq_perms: Vec<usize> = Vec::with_capacity(perms.len());
    for rel_mask in 0..rel_space {
        // Permutations strictly lowering the relation mask kill the whole
        // inner loop; the ones preserving it are the only tie-breakers.
        eq_perms.clear();
        let mut dominated = false;
        for (pi, tab) in rel_tab.iter().enumerate() {
            let pm = tab[rel_mask as usize];
            if pm < rel_mask {
                dominated = true;
                break;
            }
            if pm == rel_mask {
                eq_perms.push(pi);
            }
        }
        if dominated {
            continue;
        }
        'codes: for fun_code in 0..fun_space {
            for &pi in &eq_perms {
                if fun_tab[pi][fun_code as usize] < fun_code {
                    continue 'codes;
                }
            }
            classes += 1;
            visit(rel_mask, fun_code)?;
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_key;

    #[test]
    fn generic_enumeration_counts_match_the_formula() {
        let lang = rel1fun1_language();
        for n in 0..3usize {
            let expected = enumeration_size(&lang, n).unwrap();
            let mut seen = 0u128;
            for_each_structure(&lang, n, &Budget::default(), |s| {
                assert!(s.validate_exact_images().is_ok());
                seen += 1;
                true
            })
            .unwrap();
            assert_eq!(seen, expected);
            let raw = (1u128 << (n * n)) * ((n as u128 + 1).pow(n as u32));
            assert_eq!(expected, raw);
        }
    }

    #[test]
    fn packed_representatives_agree_with_canonical_keys() {
        let lang = rel1fun1_language();
        let budget = Budget::default();
        for n in 0..=3usize {
            // Count isomorphism classes independently via canonical keys.
            let mut keys = std::collections::BTreeSet::new();
            for_each_structure(&lang, n, &budget, |s| {
                keys.insert(canonical_key(s, &budget).unwrap());
                true
            })
            .unwrap();
            let mut reps = Vec::new();
            let classes = for_each_canonical_rel1fun1(n, &budget, |rm, fc| {
                reps.push((rm, fc));
                Ok(())
            })
            .unwrap();
            assert_eq!(classes as usize, keys.len(), "n = {n}");
            // Representatives are pairwise non-isomorphic and valid.
            let mut rep_keys = std::collections::BTreeSet::new();
            for (rm, fc) in reps {
                let s = structure_from_packed(&lang, n, rm, fc);
                assert!(s.validate_exact_images().is_ok());
                assert!(rep_keys.insert(canonical_key(&s, &budget).unwrap()));
            }
            assert_eq!(rep_keys, keys);
        }
    }

    #[test]
    fn packed_encoding_round_trips() {
        let lang = rel1fun1_language();
        // R(0,1), R(2,2); F(0) = {2}, F(2) = {0} on three vertices.
        let n = 3;
        // Tuple (u, v) occupies bit u*n + v of the relation mask.
        let rel_mask = (1 << 1) | (1 << (2 * n + 2));
        // Function digit for vertex v is 1 + image, base range+2: v0 -> 3
        // (image 2), v1 -> 0 (undefined), v2 -> 1 (image 0).
        let fun_code = 3 + 4u32.pow(2);
        let s = structure_from_packed(&lang, n, rel_mask, fun_code);
        assert_eq!(s.rel_tuples(0).len(), 2);
        assert_eq!(s.fun_value(0, &[0]).unwrap(), &BTreeSet::from([2]));
        assert_eq!(s.fun_value(0, &[2]).unwrap(), &BTreeSet::from([0]));
        assert!(s.fun_value(0, &[1]).is_none());
    }
}
