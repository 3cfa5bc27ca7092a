//! Classifying vertex sets of the base extension as small or big.
//!
//! A subset of the extension is *small* when some automorphism maps it into
//! the designated copy of the original structure, and *big* otherwise.  The
//! family of big sets is invariant under the automorphism group and upward
//! closed (supersets of big sets are big).  Valuation functions are indexed
//! by this family, so it is materialised in full — the extensions this crate
//! targets are small enough for an exhaustive sweep over all subsets.

use std::collections::BTreeMap;

use fam_core::{Budget, CoreError, Result, Vertex, VertexMap};

use crate::base::EppaBase;

/// The family of big subsets of the base extension, as sorted bitmasks over
/// its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigSetFamily {
    n: usize,
    a_mask: u32,
    sets: Vec<u32>,
    index: BTreeMap<u32, usize>,
}

/// Image of a vertex-set bitmask under a total vertex map.
pub fn apply_to_mask(g: &VertexMap, mask: u32) -> u32 {
    let mut out = 0u32;
    for (v, &gv) in g.iter().enumerate() {
        if mask & (1 << v) != 0 {
            out |= 1 << gv;
        }
    }
    out
}

impl BigSetFamily {
    /// Classifies every subset of the extension's vertex set.
    pub fn classify(base: &EppaBase, budget: &Budget) -> Result<BigSetFamily> {
        let n = base.b_minus().n();
        if n > 31 {
            return Err(CoreError::Budget {
                what: "big set classification vertices",
                limit: 31,
            });
        }
        budget.check_steps((1u64 << n) * base.auts().len().max(1) as u64)?;
        let a_mask: u32 = if base.a_n() == 0 {
            0
        } else {
            (1u32 << base.a_n()) - 1
        };
        let mut sets = Vec::new();
        for mask in 0..(1u64 << n) as u32 {
            let small = base
                .auts()
                .iter()
                .any(|g| apply_to_mask(g, mask) & !a_mask == 0);
            if !small {
                sets.push(mask);
            }
        }
        let index = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        Ok(BigSetFamily {
            n,
            a_mask,
            sets,
            index,
        })
    }

    /// Number of vertices of the underlying extension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Bitmask of the designated copy.
    pub fn a_mask(&self) -> u32 {
        self.a_mask
    }

    /// The big sets, ascending by bitmask.
    pub fn sets(&self) -> &[u32] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_big(&self, mask: u32) -> bool {
        self.index.contains_key(&mask)
    }

    /// Index of a big set within `sets()`.
    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Cardinality of the `i`-th big set.
    pub fn size_of(&self, i: usize) -> u32 {
        self.sets[i].count_ones()
    }

    /// Does the `i`-th big set contain vertex `v`?
    pub fn contains(&self, i: usize, v: Vertex) -> bool {
        self.sets[i] & (1 << v) != 0
    }
}

/// Independent classification by orbit computation: subsets are grouped into
/// orbits under the automorphism group, and an orbit is small exactly when
/// it contains a subset of the designated copy.  Returns big sets ascending.
pub fn big_sets_by_orbits(base: &EppaBase, budget: &Budget) -> Result<Vec<u32>> {
    let n = base.b_minus().n();
    if n > 31 {
        return Err(CoreError::Budget {
            what: "big set classification vertices",
            limit: 31,
        });
    }
    budget.check_steps((1u64 << n) * base.auts().len().max(1) as u64)?;
    let a_mask: u32 = if base.a_n() == 0 {
        0
    } else {
        (1u32 << base.a_n()) - 1
    };
    let total = 1usize << n;
    let mut seen = vec![false; total];
    let mut big = Vec::new();
    for start in 0..total as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start as usize] = true;
        let mut i = 0;
        while i < orbit.len() {
            let m = orbit[i];
            for g in base.auts() {
                let im = apply_to_mask(g, m);
                if !seen[im as usize] {
                    seen[im as usize] = true;
                    orbit.push(im);
                }
            }
            i += 1;
        }
        let small = orbit.iter().any(|&m| m & !a_mask == 0);
        if !small {
            big.extend(orbit);
        }
    }
    big.sort_unstable();
    Ok(big)
}
