//! Closure structure of a finite structure: which vertices share a vertex
//! closure, how deep the closure recursion nests, when the whole structure is
//! the closure of a single component, and which components are homologous.

use std::collections::{BTreeMap, BTreeSet};

use fam_core::budget::Budget;
use fam_core::embed::{for_each_map, Search};
use fam_core::error::Result;
use fam_core::lang::Vertex;
use fam_core::map::MapKind;
use fam_core::structure::Structure;

/// Witness that the whole structure is the closure of its deepest component.
#[derive(Debug, Clone)]
pub struct Extension {
    /// Nesting depth of the top component.
    pub level: usize,
    /// The component whose vertex closures are the entire structure.
    pub top: Vec<Vertex>,
    /// Every other vertex.  This set need not be closed.
    pub interior: BTreeSet<Vertex>,
}

/// Closure data of one structure.
///
/// Vertices with equal closures form a *component*; the *level* of a vertex
/// counts how deeply closures nest below it (level 0 when the closure is the
/// component itself, otherwise one more than the deepest vertex of the
/// closure outside the component).  The structure is an *extension* when one
/// component's closure is everything; closures of single vertices always
/// induce extensions.
#[derive(Debug, Clone)]
pub struct ClosureAnalysis {
    closures: Vec<BTreeSet<Vertex>>,
    component_of: Vec<usize>,
    components: Vec<Vec<Vertex>>,
    levels: Vec<usize>,
    extension: Option<Extension>,
}

/// Computes closures, components, levels, and the extension witness.
/// Ignores the order relation: closures are driven by functions alone.
pub fn analyze(s: &Structure) -> ClosureAnalysis {
    let n = s.n();
    let closures: Vec<BTreeSet<Vertex>> = (0..n as Vertex).map(|v| s.closure_set([v])).collect();

    let mut ids: BTreeMap<&BTreeSet<Vertex>, usize> = BTreeMap::new();
    let mut component_of = vec![0usize; n];
    let mut components: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..n {
        let id = *ids.entry(&closures[v]).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        component_of[v] = id;
        components[id].push(v as Vertex);
    }

    // Every vertex of the closure outside the component has a strictly
    // smaller closure, so filling levels in ascending closure size grounds
    // the recursion.
    let mut by_size: Vec<usize> = (0..components.len()).collect();
    by_size.sort_by_key(|&c| closures[components[c][0] as usize].len());
    let mut levels = vec![0usize; n];
    for c in by_size {
        let rep = components[c][0] as usize;
        let cc: BTreeSet<Vertex> = components[c].iter().copied().collect();
        let level = closures[rep]
            .iter()
            .filter(|v| !cc.contains(v))
            .map(|&v| levels[v as usize] + 1)
            .max()
            .unwrap_or(0);
        for &m in &components[c] {
            levels[m as usize] = level;
        }
    }

    // At most one component can close over everything: vertices with full
    // closure all share that closure and therefore the component.
    let extension = (0..n).find(|&v| closures[v].len() == n).map(|v| {
        let top = components[component_of[v]].clone();
        let tops: BTreeSet<Vertex> = top.iter().copied().collect();
        Extension {
            level: levels[v],
            top,
            interior: (0..n as Vertex).filter(|x| !tops.contains(x)).collect(),
        }
    });

    ClosureAnalysis {
        closures,
        component_of,
        components,
        levels,
        extension,
    }
}

impl ClosureAnalysis {
    pub fn closure(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.closures[v as usize]
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.component_of[v as usize]
    }

    pub fn component(&self, id: usize) -> &[Vertex] {
        &self.components[id]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Closure shared by every member of the component.
    pub fn component_closure(&self, id: usize) -> &BTreeSet<Vertex> {
        &self.closures[self.components[id][0] as usize]
    }

    pub fn level(&self, v: Vertex) -> usize {
        self.levels[v as usize]
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn extension(&self) -> Option<&Extension> {
        self.extension.as_ref()
    }

    /// Two components are homologous when their closures leave the same
    /// remainder (`closure minus component`, equal as vertex sets) and some
    /// isomorphism between the closures fixes that remainder pointwise.
    /// Every component is homologous to itself.
    pub fn homologous(
        &self,
        s: &Structure,
        c1: usize,
        c2: usize,
        budget: &Budget,
    ) -> Result<bool> {
        if c1 == c2 {
            return Ok(true);
        }
        let x1 = self.component_closure(c1);
        let x2 = self.component_closure(c2);
        if x1.len() != x2.len() {
            return Ok(false);
        }
        let m1: BTreeSet<Vertex> = self.components[c1].iter().copied().collect();
        let m2: BTreeSet<Vertex> = self.components[c2].iter().copied().collect();
        let rest1: BTreeSet<Vertex> = x1.difference(&m1).copied().collect();
        let rest2: BTreeSet<Vertex> = x2.difference(&m2).copied().collect();
        if rest1 != rest2 {
            return Ok(false);
        }

        // The isomorphism must ignore any order relation, so compare the
        // unordered reducts of the induced closures.
        let u = s.unordered_reduct();
        let (s1, old1) = u.induced(x1)?;
        let (s2, old2) = u.induced(x2)?;
        let allow = |a: Vertex, b: Vertex| {
            let oa = old1[a as usize];
            let ob = old2[b as usize];
            if rest1.contains(&oa) {
                ob == oa
            } else {
                m2.contains(&ob)
            }
        };
        let search = Search::new(MapKind::Embedding, budget).with_candidate(&allow);
        let mut found = false;
        for_each_map(&s1, &s2, &search, |_| {
            found = true;
            false
        })?;
        // Equal sizes make any embedding a bijection, hence an isomorphism.
        Ok(found)
    }

    /// All homologous pairs of distinct components, each listed once with
    /// the smaller id first.
    pub fn homologous_pairs(
        &self,
        s: &Structure,
        budget: &Budget,
    ) -> Result<BTreeSet<(usize, usize)>> {
        let mut out = BTreeSet::new();
        for c1 in 0..self.components.len() {
            for c2 in c1 + 1..self.components.len() {
                if self.homologous(s, c1, c2, budget)? {
                    out.insert((c1, c2));
                }
            }
        }
        Ok(out)
    }
}
