//! A structure paired with a strict total order on its vertices.
//!
//! Ordered structures are rigid: renumbering the vertices by their order rank
//! is the unique order-preserving relabeling, so a single pass yields a key
//! that two ordered structures share exactly when they are isomorphic as
//! ordered structures.

use fam_core::budget::Budget;
use fam_core::canon::{canonical_key, relabel_key, CanonKey};
use fam_core::error::Result;
use fam_core::lang::Vertex;
use fam_core::map::VertexMap;
use fam_core::structure::Structure;

/// A structure whose language carries the order relation, validated to hold a
/// strict total order on all vertices.
#[derive(Debug, Clone)]
pub struct OrderedStructure {
    s: Structure,
    rank: Vec<usize>,
}

impl OrderedStructure {
    /// Wraps `s`, checking that its order relation is a strict total order.
    pub fn new(s: Structure) -> Result<OrderedStructure> {
        let rank = s.order_rank()?;
        Ok(OrderedStructure { s, rank })
    }

    /// Orders `s` by `seq` (least vertex first), promoting the language to
    /// its ordered version when necessary.
    pub fn order(s: &Structure, seq: &[Vertex]) -> Result<OrderedStructure> {
        OrderedStructure::new(s.with_order(seq)?)
    }

    pub fn structure(&self) -> &Structure {
        &self.s
    }

    pub fn into_structure(self) -> Structure {
        self.s
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// Position of each vertex in the order, indexed by vertex.
    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    pub fn rank_of(&self, v: Vertex) -> usize {
        self.rank[v as usize]
    }

    pub fn before(&self, u: Vertex, v: Vertex) -> bool {
        self.rank[u as usize] < self.rank[v as usize]
    }

    /// Canonical key of the ordered isomorphism type: the encoding after
    /// relabeling every vertex by its order rank.
    pub fn key(&self) -> CanonKey {
        let perm: VertexMap = self.rank.iter().map(|&r| r as Vertex).collect();
        relabel_key(&self.s, &perm)
    }

    /// Canonical key of the underlying unordered structure.
    pub fn unordered_key(&self, budget: &Budget) -> Result<CanonKey> {
        canonical_key(&self.s.unordered_reduct(), budget)
    }
}
