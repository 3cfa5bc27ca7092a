//! Orderings of structures with set-valued functions.
//!
//! Functions make some vertices depend on others: the closure of a vertex
//! drags in everything its function entries reach.  This crate analyzes that
//! closure structure ([`analysis`]), derives from it a precedence preorder
//! on vertices ([`precedes`]), and builds classes of *admissible* total
//! orders — orders refining the precedence, keeping closure-components
//! contiguous, closed under substructures, and coherent on closure
//! extensions ([`admissible`]).  The [`witness`] module checks the ordering
//! property for such classes and constructs the disjoint-union witness
//! behind it; [`ceorder`] compares and matches ordered closure extensions.

pub mod admissible;
pub mod analysis;
pub mod ceorder;
pub mod oracles;
pub mod ordered;
pub mod precedes;
pub mod witness;

pub use admissible::{
    build_admissible_class, check_admissibility_axioms, components_are_intervals,
    refines_precedence, structure_universe, AdmissibleClass, AxiomReport,
};
pub use analysis::{analyze, ClosureAnalysis, Extension};
pub use ceorder::{ce_key, similar, CeKey};
pub use oracles::level_oracle;
pub use ordered::OrderedStructure;
pub use precedes::{
    closure_type_key, precedes, precedes_in, strictly_precedes, strictly_precedes_in,
};
pub use witness::{
    closure_orders_follow_type, closure_orders_follow_type_in, ordering_witness_b0,
    preserves_homologous_order, preserves_homologous_order_in, qualifying_reorderings,
    verify_ordering_property, OrderClass,
};
