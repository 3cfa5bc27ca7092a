//! Finite structures over languages mixing relations with symmetric
//! set-valued partial functions, and the combinatorics built directly on
//! them: closures and substructures, embedding enumeration, free
//! amalgamation, irreducibility, canonical forms, and exhaustive small-scale
//! enumeration with independent brute-force oracles.

pub mod amalgam;
pub mod budget;
pub mod canon;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod fmt;
pub mod irreducible;
pub mod lang;
pub mod map;
pub mod oracles;
pub mod structure;

pub use amalgam::{disjoint_union, free_amalgam, Amalgam};
pub use budget::{Budget, Meter};
pub use canon::{canonical_form, canonical_key, canonical_structure, Canon, CanonKey};
pub use embed::{
    are_isomorphic, automorphisms, copies_of, enumerate_embeddings, enumerate_maps,
    exists_embedding, for_each_map, Search,
};
pub use error::{CoreError, Result};
pub use irreducible::{
    decomposition, hyperedge_components, irreducible_closed_subsets, is_irreducible,
};
pub use lang::{FunId, FunSym, Language, RelId, RelSym, Vertex, ORDER_REL_NAME};
pub use map::{
    check_map, compose, identity, invert, is_embedding, is_homomorphism, is_injective,
    is_monomorphism, MapKind, VertexMap,
};
pub use structure::Structure;
