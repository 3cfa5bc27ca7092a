//! Extending partial automorphisms of finite structures whose languages mix
//! relations with unary set-valued functions.
//!
//! The pipeline: encode the functions as relations ([`reduct`]), find and
//! certify an extension-property base for the encoded structure ([`base`]),
//! classify its subsets as small or big ([`bigsets`]), enumerate decorated
//! point closures over the base ([`valuation`]), assemble them into one
//! structure with a designated embedded copy of the input ([`extension`]),
//! and extend partial automorphisms through it compositionally ([`extend`]),
//! with every step double-checked by brute force at desk scale
//! ([`faithful`] certifies that irreducible substructures land in the
//! designated copy).

pub mod base;
pub mod bigsets;
pub mod extend;
pub mod extension;
pub mod faithful;
pub mod reduct;
pub mod valuation;

pub use base::{
    base_extension_bruteforce, certify_extension_property, extends_to_some, partial_isomorphisms,
    EppaBase, PartialMap,
};
pub use bigsets::{apply_to_mask, big_sets_by_orbits, BigSetFamily};
pub use extend::{
    certify_eppa, complete_partial_permutation, extend_partial, extend_partial_auto,
    lift_candidates, partial_automorphisms_of_image, qhat_preserves_genericity, EppaReport,
    ExtendedAutomorphism,
};
pub use extension::{build_eppa_extension, EppaExtension};
pub use faithful::{certify_faithful, FaithfulReport};
pub use reduct::{relational_reduct, RelationalReduct};
pub use valuation::{
    apply_pair, generic_pair, generic_set, generic_valuations, image_set_index, pair_universe,
    shape_consistency, valuation_fns_for, valuations_rooted_at, ValKey, Valuation, ValuationFn,
};
