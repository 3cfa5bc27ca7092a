//! Partite systems over a base structure and the machinery built on them:
//! partite powers, combinatorial lines with their induced embeddings,
//! exhaustive Ramsey-arrow checking, totalization of partial functions for
//! order-driven completion, the picture construction, and brute-force search
//! for minimal arrow witnesses.

pub mod arrow;
pub mod base;
pub mod completion;
pub mod construction;
pub mod line;
pub mod power;
pub mod system;

pub use arrow::{verify_arrow, Arrow};
pub use base::base_ramsey_bruteforce;
pub use completion::{complete, completed_language, decomplete};
pub use construction::{
    partite_construction, ClassSpec, Construction, StagePlan, StageReport,
};
pub use line::{
    find_monochromatic_line, for_each_line, line_count, line_embedding, word_copy, Line,
};
pub use power::{partite_power, Power};
pub use system::PartiteSystem;
