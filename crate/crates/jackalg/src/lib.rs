//! Exact computation of Jack characters, Kerov polynomials and structure
//! constants, together with samplers and statistics for random Young diagrams
//! under the Jack deformation of the Plancherel measure.

// Index loops read closer to the formulas in the linear algebra and recursions.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod asymptotics;
pub mod lassalle;
pub mod measure;
pub mod oracle;
pub mod partitions;
pub mod profiles;
pub mod structure;

mod cache;
