//! Exact chain-level twisted intersection pairings.
//!
//! The crate computes refined intersection pairings on finite cochain models over GF(p)
//! or ℚ: mapping cones of multiplication by a degree-one cocycle, the cone pairing built
//! from cup and cup-1 products, the pairing on cyclic covers of surfaces, bullet pairings
//! of decorated cycles, supertraces, and the linear-algebra bounds they feed.

pub mod bilinear;
pub mod bounds;
pub mod cli;
pub mod complex;
pub mod conealg;
pub mod covers;
pub mod cycles;
pub mod document;
pub mod error;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod simplicial;
pub mod surfaces;

pub use complex::{mapping_cone, les_dimension_check, ChainMap, GradedComplex, GradedPairing};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
pub use simplicial::{Cochain, SimplicialComplex, Subcomplex};

/// Deterministic generator used by every seeded builder in the crate.
pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}
