//! Exact chain-level calculus for shifted symplectic and shifted Poisson
//! structures on affine models.
//!
//! Everything is computed over ℚ with no floating point: graded-commutative
//! algebras with Koszul signs, truncated cohomology by sparse row reduction,
//! de Rham complexes with their Hodge filtration, polyvectors with the
//! Schouten bracket, derived critical loci, Koszul-Tate resolutions and a
//! solver for the classical master equation that emits checkable
//! certificates.
//!
//! # Conventions
//!
//! | notion | here |
//! |---|---|
//! | grading | cohomological; a shift `[k]` places generators in degree `-k` |
//! | antifields `ξ_i` | degree -1 |
//! | stage-`k` Koszul-Tate generators | degree `-1-k` |
//! | dual of a degree `-1-k` generator | degree `k` (the antibracket pairing has degree +1) |
//! | tangent generators `∂_g` in `Pol(A, n)` | degree `-|g| + n + 1` |
//! | de Rham generators `d(g)` | degree `|g| + 1`, Hodge weight 1 |
//! | non-degeneracy | pairing determinant is a nonzero rational constant |

pub mod bv;
pub mod derham;
pub mod error;
pub mod expr;
pub mod filtered;
pub mod graded;
pub mod linalg;
pub mod poisson;
pub mod report;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;
