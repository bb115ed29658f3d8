//! Free graded-commutative algebras over ℚ.
//!
//! Polynomials are plain data ([`Poly`]); everything that needs generator
//! parities (products, derivatives, substitution) is a method of the
//! [`Algebra`] roster they live in.

mod algebra;
mod bracket;
mod cohomology;
mod derivation;
mod map;
mod monomial;
mod poly;

pub use algebra::{Algebra, Generator, Grading};
pub use bracket::{Pair, PairingBracket};
pub use cohomology::{
    cohomology_truncated, cohomology_truncated_with_limit, is_boundary, CohomologyPiece, TruncatedCohomology,
    DEFAULT_PIECE_LIMIT,
};
pub use derivation::{Derivation, DgAlgebra, SquareZero};
pub use map::AlgebraMap;
pub use monomial::Monomial;
pub use poly::Poly;
