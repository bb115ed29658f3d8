//! Derived and strict critical loci, Koszul-Tate resolutions, the BV
//! algebra `CE(L)` and the classical master equation.
//!
//! Degrees: antifields `ξ_i` sit in degree -1 and Koszul-Tate generators
//! adjoined at stage `s` in degree `-s`. The dual `c^` of a generator `c` of
//! degree `-1-k` has degree `k`, so that the antibracket (degree +1) pairs
//! them to 1. The ghost number of a monomial is its number of dual factors;
//! `F^p` is spanned by monomials of ghost number at least `p`.

mod ce;
mod cme;
mod correspondence;
mod kt;
mod mixed;
mod potential;

pub use ce::{ce_algebra, BvAlgebra};
pub use cme::{solve_cme, verify_cme, CmeCertificate, CmeCondition, CmeVerdict, Gauge};
pub use correspondence::{
    check_correspondence, strict_model, CorrespondenceReport, PairingEntry, StrictModel, COISOTROPIC_STATUS,
    PERFECT_COTANGENT,
};
pub use kt::{koszul_tate, KoszulTate, KtStage};
pub use mixed::{mixed_structure, MixedStructure};
pub use potential::{
    derived_critical_locus, strict_critical_locus, DerivedCriticalLocus, Potential, StrictCriticalLocus,
};
