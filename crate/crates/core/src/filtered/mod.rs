//! Filtered, graded and complete filtered objects.
//!
//! [`FilteredModule`] models finite towers of graded vector spaces;
//! [`FilteredDga`] carries a multiplicative filtration on a free DGA, which
//! is what derived foliations, the Hodge filtration and the ghost filtration
//! all are at the strict level.

mod foliation;
mod module;
pub mod samples;

pub use foliation::*;
pub use module::{check_gr_hom, random_module, DimTable, FilteredModule, GrHomReport, Tail};
