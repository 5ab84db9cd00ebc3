//! Graded free modules, homogeneous matrices, free complexes, resolutions,
//! chain maps and Betti tables.

mod complex;
mod module;
mod resolve;

pub use complex::{betti, hilbert_from_betti, BettiTable, ChainMap, FreeComplex, Homotopy};
pub use module::{FreeModuleElement, GradedFreeModule, ModuleMap};
pub use resolve::{dualize, homology_is_zero, lift_map, minimalize, null_homotopy, resolve, Resolution};
