//! Gorenstein algebras that are finite over a polynomial ring: codimension,
//! perfection, the ring structure on a resolution, duality maps and
//! symmetrization.

mod algebra;
mod checks;
mod duality;
mod multiplication;
mod products;

pub use algebra::{AlgebraOverS, Ambient};
pub use checks::{check_diamond_partial, check_perfect, codimension, DiamondCheck};
pub use duality::{
    check_duality_identities, duality_maps, find_twist, symmetrize, symmetrize_by_averaging, symmetrize_with_multiplication,
    verify_symmetric_resolution,
    DualityMaps, GorensteinCertificate, Transcript,
};
pub use multiplication::{build_multiplication, sym_square, MultiplicativeStructure, Slot, SymPair, SymSquare};
