use alloc::string::String;

use super::AlgebraOverS;
use crate::complexes::{dualize, homology_is_zero, Resolution};
use crate::error::{AlgebraError, Result};
use crate::groebner::{annihilator, GroebnerBasis, PositionOrder};

/// `dim S - dim_S R`, with the module dimension read off `S / ann R`.
pub fn codimension(a: &AlgebraOverS) -> Result<usize> {
    let ann = annihilator(a.presentation());
    if ann.is_unit() {
        return Err(AlgebraError::NotFiniteOverS("the module is zero".into()));
    }
    Ok(a.base().nvars() - ann.krull_dimension() as usize)
}

/// Projective dimension equals codimension and the dual of the resolution is
/// exact away from its end.
pub fn check_perfect(a: &AlgebraOverS, res: &Resolution) -> bool {
    let Ok(c) = codimension(a) else {
        return false;
    };
    if res.length() != c {
        return false;
    }
    let dual = dualize(res.complex(), 0);
    (1..=c).all(|i| homology_is_zero(&dual, i))
}

/// Outcome of the partial check that `S / ann R -> R` is birational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiamondCheck {
    Verified,
    Unknown(String),
}

/// Sufficient conditions only: equal dimension and multiplicity of `R` and
/// `S / ann R`, with `ann R` zero or generated by a linear form.
pub fn check_diamond_partial(a: &AlgebraOverS) -> DiamondCheck {
    let ring = a.base();
    let ann = annihilator(a.presentation());
    if ann.is_unit() {
        return DiamondCheck::Unknown("the module is zero".into());
    }
    let quotient = ann.hilbert_series();
    let image: alloc::vec::Vec<_> = a.presentation().columns();
    let module = match GroebnerBasis::submodule(ring, a.generators(), &image, PositionOrder::Top) {
        Ok(gb) => gb.hilbert_series(),
        Err(e) => return DiamondCheck::Unknown(alloc::format!("module Hilbert series: {e}")),
    };
    if quotient.dimension() != module.dimension() {
        return DiamondCheck::Unknown("dimension mismatch".into());
    }
    if quotient.multiplicity() != module.multiplicity() {
        return DiamondCheck::Unknown("multiplicity mismatch".into());
    }
    let gens = ann.polynomials();
    match gens.as_slice() {
        [] => DiamondCheck::Verified,
        [g] if is_linear(g) => DiamondCheck::Verified,
        _ => DiamondCheck::Unknown("multiplicity check passed, primality not certified".into()),
    }
}

fn is_linear(p: &crate::poly::Polynomial) -> bool {
    p.terms().iter().all(|(m, _)| m.total_degree() == 1)
}
