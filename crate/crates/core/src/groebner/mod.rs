//! Gröbner bases of ideals and of submodules of graded free modules, with the
//! operations built on them: normal forms, syzygies, lifts, Hilbert series,
//! ideal comparison and annihilators.

mod engine;
mod hilbert;
mod ops;

use alloc::sync::Arc;
use alloc::vec::Vec;

pub use engine::PositionOrder;
pub use hilbert::HilbertData;
pub use ops::{annihilator, colon, ideal_equal, lift_through, minimal_generators, syzygies, Lifter};

use crate::complexes::{FreeModuleElement, GradedFreeModule};
use crate::error::{AlgebraError, Result};
use crate::poly::{same_ring, Polynomial};
use crate::ring::{GradedRing, Monomial};
use engine::{Ctx, Term};

/// A reduced Gröbner basis of a submodule of a graded free module.
///
/// Generators are monic, no lead term divides a term of another generator,
/// and they are sorted ascending by lead term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<GradedRing>,
    module: GradedFreeModule,
    order: PositionOrder,
    elems: Vec<Vec<Term>>,
    homogeneous: bool,
}

impl GroebnerBasis {
    /// Basis of the ideal generated by `gens`.
    pub fn ideal(ring: &Arc<GradedRing>, gens: &[Polynomial]) -> Self {
        let vectors: Vec<FreeModuleElement> = gens.iter().map(|g| FreeModuleElement::new(alloc::vec![g.clone()])).collect();
        Self::submodule(ring, &GradedFreeModule::new(alloc::vec![0]), &vectors, PositionOrder::Top)
            .expect("rank-one generators")
    }

    /// Basis of the submodule of `module` generated by `gens`.
    pub fn submodule(
        ring: &Arc<GradedRing>,
        module: &GradedFreeModule,
        gens: &[FreeModuleElement],
        order: PositionOrder,
    ) -> Result<Self> {
        Ok(Self::with_minimal_generators(ring, module, gens, order)?.0)
    }

    /// Like [`GroebnerBasis::submodule`], also returning the indices of a
    /// minimal generating subset of `gens` when the input is homogeneous
    /// (otherwise all nonzero inputs are reported).
    pub fn with_minimal_generators(
        ring: &Arc<GradedRing>,
        module: &GradedFreeModule,
        gens: &[FreeModuleElement],
        order: PositionOrder,
    ) -> Result<(Self, Vec<usize>)> {
        let ctx = Ctx { ring, kind: order, shifts: module.degrees() };
        let mut inputs = Vec::with_capacity(gens.len());
        for g in gens {
            inputs.push(to_terms(&ctx, ring, module, g)?);
        }
        let homogeneous = inputs.iter().all(|v| is_homogeneous(&ctx, v));
        let outcome = engine::run(&ctx, inputs, module.rank() == 1);
        let kept = if homogeneous {
            outcome.kept
        } else {
            (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect()
        };
        let gb = GroebnerBasis { ring: ring.clone(), module: module.clone(), order, elems: outcome.basis, homogeneous };
        Ok((gb, kept))
    }

    fn ctx(&self) -> Ctx<'_> {
        Ctx { ring: &self.ring, kind: self.order, shifts: self.module.degrees() }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn module(&self) -> &GradedFreeModule {
        &self.module
    }

    pub fn order(&self) -> PositionOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Always true: every constructor returns the reduced basis.
    pub fn is_reduced(&self) -> bool {
        true
    }

    /// Whether the generating input was homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// Whether the basis generates the whole free module.
    pub fn is_unit(&self) -> bool {
        (0..self.module.rank()).all(|p| self.elems.iter().any(|g| g[0].pos == p && g[0].mono.is_one()))
    }

    pub fn generators(&self) -> Vec<FreeModuleElement> {
        self.elems.iter().map(|v| from_terms(&self.ring, self.module.rank(), v)).collect()
    }

    /// Generators of a rank-one basis as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert_eq!(self.module.rank(), 1, "polynomials() needs a rank-one basis");
        self.elems.iter().map(|v| from_terms(&self.ring, 1, v).into_entries().remove(0)).collect()
    }

    /// Lead terms as `(position, monomial)`.
    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.elems.iter().map(|v| (v[0].pos, v[0].mono)).collect()
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        let ctx = self.ctx();
        let terms = to_terms(&ctx, &self.ring, &self.module, v)?;
        let nf = ctx.reduce(terms, &self.elems, true);
        Ok(from_terms(&self.ring, self.module.rank(), &nf))
    }

    /// Normal form of a polynomial modulo a rank-one basis.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.normal_form(&FreeModuleElement::new(alloc::vec![p.clone()]))
            .expect("rank-one basis")
            .into_entries()
            .remove(0)
    }

    pub fn contains(&self, v: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }

    /// Hilbert series of the quotient of the ambient free module by this submodule.
    pub fn hilbert_series(&self) -> HilbertData {
        hilbert::quotient_series(&self.ring, &self.module, &self.leading_monomials())
    }

    /// Krull dimension of the quotient module, or `-1` for the zero module.
    pub fn krull_dimension(&self) -> i32 {
        self.hilbert_series().dimension()
    }

    /// Dimension read off the initial module: the largest set of variables
    /// that supports no lead monomial in some position.
    pub fn combinatorial_dimension(&self) -> i32 {
        let n = self.ring.nvars();
        let mut best = -1;
        for p in 0..self.module.rank() {
            let leads: Vec<u16> =
                self.elems.iter().filter(|g| g[0].pos == p).map(|g| g[0].mono.support_mask()).collect();
            for set in 0u32..(1 << n) {
                let set = set as u16;
                let size = set.count_ones() as i32;
                if size > best && leads.iter().all(|&m| m & !set != 0) {
                    best = size;
                }
            }
        }
        best
    }

    /// S-pairs of the basis reduce to zero and the basis is reduced; a test oracle.
    pub fn is_groebner(&self) -> bool {
        let ctx = self.ctx();
        for (a, ga) in self.elems.iter().enumerate() {
            for gb in &self.elems[a + 1..] {
                if ga[0].pos != gb[0].pos {
                    continue;
                }
                let lcm = self.ring.lcm(&ga[0].mono, &gb[0].mono);
                let qa = lcm.div(&ga[0].mono).expect("lcm");
                let qb = lcm.div(&gb[0].mono).expect("lcm");
                let s = ctx.sub_mul(&ctx.scale_mul(ga, &ga[0].coeff.inv().expect("lead"), &qa), &gb[0].coeff.inv().expect("lead"), &qb, gb);
                if !ctx.reduce(s, &self.elems, true).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Equality of reduced bases means equality of submodules.
impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
            && self.module == other.module
            && self.order == other.order
            && self.elems == other.elems
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn buchberger(ring: &Arc<GradedRing>, gens: &[Polynomial]) -> GroebnerBasis {
    GroebnerBasis::ideal(ring, gens)
}

pub fn normal_form(v: &FreeModuleElement, gb: &GroebnerBasis) -> Result<FreeModuleElement> {
    gb.normal_form(v)
}

pub fn hilbert_series(gb: &GroebnerBasis) -> HilbertData {
    gb.hilbert_series()
}

pub fn krull_dimension(gb: &GroebnerBasis) -> i32 {
    gb.krull_dimension()
}

fn is_homogeneous(ctx: &Ctx<'_>, v: &[Term]) -> bool {
    v.windows(2).all(|w| ctx.degree(&w[0]) == ctx.degree(&w[1]))
}

fn to_terms(ctx: &Ctx<'_>, ring: &Arc<GradedRing>, module: &GradedFreeModule, v: &FreeModuleElement) -> Result<Vec<Term>> {
    if v.rank() != module.rank() {
        return Err(AlgebraError::IncompatibleModule(alloc::format!(
            "vector of length {} in a module of rank {}",
            v.rank(),
            module.rank()
        )));
    }
    let mut terms = Vec::new();
    for (pos, p) in v.entries().iter().enumerate() {
        if !same_ring(p.ring(), ring) {
            return Err(AlgebraError::IncompatibleModule(alloc::string::String::from("entry from another ring")));
        }
        for (m, c) in p.terms() {
            terms.push(Term { pos, mono: *m, coeff: c.clone() });
        }
    }
    ctx.sort(&mut terms);
    Ok(terms)
}

fn from_terms(ring: &Arc<GradedRing>, rank: usize, v: &[Term]) -> FreeModuleElement {
    let mut parts: Vec<Vec<(Monomial, crate::field::Scalar)>> = alloc::vec![Vec::new(); rank];
    for t in v {
        parts[t.pos].push((t.mono, t.coeff.clone()));
    }
    FreeModuleElement::new(parts.into_iter().map(|ts| Polynomial::from_sorted_terms(ring, ts)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;
    use crate::ring::MonomialOrder;

    fn lex_ring() -> Arc<GradedRing> {
        GradedRing::standard(&["x", "y"], Field::default()).unwrap().with_order(MonomialOrder::Lex).into_arc()
    }

    fn polys(r: &Arc<GradedRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_poly(t, r).unwrap()).collect()
    }

    #[test]
    fn reduces_to_monomial_basis() {
        let r = lex_ring();
        let gb = buchberger(&r, &polys(&r, &["x^2 - y", "x"]));
        assert_eq!(gb.polynomials(), polys(&r, &["y", "x"]));
        assert!(gb.is_groebner());
    }

    #[test]
    fn normal_form_by_hand() {
        let r = lex_ring();
        let gb = buchberger(&r, &polys(&r, &["x^2 - y"]));
        assert_eq!(gb.reduce(&parse_poly("x^2", &r).unwrap()), parse_poly("y", &r).unwrap());
        let gx = buchberger(&r, &polys(&r, &["x"]));
        assert_eq!(gx.reduce(&parse_poly("y", &r).unwrap()), parse_poly("y", &r).unwrap());
        assert!(gx.reduce(&parse_poly("x", &r).unwrap()).is_zero());
    }

    #[test]
    fn dimensions() {
        let r = GradedRing::standard(&["x", "y"], Field::default()).unwrap().into_arc();
        let zero = buchberger(&r, &[]);
        assert_eq!(zero.krull_dimension(), 2);
        let x = buchberger(&r, &polys(&r, &["x"]));
        assert_eq!(x.krull_dimension(), 1);
        assert_eq!(x.combinatorial_dimension(), 1);
        assert_eq!(buchberger(&r, &polys(&r, &["1"])).krull_dimension(), -1);
    }
}
