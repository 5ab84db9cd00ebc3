use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::complexes::{FreeModuleElement, GradedFreeModule, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::gorenstein::{Ambient, AlgebraOverS};
use crate::groebner::{GroebnerBasis, PositionOrder};
use crate::poly::Polynomial;
use crate::ring::{GradedRing, Monomial, MonomialOrder};

/// Presents `T / I` as a module over the subring generated by `base_vars`.
///
/// Under an order eliminating the other variables, the module generators are
/// the standard monomials in those variables; the relations are the
/// base-ring elements of the submodule `(e_a - y^a e_0, g e_0)` of `T^E`.
pub fn finite_algebra_presentation(ring: &Arc<GradedRing>, ideal: &[Polynomial], base_vars: &[usize]) -> Result<AlgebraOverS> {
    let n = ring.nvars();
    if base_vars.iter().any(|&v| v >= n) {
        return Err(AlgebraError::InvalidRing("base variable out of range".into()));
    }
    let fibre: Vec<usize> = (0..n).filter(|v| !base_vars.contains(v)).collect();
    let mask = fibre.iter().fold(0u16, |m, &v| m | (1 << v));
    let elim = Arc::new(ring.with_order(MonomialOrder::Elimination { eliminated: mask }));
    let gens: Vec<Polynomial> = ideal.iter().map(|p| p.reorder(&elim)).collect();
    let gb = GroebnerBasis::ideal(&elim, &gens);
    let leads: Vec<Monomial> = gb.leading_monomials().into_iter().map(|(_, m)| m).collect();
    if leads.iter().any(Monomial::is_one) {
        return Err(AlgebraError::NotFiniteOverS("the algebra is zero".into()));
    }
    for &y in &fibre {
        let pure = leads.iter().any(|m| m.support_mask() == 1 << y);
        if !pure {
            return Err(AlgebraError::NotFiniteOverS(alloc::format!(
                "no power of `{}` is a leading monomial",
                ring.names()[y]
            )));
        }
    }
    let basis = standard_fibre_monomials(&elim, &fibre, &leads);
    let module = GradedFreeModule::new(basis.iter().map(Monomial::degree).collect());
    let r = basis.len();

    // Relations of T^E / N as a T-module, then the y-free part.
    let one = |pos: usize, p: Polynomial| {
        let mut v = alloc::vec![Polynomial::zero(&elim); r];
        v[pos] = p;
        v
    };
    let mut rels: Vec<FreeModuleElement> = Vec::new();
    for (a, m) in basis.iter().enumerate().skip(1) {
        let mut v = one(a, Polynomial::one(&elim));
        v[0] = Polynomial::term(&elim, *m, elim.field().one()).neg();
        rels.push(FreeModuleElement::new(v));
    }
    for g in gb.polynomials() {
        rels.push(FreeModuleElement::new(one(0, g)));
    }
    let module_gb = GroebnerBasis::submodule(&elim, &module, &rels, PositionOrder::Top)?;

    let base = Arc::new(GradedRing::new(
        base_vars.iter().map(|&v| ring.names()[v].clone()).collect(),
        base_vars.iter().map(|&v| ring.weights()[v]).collect(),
        ring.field(),
        match ring.order() {
            MonomialOrder::Elimination { .. } => MonomialOrder::WeightedGrevLex,
            o => o,
        },
    )?);
    let mut var_map: Vec<Option<usize>> = alloc::vec![None; n];
    for (k, &v) in base_vars.iter().enumerate() {
        var_map[v] = Some(k);
    }
    let to_base = |p: &Polynomial| p.map_to_ring(&base, &var_map);

    let mut columns = Vec::new();
    for g in module_gb.generators() {
        if g.entries().iter().any(|p| p.terms().iter().any(|(m, _)| m.support_mask() & mask != 0)) {
            continue;
        }
        columns.push(FreeModuleElement::new(g.entries().iter().map(to_base).collect::<Result<_>>()?));
    }
    let degrees: Vec<i32> = columns
        .iter()
        .map(|c| c.degree_in(&module).ok_or(AlgebraError::NotHomogeneous { row: 0, col: 0 }))
        .collect::<Result<_>>()?;
    let presentation = ModuleMap::from_columns(&base, GradedFreeModule::new(degrees), module.clone(), &columns)?;

    // e_a e_b = NF(y^a y^b), split by fibre monomial.
    let mut products = alloc::vec![alloc::vec![FreeModuleElement::zero(&base, r); r]; r];
    for a in 0..r {
        for b in a..r {
            let nf = gb.reduce(&Polynomial::term(&elim, basis[a].mul(&basis[b]), elim.field().one()));
            let mut coords: Vec<Vec<(Monomial, crate::field::Scalar)>> = alloc::vec![Vec::new(); r];
            for (m, c) in nf.terms() {
                let y_part = m.only_vars(mask, elim.weights());
                let x_part = m.without_vars(mask, elim.weights());
                let slot = basis.iter().position(|e| *e == y_part).expect("normal forms use standard monomials");
                coords[slot].push((x_part, c.clone()));
            }
            let v = FreeModuleElement::new(
                coords
                    .into_iter()
                    .map(|ts| to_base(&Polynomial::from_terms(&elim, ts)))
                    .collect::<Result<_>>()?,
            );
            products[a][b] = v.clone();
            products[b][a] = v;
        }
    }

    let names: Vec<String> = basis
        .iter()
        .map(|m| crate::parse::render(&Polynomial::term(ring, *m, ring.field().one())))
        .collect();
    let ambient = Ambient {
        ring: ring.clone(),
        ideal: ideal.to_vec(),
        base_vars: base_vars.to_vec(),
        basis: basis.iter().map(|m| Polynomial::term(ring, *m, ring.field().one())).collect(),
    };
    Ok(AlgebraOverS::from_presentation(presentation)?.with_products(products)?.with_ambient(ambient, names))
}

/// Monomials in the fibre variables divisible by no leading monomial, unit first,
/// then by degree and ring order.
fn standard_fibre_monomials(ring: &GradedRing, fibre: &[usize], leads: &[Monomial]) -> Vec<Monomial> {
    let mut out = alloc::vec![Monomial::one()];
    let mut frontier = alloc::vec![Monomial::one()];
    while let Some(m) = frontier.pop() {
        for &y in fibre {
            let next = m.mul(&ring.var(y));
            if leads.iter().any(|l| l.divides(&next)) || out.contains(&next) {
                continue;
            }
            out.push(next);
            frontier.push(next);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ring.cmp(a, b)));
    out
}
