//! The product on a module with a unit generator, when it is determined by
//! the module: `e_h` acts by the unique `S`-linear endomorphism sending
//! `e_0` to `e_h`, which is the case when `R` is birational over `S / ann R`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complexes::{FreeModuleElement, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::field::Scalar;
use crate::groebner::{GroebnerBasis, PositionOrder};
use crate::linalg::DenseMatrix;
use crate::poly::Polynomial;
use crate::ring::Monomial;

type Key = (usize, [u16; 16]);

pub(crate) fn derive_products(presentation: &ModuleMap) -> Result<Vec<Vec<FreeModuleElement>>> {
    let ring = presentation.ring();
    let f0 = presentation.target().clone();
    let r = f0.rank();
    let unit = |k: usize| FreeModuleElement::basis(ring, r, k);
    if r == 1 {
        return Ok(alloc::vec![alloc::vec![unit(0)]]);
    }
    let gb = GroebnerBasis::submodule(ring, &f0, &presentation.columns(), PositionOrder::Top)?;
    let leads = gb.leading_monomials();
    let standard = |pos: usize, m: &Monomial| !leads.iter().any(|(p, l)| *p == pos && l.divides(m));
    let field = ring.field();
    let columns = presentation.columns();

    let mut table: Vec<Vec<FreeModuleElement>> = alloc::vec![alloc::vec![FreeModuleElement::zero(ring, r); r]; r];
    for (k, row) in table[0].iter_mut().enumerate() {
        *row = unit(k);
    }
    for h in 1..r {
        // Unknown images of e_1..e_{r-1}, spanned by standard monomials.
        let mut unknowns: Vec<(usize, usize, Monomial)> = Vec::new();
        for j in 1..r {
            let target_degree = f0.degree(j) + f0.degree(h);
            for pos in 0..r {
                for m in ring.monomials_of_degree(target_degree - f0.degree(pos)) {
                    if standard(pos, &m) {
                        unknowns.push((j, pos, m));
                    }
                }
            }
        }
        // NF(phi(column)) must vanish for every relation; it is linear in the unknowns.
        let mut rows: BTreeMap<Key, usize> = BTreeMap::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        let mut rhs: Vec<(usize, Scalar)> = Vec::new();
        let mut row_of = |k: Key| {
            let n = rows.len();
            *rows.entry(k).or_insert(n)
        };
        for (u, (j, pos, m)) in unknowns.iter().enumerate() {
            for c in &columns {
                if c.entries()[*j].is_zero() {
                    continue;
                }
                let mut img = alloc::vec![Polynomial::zero(ring); r];
                img[*pos] = c.entries()[*j].mul(&Polynomial::term(ring, *m, field.one()));
                for (k, s) in flatten(&gb.normal_form(&FreeModuleElement::new(img))?) {
                    entries.push((row_of(k), u, s));
                }
            }
        }
        for c in &columns {
            let v = FreeModuleElement::basis(ring, r, h).scale(&c.entries()[0]);
            for (k, s) in flatten(&gb.normal_form(&v)?) {
                rhs.push((row_of(k), s));
            }
        }
        let mut a = DenseMatrix::zeros(field, rows.len(), unknowns.len());
        for (row, u, s) in entries {
            let v = a.get(row, u).add(&s);
            a.set(row, u, v);
        }
        let mut b = alloc::vec![field.zero(); rows.len()];
        for (row, s) in rhs {
            b[row] = b[row].sub(&s);
        }
        let x = a.solve(&b).ok_or_else(|| {
            AlgebraError::NoRingStructure(alloc::format!("no S-linear endomorphism sends e_0 to e_{h}"))
        })?;
        if !a.nullspace().is_empty() {
            return Err(AlgebraError::NoRingStructure(alloc::format!("multiplication by e_{h} is not determined")));
        }
        let mut images: Vec<Vec<(Monomial, Scalar)>> = Vec::new();
        images.resize(r * r, Vec::new());
        for ((j, pos, m), s) in unknowns.iter().zip(x) {
            if !s.is_zero() {
                images[j * r + pos].push((*m, s));
            }
        }
        table[h][0] = unit(h);
        for j in 1..r {
            table[h][j] = FreeModuleElement::new(
                (0..r).map(|pos| Polynomial::from_terms(ring, core::mem::take(&mut images[j * r + pos]))).collect(),
            );
        }
    }
    for h in 1..r {
        for j in 1..h {
            if !gb.normal_form(&table[h][j].sub(&table[j][h]))?.is_zero() {
                return Err(AlgebraError::NoRingStructure(alloc::format!("e_{h} e_{j} != e_{j} e_{h}")));
            }
        }
    }
    Ok(table)
}

fn flatten(v: &FreeModuleElement) -> Vec<(Key, Scalar)> {
    v.entries()
        .iter()
        .enumerate()
        .flat_map(|(pos, p)| p.terms().iter().map(move |(m, c)| ((pos, *m.exponents()), c.clone())))
        .collect()
}
