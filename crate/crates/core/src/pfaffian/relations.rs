use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::complexes::{betti, hilbert_from_betti, FreeModuleElement};
use crate::error::{AlgebraError, Result};
use crate::gorenstein::{GorensteinCertificate, MultiplicativeStructure};
use crate::groebner::GroebnerBasis;
use crate::poly::Polynomial;
use crate::ring::{GradedRing, MonomialOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `sum_k d_1[k][column] x_k` with `x_0 = 1`.
    Linear { column: usize },
    /// `x_g x_h` minus its expansion in the generators.
    Quadratic { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub polynomial: Polynomial,
}

/// Defining relations of `R` in `S[x_1, ..., x_{r-1}]`, one new variable per
/// generator of `F_0` other than the unit.
#[derive(Clone, Debug)]
pub struct AlgebraRelations {
    ring: Arc<GradedRing>,
    relations: Vec<Relation>,
    hilbert_matches: bool,
}

impl AlgebraRelations {
    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.relations.iter().map(|r| r.polynomial.clone()).collect()
    }

    /// Whether `S[x] / (relations)` has the Hilbert series of `R`.
    pub fn hilbert_matches(&self) -> bool {
        self.hilbert_matches
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Linear relations from the columns of `d_1` and the quadratic relations
/// `x_g x_h = β_0(e_g e_h)`. `names` label the generators of `F_0` (the unit
/// first); unusable or clashing names fall back to `w1, w2, ...`.
pub fn recover_algebra_relations(
    cert: &GorensteinCertificate,
    mult: &MultiplicativeStructure,
    names: &[String],
) -> Result<AlgebraRelations> {
    let f = &cert.complex;
    let base = f.ring();
    let f0 = f.module(0);
    let r = f0.rank();
    if f0 != mult.complex().module(0) {
        return Err(AlgebraError::ShapeMismatch("certificate and multiplication disagree on F_0".into()));
    }
    let n = base.nvars();
    let mut all_names: Vec<String> = base.names().to_vec();
    let mut weights: Vec<u32> = base.weights().to_vec();
    for k in 1..r {
        let d = f0.degree(k);
        if d <= 0 {
            return Err(AlgebraError::NoRingStructure(alloc::format!("generator {k} has degree {d}")));
        }
        let name = names
            .get(k)
            .filter(|s| is_identifier(s) && !all_names.contains(s))
            .cloned()
            .unwrap_or_else(|| alloc::format!("w{k}"));
        all_names.push(name);
        weights.push(d as u32);
    }
    let order = match base.order() {
        MonomialOrder::Elimination { .. } => MonomialOrder::WeightedGrevLex,
        o => o,
    };
    let ext = Arc::new(GradedRing::new(all_names, weights, base.field(), order)?);
    let var_map: Vec<Option<usize>> = (0..n).map(Some).collect();
    let embed = |p: &Polynomial| p.map_to_ring(&ext, &var_map);
    let gen = |k: usize| {
        if k == 0 {
            Polynomial::one(&ext)
        } else {
            Polynomial::term(&ext, ext.var(n + k - 1), ext.field().one())
        }
    };
    let combine = |v: &FreeModuleElement| -> Result<Polynomial> {
        v.entries().iter().enumerate().try_fold(Polynomial::zero(&ext), |acc, (k, p)| Ok(acc.add(&embed(p)?.mul(&gen(k)))))
    };

    let mut relations = Vec::new();
    if f.length() >= 1 {
        for (column, v) in f.differential(1).columns().iter().enumerate() {
            relations.push(Relation { kind: RelationKind::Linear { column }, polynomial: combine(v)? });
        }
    }
    for g in 1..r {
        for h in g..r {
            let product = combine(&mult.product((0, g), (0, h)))?;
            relations.push(Relation {
                kind: RelationKind::Quadratic { left: g, right: h },
                polynomial: gen(g).mul(&gen(h)).sub(&product),
            });
        }
    }
    relations.retain(|rel| !rel.polynomial.is_zero());
    let polys: Vec<Polynomial> = relations.iter().map(|r| r.polynomial.clone()).collect();
    let quotient = GroebnerBasis::ideal(&ext, &polys).hilbert_series();
    let module = hilbert_from_betti(&betti(f), base);
    Ok(AlgebraRelations { ring: ext, relations, hilbert_matches: quotient.same_series(&module) })
}
