#![allow(dead_code)]

use std::sync::Arc;

use gorenstein_core::complexes::{FreeModuleElement, GradedFreeModule, ModuleMap};
use gorenstein_core::pfaffian::{submaximal_pfaffians, SkewMatrix};
use gorenstein_core::{parse_poly, Field, GradedRing, Polynomial};

pub fn ring(names: &[&str]) -> Arc<GradedRing> {
    GradedRing::standard(names, Field::default()).unwrap().into_arc()
}

pub fn weighted(names: &[&str], weights: &[u32]) -> Arc<GradedRing> {
    GradedRing::weighted(names, weights, Field::default()).unwrap().into_arc()
}

pub fn poly(r: &Arc<GradedRing>, s: &str) -> Polynomial {
    parse_poly(s, r).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn polys(r: &Arc<GradedRing>, gens: &[&str]) -> Vec<Polynomial> {
    gens.iter().map(|s| poly(r, s)).collect()
}

/// `S <- ⊕ S(-deg g)` sending the basis to the generators.
pub fn cyclic(r: &Arc<GradedRing>, gens: &[Polynomial]) -> ModuleMap {
    let cols: Vec<FreeModuleElement> = gens.iter().map(|g| FreeModuleElement::new(vec![g.clone()])).collect();
    ModuleMap::from_columns_infer(r, GradedFreeModule::new(vec![0]), &cols, 0).unwrap()
}

pub const LINEAR_FORMS: [&str; 4] = ["3*x0-x1+2*x4", "x1+5*x2-x3", "2*x0+x3-7*x4", "x2-4*x1+x4"];
pub const QUADRIC: &str = "x0*x2-3*x1^2+x3*x4+2*x4^2-x0*x1";

/// The genus 6 canonical curve in `P^5`: the del Pezzo Pfaffians plus `x4*y + q`.
pub fn canonical_curve() -> (Arc<GradedRing>, Vec<Polynomial>) {
    let t = ring(&["x0", "x1", "x2", "x3", "x4", "y"]);
    let l = LINEAR_FORMS;
    let upper = polys(&t, &["y", l[0], l[2], "x0", l[1], l[3], "x1", "y", "x2", "x3"]);
    let m = SkewMatrix::from_upper(&t, 5, &upper).unwrap();
    let mut ideal = submaximal_pfaffians(&m).unwrap();
    ideal.push(poly(&t, &format!("x4*y+{QUADRIC}")));
    (t, ideal)
}

/// Sign of the permutation sorting `v` (distinct entries), or 0 on repeats.
pub fn sort_sign(v: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Determinant by the Leibniz sum over all permutations.
pub fn leibniz_det(r: &Arc<GradedRing>, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let mut total = Polynomial::zero(r);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut term = Polynomial::from_i64(r, sort_sign(p));
        for (i, &j) in p.iter().enumerate() {
            term = term.mul(&m[i][j]);
        }
        total = total.add(&term);
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}
