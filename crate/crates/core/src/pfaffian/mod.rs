//! Skew-symmetric matrices and Pfaffians, the Buchsbaum–Eisenbud complex,
//! the rank condition, finite algebras as modules over a subring, and
//! recovery of algebra relations from a module structure.

mod algebra;
mod relations;

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use algebra::finite_algebra_presentation;
pub use relations::{recover_algebra_relations, AlgebraRelations, Relation, RelationKind};


use crate::complexes::{FreeComplex, GradedFreeModule, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::groebner::ideal_equal;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// A square matrix with `A^T = -A` and zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    ring: Arc<GradedRing>,
    entries: Vec<Vec<Polynomial>>,
}

impl SkewMatrix {
    pub fn new(ring: &Arc<GradedRing>, entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n || !row[i].is_zero() {
                return Err(AlgebraError::NotSkew);
            }
            for j in 0..i {
                if row[j] != entries[j][i].neg() {
                    return Err(AlgebraError::NotSkew);
                }
            }
        }
        Ok(SkewMatrix { ring: ring.clone(), entries })
    }

    /// Builds the matrix from its strict upper triangle, row by row.
    pub fn from_upper(ring: &Arc<GradedRing>, n: usize, upper: &[Polynomial]) -> Result<Self> {
        if upper.len() != n * (n.saturating_sub(1)) / 2 {
            return Err(AlgebraError::NotSkew);
        }
        let mut entries = alloc::vec![alloc::vec![Polynomial::zero(ring); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                entries[i][j] = upper[k].clone();
                entries[j][i] = upper[k].neg();
                k += 1;
            }
        }
        Ok(SkewMatrix { ring: ring.clone(), entries })
    }

    pub fn from_map(map: &ModuleMap) -> Result<Self> {
        Self::new(map.ring(), map.entries().to_vec())
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// The principal submatrix on the given indices.
    pub fn principal(&self, keep: &[usize]) -> SkewMatrix {
        let entries = keep.iter().map(|&i| keep.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        SkewMatrix { ring: self.ring.clone(), entries }
    }

    /// Product with a column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).fold(Polynomial::zero(&self.ring), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect()
    }
}

/// Pfaffian by expansion along the first row, memoized on index subsets.
pub fn pfaffian(a: &SkewMatrix) -> Polynomial {
    let n = a.size();
    if n % 2 == 1 {
        return Polynomial::zero(&a.ring);
    }
    let mut memo = BTreeMap::new();
    pf_subset(a, (1u32 << n) - 1, &mut memo)
}

fn pf_subset(a: &SkewMatrix, set: u32, memo: &mut BTreeMap<u32, Polynomial>) -> Polynomial {
    if set == 0 {
        return Polynomial::one(&a.ring);
    }
    if let Some(p) = memo.get(&set) {
        return p.clone();
    }
    let first = set.trailing_zeros() as usize;
    let rest = set & !(1 << first);
    let mut acc = Polynomial::zero(&a.ring);
    let mut sign_positive = true;
    for j in 0..a.size() {
        if rest & (1 << j) == 0 {
            continue;
        }
        let e = &a.entries[first][j];
        if !e.is_zero() {
            let term = e.mul(&pf_subset(a, rest & !(1 << j), memo));
            acc = if sign_positive { acc.add(&term) } else { acc.sub(&term) };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(set, acc.clone());
    acc
}

/// `v_i = (-1)^{i+1} pf(A without row and column i)`, 1-indexed; `A v = 0`.
pub fn submaximal_pfaffians(a: &SkewMatrix) -> Result<Vec<Polynomial>> {
    let n = a.size();
    if n.is_multiple_of(2) {
        return Err(AlgebraError::DegreesInconsistent(alloc::format!("submaximal Pfaffians need odd size, got {n}")));
    }
    let mut memo = BTreeMap::new();
    let full = (1u32 << n) - 1;
    Ok((0..n)
        .map(|i| {
            let p = pf_subset(a, full & !(1 << i), &mut memo);
            if i % 2 == 0 { p } else { p.neg() }
        })
        .collect())
}

/// Determinant by Laplace expansion along rows, memoized on column subsets.
pub fn determinant(ring: &Arc<GradedRing>, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let mut memo = BTreeMap::new();
    det_subset(ring, m, 0, (1u32 << n) - 1, &mut memo)
}

fn det_subset(ring: &Arc<GradedRing>, m: &[Vec<Polynomial>], row: usize, cols: u32, memo: &mut BTreeMap<u32, Polynomial>) -> Polynomial {
    if cols == 0 {
        return Polynomial::one(ring);
    }
    if let Some(p) = memo.get(&cols) {
        return p.clone();
    }
    let mut acc = Polynomial::zero(ring);
    let mut positive = true;
    for j in 0..32 {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = &m[row][j];
        if !e.is_zero() {
            let term = e.mul(&det_subset(ring, m, row + 1, cols & !(1 << j), memo));
            acc = if positive { acc.add(&term) } else { acc.sub(&term) };
        }
        positive = !positive;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// All `k x k` minors of a matrix.
pub fn minors(ring: &Arc<GradedRing>, m: &[Vec<Polynomial>], k: usize) -> Vec<Polynomial> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k == 0 {
        return alloc::vec![Polynomial::one(ring)];
    }
    let mut out = Vec::new();
    for rset in subsets(rows, k) {
        for cset in subsets(cols, k) {
            let sub: Vec<Vec<Polynomial>> =
                rset.iter().map(|&i| cset.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = determinant(ring, &sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

/// `S <- F <- F^*(t) <- S(t)` with maps `v^T`, `A` and `v`.
///
/// Without explicit degrees, the generator degrees of `F` are those of the
/// Pfaffians and the twist is read off a nonzero entry of `A`.
pub fn buchsbaum_eisenbud_complex(a: &SkewMatrix, degrees: Option<(Vec<i32>, i32)>) -> Result<FreeComplex> {
    let ring = a.ring();
    let n = a.size();
    let v = submaximal_pfaffians(a)?;
    let (f, t) = match degrees {
        Some(d) => d,
        None => {
            let f: Vec<i32> = v
                .iter()
                .map(|p| p.degree().ok_or_else(|| AlgebraError::DegreesInconsistent("a Pfaffian is zero or inhomogeneous".into())))
                .collect::<Result<_>>()?;
            let t = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find_map(|(i, j)| a.entry(i, j).degree().map(|d| -f[i] - f[j] - d))
                .ok_or_else(|| AlgebraError::DegreesInconsistent("all entries vanish; pass degrees explicitly".into()))?;
            (f, t)
        }
    };
    if f.len() != n {
        return Err(AlgebraError::DegreesInconsistent("one degree per row is required".into()));
    }
    let f_mod = GradedFreeModule::new(f);
    let s = GradedFreeModule::new(alloc::vec![0]);
    let fail = |e: AlgebraError| match e {
        AlgebraError::NotHomogeneous { row, col } => {
            AlgebraError::DegreesInconsistent(alloc::format!("entry ({row}, {col}) does not fit the degrees"))
        }
        other => other,
    };
    let d1 = ModuleMap::new(ring, f_mod.clone(), s.clone(), alloc::vec![v.clone()]).map_err(fail)?;
    let d2 = ModuleMap::new(ring, f_mod.dual(t), f_mod.clone(), a.entries().to_vec()).map_err(fail)?;
    let d3 = ModuleMap::new(ring, s.dual(t), f_mod.dual(t), v.iter().map(|p| alloc::vec![p.clone()]).collect()).map_err(fail)?;
    FreeComplex::new(ring, s, alloc::vec![d1, d2, d3])
}

/// Outcome of the rank condition with the minors compared.
#[derive(Clone, Debug)]
pub struct RankCondition {
    pub holds: bool,
    pub minors: Vec<Polynomial>,
    pub minors_without_first_row: Vec<Polynomial>,
}

/// The ideals of `(h-1)`-minors of `d1` and of `d1` without its first row agree.
pub fn check_rank_condition(d1: &ModuleMap) -> RankCondition {
    let ring = d1.ring();
    let h = d1.rows();
    let k = h.saturating_sub(1);
    let all = minors(ring, d1.entries(), k);
    let without: Vec<Vec<Polynomial>> = d1.entries().iter().skip(1).cloned().collect();
    let reduced = if without.is_empty() { alloc::vec![Polynomial::one(ring)] } else { minors(ring, &without, k) };
    RankCondition { holds: ideal_equal(ring, &all, &reduced), minors: all, minors_without_first_row: reduced }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    fn ring(n: usize) -> Arc<GradedRing> {
        let names: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("a{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        GradedRing::standard(&refs, Field::default()).unwrap().into_arc()
    }

    fn generic(r: &Arc<GradedRing>, n: usize) -> SkewMatrix {
        let upper: Vec<Polynomial> = (0..n * (n - 1) / 2).map(|k| Polynomial::var(r, k)).collect();
        SkewMatrix::from_upper(r, n, &upper).unwrap()
    }

    #[test]
    fn small_pfaffians() {
        let r = ring(6);
        assert_eq!(pfaffian(&generic(&r, 2)), Polynomial::var(&r, 0));
        let p = |s: &str| parse_poly(s, &r).unwrap();
        // a12 a34 - a13 a24 + a14 a23 with a12=a0, a13=a1, a14=a2, a23=a3, a24=a4, a34=a5
        assert_eq!(pfaffian(&generic(&r, 4)), p("a0*a5 - a1*a4 + a2*a3"));
        assert!(pfaffian(&generic(&r, 3)).is_zero());
    }

    #[test]
    fn three_by_three_signs() {
        let r = ring(3);
        let a = generic(&r, 3);
        let v = submaximal_pfaffians(&a).unwrap();
        // (a23, -a13, a12)
        assert_eq!(v, alloc::vec![Polynomial::var(&r, 2), Polynomial::var(&r, 1).neg(), Polynomial::var(&r, 0)]);
        assert!(a.apply(&v).iter().all(Polynomial::is_zero));
    }

    #[test]
    fn rejects_non_skew() {
        let r = ring(1);
        let x = Polynomial::var(&r, 0);
        let z = Polynomial::zero(&r);
        assert_eq!(SkewMatrix::new(&r, alloc::vec![alloc::vec![z.clone(), x.clone()], alloc::vec![x, z]]), Err(AlgebraError::NotSkew));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let r = ring(15);
        for n in [2, 4, 6] {
            let a = generic(&r, n);
            assert_eq!(pfaffian(&a).pow(2), determinant(&r, a.entries()), "size {n}");
        }
    }
}
