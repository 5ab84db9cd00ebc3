//! Graded free modules `⊕ S(-g_i)` and homogeneous matrices between them.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{AlgebraError, Result};
use crate::field::Scalar;
use crate::linalg::DenseMatrix;
use crate::poly::{same_ring, Polynomial};
use crate::ring::GradedRing;

/// `⊕_i S(-g_i)`, recorded by the generator degrees `g_i` in basis order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedFreeModule {
    degrees: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(degrees: Vec<i32>) -> Self {
        GradedFreeModule { degrees }
    }

    pub fn zero() -> Self {
        GradedFreeModule { degrees: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    /// Basis indices sorted by degree; ties keep their original order.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank()).collect();
        idx.sort_by_key(|&i| self.degrees[i]);
        idx
    }

    pub fn sorted_degrees(&self) -> Vec<i32> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }

    /// `Hom(F, S)(t)`: the summand `S(-g)` becomes `S(g + t)`, i.e. degree `-(g + t)`.
    pub fn dual(&self, twist: i32) -> Self {
        GradedFreeModule { degrees: self.degrees.iter().map(|g| -g - twist).collect() }
    }

    /// `F(-s)`: every generator degree increases by `s`.
    pub fn shifted(&self, s: i32) -> Self {
        GradedFreeModule { degrees: self.degrees.iter().map(|g| g + s).collect() }
    }

    pub fn direct_sum(&self, other: &GradedFreeModule) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedFreeModule { degrees }
    }

    pub fn select(&self, keep: &[usize]) -> Self {
        GradedFreeModule { degrees: keep.iter().map(|&i| self.degrees[i]).collect() }
    }

    pub fn without(&self, index: usize) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.remove(index);
        GradedFreeModule { degrees }
    }
}

impl fmt::Debug for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{:?}", self.degrees)
    }
}

/// A vector in a free module, one polynomial per basis element.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleElement {
    entries: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        FreeModuleElement { entries }
    }

    pub fn zero(ring: &Arc<GradedRing>, rank: usize) -> Self {
        FreeModuleElement { entries: alloc::vec![Polynomial::zero(ring); rank] }
    }

    pub fn basis(ring: &Arc<GradedRing>, rank: usize, index: usize) -> Self {
        let mut v = Self::zero(ring, rank);
        v.entries[index] = Polynomial::one(ring);
        v
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeModuleElement { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FreeModuleElement { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, p: &Polynomial) -> Self {
        FreeModuleElement { entries: self.entries.iter().map(|a| a.mul(p)).collect() }
    }

    /// Degree of a nonzero homogeneous element of `module` (entry degree plus generator degree).
    pub fn degree_in(&self, module: &GradedFreeModule) -> Option<i32> {
        let mut found = None;
        for (i, e) in self.entries.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            let d = e.degree()? + module.degree(i);
            match found {
                None => found = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        found
    }
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

/// A degree-zero homogeneous map `source -> target`, stored as a
/// `target.rank() x source.rank()` matrix acting on column vectors.
///
/// Entry `(i, j)` is zero or homogeneous of degree `source_j - target_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    ring: Arc<GradedRing>,
    source: GradedFreeModule,
    target: GradedFreeModule,
    entries: Vec<Vec<Polynomial>>,
}

impl ModuleMap {
    /// Validates shape and homogeneity.
    pub fn new(
        ring: &Arc<GradedRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(AlgebraError::IncompatibleModule(alloc::format!(
                "matrix shape does not match {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !same_ring(e.ring(), ring) {
                    return Err(AlgebraError::IncompatibleModule("entry from another ring".to_string()));
                }
                if e.is_zero() {
                    continue;
                }
                if e.degree() != Some(source.degree(j) - target.degree(i)) {
                    return Err(AlgebraError::NotHomogeneous { row: i, col: j });
                }
            }
        }
        Ok(ModuleMap { ring: ring.clone(), source, target, entries })
    }

    pub fn zero(ring: &Arc<GradedRing>, source: GradedFreeModule, target: GradedFreeModule) -> Self {
        let entries = alloc::vec![alloc::vec![Polynomial::zero(ring); source.rank()]; target.rank()];
        ModuleMap { ring: ring.clone(), source, target, entries }
    }

    pub fn identity(ring: &Arc<GradedRing>, module: &GradedFreeModule) -> Self {
        let mut m = Self::zero(ring, module.clone(), module.clone());
        for i in 0..module.rank() {
            m.entries[i][i] = Polynomial::one(ring);
        }
        m
    }

    /// Builds a map from its columns; validates homogeneity.
    pub fn from_columns(
        ring: &Arc<GradedRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        columns: &[FreeModuleElement],
    ) -> Result<Self> {
        let mut entries = alloc::vec![Vec::with_capacity(columns.len()); target.rank()];
        for c in columns {
            if c.rank() != target.rank() {
                return Err(AlgebraError::IncompatibleModule("column length".to_string()));
            }
            for (i, e) in c.entries().iter().enumerate() {
                entries[i].push(e.clone());
            }
        }
        Self::new(ring, source, target, entries)
    }

    /// Builds a map from columns, deriving the source degrees from the columns.
    /// Zero columns get degree `zero_degree`.
    pub fn from_columns_infer(
        ring: &Arc<GradedRing>,
        target: GradedFreeModule,
        columns: &[FreeModuleElement],
        zero_degree: i32,
    ) -> Result<Self> {
        let mut degrees = Vec::with_capacity(columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.is_zero() {
                degrees.push(zero_degree);
            } else {
                degrees.push(c.degree_in(&target).ok_or(AlgebraError::NotHomogeneous { row: 0, col: j })?);
            }
        }
        Self::from_columns(ring, GradedFreeModule::new(degrees), target, columns)
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn source(&self) -> &GradedFreeModule {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> FreeModuleElement {
        FreeModuleElement::new(self.entries.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<FreeModuleElement> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    /// `self ∘ other`; requires `other.target == self.source`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.source != other.target {
            return Err(AlgebraError::IncompatibleModule(alloc::format!(
                "cannot compose {:?} -> {:?} after {:?} -> {:?}",
                self.source,
                self.target,
                other.source,
                other.target
            )));
        }
        let mut entries = alloc::vec![alloc::vec![Polynomial::zero(&self.ring); other.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        *out = out.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(ModuleMap { ring: self.ring.clone(), source: other.source.clone(), target: self.target.clone(), entries })
    }

    /// Composition that panics on mismatched modules; for internal use where shapes are known.
    pub(crate) fn after(&self, other: &ModuleMap) -> ModuleMap {
        self.compose(other).expect("composable maps")
    }

    pub fn apply(&self, v: &FreeModuleElement) -> FreeModuleElement {
        let mut out = FreeModuleElement::zero(&self.ring, self.rows());
        for (i, row) in self.entries.iter().enumerate() {
            let mut acc = Polynomial::zero(&self.ring);
            for (a, b) in row.iter().zip(v.entries()) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            out = {
                let mut e = out.into_entries();
                e[i] = acc;
                FreeModuleElement::new(e)
            };
        }
        out
    }

    fn zip_with(&self, other: &ModuleMap, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Result<ModuleMap> {
        if self.source != other.source || self.target != other.target {
            return Err(AlgebraError::IncompatibleModule("maps between different modules".to_string()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(ModuleMap { ring: self.ring.clone(), source: self.source.clone(), target: self.target.clone(), entries })
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.zip_with(other, Polynomial::add)
    }

    pub fn sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.zip_with(other, Polynomial::sub)
    }

    pub fn neg(&self) -> ModuleMap {
        self.map_entries(Polynomial::neg)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        self.map_entries(|p| p.scale(c))
    }

    fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> ModuleMap {
        let entries = self.entries.iter().map(|r| r.iter().map(&f).collect()).collect();
        ModuleMap { ring: self.ring.clone(), source: self.source.clone(), target: self.target.clone(), entries }
    }

    /// The dual map `target^*(t) -> source^*(t)`, as a plain transpose.
    pub fn transpose(&self, twist: i32) -> ModuleMap {
        let entries = (0..self.cols()).map(|j| (0..self.rows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        ModuleMap {
            ring: self.ring.clone(),
            source: self.target.dual(twist),
            target: self.source.dual(twist),
            entries,
        }
    }

    /// Same matrix viewed between other modules with identical degrees' differences.
    pub fn with_modules(&self, source: GradedFreeModule, target: GradedFreeModule) -> Result<ModuleMap> {
        ModuleMap::new(&self.ring, source, target, self.entries.clone())
    }

    /// Matrix equality ignoring module bookkeeping.
    pub fn same_matrix(&self, other: &ModuleMap) -> bool {
        self.entries == other.entries
    }

    /// Keeps the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ModuleMap {
        let entries = rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        ModuleMap {
            ring: self.ring.clone(),
            source: self.source.select(cols),
            target: self.target.select(rows),
            entries,
        }
    }

    /// `[self | other]` with a shared target.
    pub fn hstack(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target != other.target {
            return Err(AlgebraError::IncompatibleModule("hstack needs a common target".to_string()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        Ok(ModuleMap {
            ring: self.ring.clone(),
            source: self.source.direct_sum(&other.source),
            target: self.target.clone(),
            entries,
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &ModuleMap) -> ModuleMap {
        let mut out = ModuleMap::zero(&self.ring, self.source.direct_sum(&other.source), self.target.direct_sum(&other.target));
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out.entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..other.rows() {
            for j in 0..other.cols() {
                out.entries[self.rows() + i][self.cols() + j] = other.entries[i][j].clone();
            }
        }
        out
    }

    /// Scalar (degree-zero) part of the matrix.
    pub fn scalar_part(&self) -> DenseMatrix {
        let field = self.ring.field();
        let mut m = DenseMatrix::zeros(field, self.rows(), self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if let Some((mono, c)) = self.entries[i][j].lead() {
                    if mono.is_one() {
                        m.set(i, j, c.clone());
                    }
                }
            }
        }
        m
    }

    /// Position of a nonzero constant entry, if any.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_minimal(&self) -> bool {
        self.unit_entry().is_none()
    }

    /// `M^T = sign * M` as matrices (square maps only).
    pub fn is_symmetric_with_sign(&self, sign: i32) -> bool {
        if self.rows() != self.cols() {
            return false;
        }
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let a = &self.entries[i][j];
                let b = &self.entries[j][i];
                let ok = if sign >= 0 { a == b } else { a == &b.neg() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Skew-symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        self.is_symmetric_with_sign(-1) && (0..self.rows()).all(|i| self.entries[i][i].is_zero())
    }

    pub(crate) fn set_entry(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i][j] = p;
    }

    /// Invertibility of a degree-zero map between free modules: by graded
    /// Nakayama this is decided by the scalar part.
    pub fn is_invertible(&self) -> bool {
        self.rows() == self.cols() && self.scalar_part().inverse().is_some()
    }

    /// Inverse of an isomorphism of graded free modules.
    ///
    /// Writes `self = D + N` with `D` the scalar part; `D^{-1} N` strictly raises
    /// degrees, so `(I + D^{-1} N)^{-1} = sum_k (-D^{-1} N)^k` terminates.
    pub fn inverse(&self) -> Option<ModuleMap> {
        if self.rows() != self.cols() {
            return None;
        }
        let d = self.scalar_part();
        let d_inv = d.inverse()?;
        // D^{-1}: target -> source as a module map.
        let mut d_inv_map = ModuleMap::zero(&self.ring, self.target.clone(), self.source.clone());
        for i in 0..d_inv.rows() {
            for j in 0..d_inv.cols() {
                let c = d_inv.get(i, j);
                if !c.is_zero() {
                    if self.source.degree(i) != self.target.degree(j) {
                        return None;
                    }
                    d_inv_map.entries[i][j] = Polynomial::constant(&self.ring, c.clone());
                }
            }
        }
        let mut nilpotent = self.clone();
        for (i, row) in nilpotent.entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                if !d.get(i, j).is_zero() {
                    *e = Polynomial::zero(&self.ring);
                }
            }
        }
        let step = d_inv_map.after(&nilpotent).neg();
        let mut power = ModuleMap::identity(&self.ring, &self.source);
        let mut sum = power.clone();
        for _ in 0..=self.rows() * 64 {
            power = step.after(&power);
            if power.is_zero() {
                return Some(sum.after(&d_inv_map));
            }
            sum = sum.add(&power).ok()?;
        }
        None
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} -> {:?}", self.source, self.target)?;
        for row in &self.entries {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}
