use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::products::derive_products;
use super::AlgebraOverS;
use crate::complexes::{FreeComplex, FreeModuleElement, GradedFreeModule, ModuleMap, Resolution};
use crate::error::{AlgebraError, Result};
use crate::groebner::Lifter;
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// A basis vector `(i, a)` of `F_i`.
pub type Slot = (usize, usize);

/// Basis element `left * right` of `S_2(F)` with `left <= right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPair {
    pub left: Slot,
    pub right: Slot,
}

/// `S_2(F) = (F ⊗ F) / (x⊗y - (-1)^{|x||y|} y⊗x)` in degrees `0..=top`.
#[derive(Clone, Debug)]
pub struct SymSquare {
    ring: Arc<GradedRing>,
    bases: Vec<Vec<SymPair>>,
    index: Vec<BTreeMap<SymPair, usize>>,
    modules: Vec<GradedFreeModule>,
    differentials: Vec<ModuleMap>,
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// `S_2(F)` up to the length of `F`.
pub fn sym_square(f: &FreeComplex) -> SymSquare {
    SymSquare::up_to(f, f.length())
}

impl SymSquare {
    pub fn up_to(f: &FreeComplex, top: usize) -> Self {
        let ring = f.ring();
        let mut bases = Vec::new();
        let mut index = Vec::new();
        let mut modules = Vec::new();
        for n in 0..=top {
            let mut basis = Vec::new();
            for i in 0..=n / 2 {
                let j = n - i;
                let (ri, rj) = (f.module(i).rank(), f.module(j).rank());
                for a in 0..ri {
                    for b in 0..rj {
                        let keep = i < j || b > a || (b == a && i % 2 == 0);
                        if keep {
                            basis.push(SymPair { left: (i, a), right: (j, b) });
                        }
                    }
                }
            }
            let degrees = basis
                .iter()
                .map(|p| f.module(p.left.0).degree(p.left.1) + f.module(p.right.0).degree(p.right.1))
                .collect();
            index.push(basis.iter().enumerate().map(|(k, p)| (*p, k)).collect());
            modules.push(GradedFreeModule::new(degrees));
            bases.push(basis);
        }
        let mut s = SymSquare { ring: ring.clone(), bases, index, modules, differentials: Vec::new() };
        for n in 1..=top {
            let columns: Vec<FreeModuleElement> = s.bases[n]
                .iter()
                .map(|p| s.project_element(n - 1, &tensor_differential(f, p.left, p.right)))
                .collect();
            let d = ModuleMap::from_columns(ring, s.modules[n].clone(), s.modules[n - 1].clone(), &columns)
                .expect("the induced differential is homogeneous");
            s.differentials.push(d);
        }
        s
    }

    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &[SymPair] {
        &self.bases[n]
    }

    pub fn module(&self, n: usize) -> &GradedFreeModule {
        &self.modules[n]
    }

    /// `δ̄_n: S_2(F)_n -> S_2(F)_{n-1}` for `n >= 1`.
    pub fn differential(&self, n: usize) -> &ModuleMap {
        &self.differentials[n - 1]
    }

    /// `π(x ⊗ y)` as a signed basis index, or `None` for `x⊗x` with `|x|` odd.
    pub fn project(&self, x: Slot, y: Slot) -> Option<(i64, usize)> {
        let n = x.0 + y.0;
        let (s, pair) = if (x.0, x.1) <= (y.0, y.1) {
            (1, SymPair { left: x, right: y })
        } else {
            (sign(x.0 * y.0 % 2 == 1), SymPair { left: y, right: x })
        };
        if pair.left == pair.right && pair.left.0 % 2 == 1 {
            return None;
        }
        Some((s, self.index[n][&pair]))
    }

    /// `π` applied to a sum of tensors `c * x ⊗ y`.
    fn project_element(&self, n: usize, terms: &[(Polynomial, Slot, Slot)]) -> FreeModuleElement {
        let mut out = alloc::vec![Polynomial::zero(&self.ring); self.modules[n].rank()];
        for (c, x, y) in terms {
            if let Some((s, k)) = self.project(*x, *y) {
                out[k] = if s > 0 { out[k].add(c) } else { out[k].sub(c) };
            }
        }
        FreeModuleElement::new(out)
    }

    /// Ranks split as `V ⊕ Λ^2 F_{n/2}` or `V ⊕ S_2 F_{n/2}`, and `π` kills the
    /// relations; `δ̄` is well defined on them.
    pub fn verify(&self, f: &FreeComplex) -> bool {
        for n in 0..=self.top() {
            let mut expected = 0;
            for i in 0..=n / 2 {
                let j = n - i;
                let (ri, rj) = (f.module(i).rank(), f.module(j).rank());
                expected += if i < j {
                    ri * rj
                } else if i % 2 == 1 {
                    ri * (ri.saturating_sub(1)) / 2
                } else {
                    ri * (ri + 1) / 2
                };
            }
            if self.bases[n].len() != expected {
                return false;
            }
        }
        let ring = f.ring();
        for n in 0..=self.top() {
            for i in 0..=n {
                let j = n - i;
                for a in 0..f.module(i).rank() {
                    for b in 0..f.module(j).rank() {
                        let s = Polynomial::from_i64(ring, -sign(i * j % 2 == 1));
                        let rel = [(Polynomial::one(ring), (i, a), (j, b)), (s.clone(), (j, b), (i, a))];
                        if !self.project_element(n, &rel).is_zero() {
                            return false;
                        }
                        if n == 0 {
                            continue;
                        }
                        let mut image = tensor_differential(f, (i, a), (j, b));
                        image.extend(tensor_differential(f, (j, b), (i, a)).into_iter().map(|(c, x, y)| (c.mul(&s), x, y)));
                        if !self.project_element(n - 1, &image).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `δ(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy` as a list of `c * u ⊗ v`.
fn tensor_differential(f: &FreeComplex, x: Slot, y: Slot) -> Vec<(Polynomial, Slot, Slot)> {
    let mut out = Vec::new();
    if x.0 >= 1 {
        let d = f.differential_or_zero(x.0);
        for k in 0..d.rows() {
            let c = d.entry(k, x.1);
            if !c.is_zero() {
                out.push((c.clone(), (x.0 - 1, k), y));
            }
        }
    }
    if y.0 >= 1 {
        let d = f.differential_or_zero(y.0);
        for k in 0..d.rows() {
            let c = d.entry(k, y.1);
            if !c.is_zero() {
                let c = if x.0 % 2 == 1 { c.neg() } else { c.clone() };
                out.push((c, x, (y.0 - 1, k)));
            }
        }
    }
    out
}

/// `μ = β ∘ π: (F ⊗ F)_n -> F_n` for `n` up to the length of `F`.
#[derive(Clone, Debug)]
pub struct MultiplicativeStructure {
    complex: FreeComplex,
    sym: SymSquare,
    beta: Vec<ModuleMap>,
}

impl MultiplicativeStructure {
    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn sym_square(&self) -> &SymSquare {
        &self.sym
    }

    /// `β_n: S_2(F)_n -> F_n`.
    pub fn beta(&self, n: usize) -> &ModuleMap {
        &self.beta[n]
    }

    pub fn top(&self) -> usize {
        self.complex.length()
    }

    /// `μ(x ⊗ y)` for basis vectors, in `F_{i+j}`.
    pub fn product(&self, x: Slot, y: Slot) -> FreeModuleElement {
        let ring = self.complex.ring();
        let n = x.0 + y.0;
        let rank = self.complex.module(n).rank();
        if n > self.top() {
            return FreeModuleElement::zero(ring, rank);
        }
        match self.sym.project(x, y) {
            None => FreeModuleElement::zero(ring, rank),
            Some((s, k)) => {
                let v = self.beta[n].column(k);
                if s > 0 {
                    v
                } else {
                    v.scale(&Polynomial::from_i64(ring, -1))
                }
            }
        }
    }

    /// Bilinear extension of `μ` to `x ∈ F_i`, `y ∈ F_j`.
    pub fn multiply(&self, i: usize, x: &FreeModuleElement, j: usize, y: &FreeModuleElement) -> FreeModuleElement {
        let ring = self.complex.ring();
        let mut out = FreeModuleElement::zero(ring, self.complex.module(i + j).rank());
        for (a, p) in x.entries().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in y.entries().iter().enumerate() {
                if !q.is_zero() {
                    out = out.add(&self.product((i, a), (j, b)).scale(&p.mul(q)));
                }
            }
        }
        out
    }

    fn slots(&self, i: usize) -> impl Iterator<Item = Slot> {
        (0..self.complex.module(i).rank()).map(move |a| (i, a))
    }

    /// `d μ(x⊗y) = μ(dx⊗y) + (-1)^{|x|} μ(x⊗dy)` on all basis pairs.
    pub fn check_leibniz(&self) -> bool {
        for n in 1..=self.top() {
            let d = self.complex.differential(n);
            for i in 0..=n {
                for x in self.slots(i) {
                    for y in self.slots(n - i) {
                        let left = d.apply(&self.product(x, y));
                        let ring = self.complex.ring();
                        let mut right = FreeModuleElement::zero(ring, d.rows());
                        for (c, u, v) in tensor_differential(&self.complex, x, y) {
                            right = right.add(&self.product(u, v).scale(&c));
                        }
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `μ(e_0 ⊗ g) = g = μ(g ⊗ e_0)`.
    pub fn check_unit(&self) -> bool {
        let ring = self.complex.ring();
        (0..=self.top()).all(|i| {
            self.slots(i).all(|g| {
                let e = FreeModuleElement::basis(ring, self.complex.module(i).rank(), g.1);
                self.product((0, 0), g) == e && self.product(g, (0, 0)) == e
            })
        })
    }

    /// `μ(x ⊗ y) = (-1)^{|x||y|} μ(y ⊗ x)`.
    pub fn check_commutative(&self) -> bool {
        let ring = self.complex.ring();
        for n in 0..=self.top() {
            for i in 0..=n {
                for x in self.slots(i) {
                    for y in self.slots(n - i) {
                        let s = Polynomial::from_i64(ring, sign(i * (n - i) % 2 == 1));
                        if self.product(x, y) != self.product(y, x).scale(&s) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Maps `h_n: (F⊗F⊗F)_n -> F_{n+1}` with `ρ = d h + h δ` for
    /// `ρ = μ(μ⊗1) - μ(1⊗μ)`, in degrees up to the length of `F`.
    pub fn associativity_homotopy(&self) -> Result<Vec<ModuleMap>> {
        let f = &self.complex;
        let ring = f.ring();
        let top = self.top();
        let mut out: Vec<ModuleMap> = Vec::new();
        let mut prev_index: BTreeMap<[Slot; 3], usize> = BTreeMap::new();
        for n in 0..=top {
            let mut triples: Vec<[Slot; 3]> = Vec::new();
            for i in 0..=n {
                for j in 0..=n - i {
                    let k = n - i - j;
                    for x in self.slots(i) {
                        for y in self.slots(j) {
                            for z in self.slots(k) {
                                triples.push([x, y, z]);
                            }
                        }
                    }
                }
            }
            let degree = |s: Slot| f.module(s.0).degree(s.1);
            let source = GradedFreeModule::new(triples.iter().map(|t| t.iter().map(|s| degree(*s)).sum()).collect());
            let mut columns = Vec::with_capacity(triples.len());
            for t in &triples {
                let [x, y, z] = *t;
                let xy = self.product(x, y);
                let yz = self.product(y, z);
                let unit = |s: Slot| FreeModuleElement::basis(ring, f.module(s.0).rank(), s.1);
                let mut v = self
                    .multiply(x.0 + y.0, &xy, z.0, &unit(z))
                    .sub(&self.multiply(x.0, &unit(x), y.0 + z.0, &yz));
                if n > 0 {
                    let h = &out[n - 1];
                    for (c, u) in triple_differential(f, t) {
                        v = v.sub(&h.column(prev_index[&u]).scale(&c));
                    }
                }
                columns.push(v);
            }
            let rhs = ModuleMap::from_columns(ring, source.clone(), f.module(n), &columns)?;
            let h = if n < top {
                Lifter::new(f.differential(n + 1))
                    .lift(&rhs)
                    .map_err(|e| AlgebraError::LiftFailed(alloc::format!("associativity homotopy in degree {n}: {e}")))?
            } else if rhs.is_zero() {
                ModuleMap::zero(ring, source, GradedFreeModule::zero())
            } else {
                return Err(AlgebraError::LiftFailed(alloc::format!("associator is nonzero in degree {n}")));
            };
            out.push(h);
            prev_index = triples.into_iter().enumerate().map(|(k, t)| (t, k)).collect();
        }
        Ok(out)
    }
}

/// `δ(x⊗y⊗z)` with Koszul signs.
fn triple_differential(f: &FreeComplex, t: &[Slot; 3]) -> Vec<(Polynomial, [Slot; 3])> {
    let mut out = Vec::new();
    let mut parity = 0;
    for pos in 0..3 {
        let s = t[pos];
        if s.0 >= 1 {
            let d = f.differential(s.0);
            for k in 0..d.rows() {
                let c = d.entry(k, s.1);
                if !c.is_zero() {
                    let mut u = *t;
                    u[pos] = (s.0 - 1, k);
                    out.push((if parity % 2 == 1 { c.neg() } else { c.clone() }, u));
                }
            }
        }
        parity += s.0;
    }
    out
}

/// Builds `β` degree by degree: `β_0` from the product of the algebra,
/// `β_n(e_0 g) = g`, and the remaining columns lifted through `d_n`.
pub fn build_multiplication(a: &AlgebraOverS, res: &Resolution) -> Result<MultiplicativeStructure> {
    let f = res.complex().clone();
    let ring = f.ring().clone();
    let aug = res.augmentation();
    if aug.source() != a.generators() {
        return Err(AlgebraError::ShapeMismatch("resolution does not present the algebra's module".into()));
    }
    let r = a.generators().rank();
    let table = match a.products() {
        Some(t) => t.clone(),
        None => derive_products(a.presentation())?,
    };
    if (0..r).any(|k| table[0][k] != FreeModuleElement::basis(&ring, r, k)) {
        return Err(AlgebraError::NoRingStructure("e_0 does not act as the identity".into()));
    }
    let new_rank = f.module(0).rank();
    if new_rank == 0 || f.module(0).degree(0) != 0 || aug.column(0) != FreeModuleElement::basis(&ring, new_rank, 0) {
        return Err(AlgebraError::ShapeMismatch("the unit generator was not kept in F_0".into()));
    }
    let old: Vec<usize> = (0..new_rank)
        .map(|k| {
            let e = FreeModuleElement::basis(&ring, new_rank, k);
            (0..r).find(|&j| aug.column(j) == e).expect("kept generators map to basis vectors")
        })
        .collect();

    let sym = sym_square(&f);
    let mut beta: Vec<ModuleMap> = Vec::new();
    let columns: Vec<FreeModuleElement> =
        sym.basis(0).iter().map(|p| aug.apply(&table[old[p.left.1]][old[p.right.1]])).collect();
    beta.push(ModuleMap::from_columns(&ring, sym.module(0).clone(), f.module(0), &columns)?);
    for n in 1..=f.length() {
        let rhs = beta[n - 1].compose(sym.differential(n))?;
        let rest: Vec<usize> = (0..sym.basis(n).len()).filter(|&k| sym.basis(n)[k].left != (0, 0)).collect();
        let rows: Vec<usize> = (0..rhs.rows()).collect();
        let lifted = Lifter::new(f.differential(n))
            .lift(&rhs.submatrix(&rows, &rest))
            .map_err(|e| AlgebraError::LiftFailed(alloc::format!("β_{n}: {e}")))?;
        let rank = f.module(n).rank();
        let columns: Vec<FreeModuleElement> = sym
            .basis(n)
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if p.left == (0, 0) {
                    FreeModuleElement::basis(&ring, rank, p.right.1)
                } else {
                    let pos = rest.iter().position(|&q| q == k).expect("lifted column");
                    lifted.column(pos)
                }
            })
            .collect();
        beta.push(ModuleMap::from_columns(&ring, sym.module(n).clone(), f.module(n), &columns)?);
    }
    let mult = MultiplicativeStructure { complex: f, sym, beta };
    if !mult.check_unit() {
        return Err(AlgebraError::LiftFailed("unit law fails".into()));
    }
    if !mult.check_leibniz() {
        return Err(AlgebraError::LiftFailed("Leibniz rule fails".into()));
    }
    Ok(mult)
}
