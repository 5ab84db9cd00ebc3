use alloc::string::String;
use alloc::vec::Vec;

use super::checks::{check_perfect, codimension};
use super::multiplication::{build_multiplication, MultiplicativeStructure};
use super::AlgebraOverS;
use crate::complexes::{
    betti, dualize, homology_is_zero, lift_map, BettiTable, FreeComplex, FreeModuleElement, ModuleMap,
    Resolution,
};
use crate::error::{AlgebraError, Result};
use crate::groebner::{GroebnerBasis, PositionOrder};
use crate::poly::Polynomial;

/// Which checks ran and how they came out.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    pub field: String,
    pub checks: Vec<(String, bool)>,
}

impl Transcript {
    fn new(field: String) -> Self {
        Transcript { field, checks: Vec::new() }
    }

    fn record(&mut self, name: &str, ok: bool) -> bool {
        self.checks.push((name.into(), ok));
        ok
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// `σ` and the maps `t_i: F_i -> F_{c-i}^*(t)`, `t_i(a)(b) = σ(μ(a⊗b))`.
#[derive(Clone, Debug)]
pub struct DualityMaps {
    pub twist: i32,
    pub sigma: FreeModuleElement,
    pub maps: Vec<ModuleMap>,
}

/// A resolution `F_0 <- ... <- F_m <- F_m^*(t) <- ... <- F_0^*(t)` whose middle
/// map satisfies `d^* = (-1)^m d`, with the data that produced it.
#[derive(Clone, Debug)]
pub struct GorensteinCertificate {
    pub codimension: usize,
    pub twist: i32,
    pub sigma: Option<FreeModuleElement>,
    /// `t_i: F_i -> F_{c-i}^*(t)` identifying the resolution with its dual.
    pub duality_maps: Vec<ModuleMap>,
    pub complex: FreeComplex,
    pub transcript: Transcript,
}

impl GorensteinCertificate {
    pub fn half(&self) -> usize {
        (self.codimension - 1) / 2
    }

    /// `(-1)^m`.
    pub fn sign(&self) -> i32 {
        if self.half().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn middle(&self) -> &ModuleMap {
        self.complex.differential(self.half() + 1)
    }

    pub fn betti(&self) -> BettiTable {
        betti(&self.complex)
    }
}

/// The integer `t` with `F_{c-i}^*(t) ≅ F_i` degree-wise for all `i`.
pub fn find_twist(f: &FreeComplex) -> Result<i32> {
    let c = f.length();
    let (first, last) = (f.module(0), f.module(c));
    let (Some(low), Some(high)) = (first.degrees().iter().min(), last.degrees().iter().max()) else {
        return Err(AlgebraError::NoTwistExists);
    };
    let t = -low - high;
    let palindromic = (0..=c).all(|i| f.module(c - i).dual(t).sorted_degrees() == f.module(i).sorted_degrees());
    if palindromic {
        Ok(t)
    } else {
        Err(AlgebraError::NoTwistExists)
    }
}

/// `t_i` for a functional `σ` on `F_c`.
fn maps_for(mult: &MultiplicativeStructure, twist: i32, sigma: &FreeModuleElement) -> Result<Vec<ModuleMap>> {
    let f = mult.complex();
    let ring = f.ring();
    let c = f.length();
    (0..=c)
        .map(|i| {
            let target = f.module(c - i).dual(twist);
            let columns: Vec<FreeModuleElement> = (0..f.module(i).rank())
                .map(|a| {
                    FreeModuleElement::new(
                        (0..target.rank())
                            .map(|b| {
                                let v = mult.product((i, a), (c - i, b));
                                v.entries()
                                    .iter()
                                    .zip(sigma.entries())
                                    .fold(Polynomial::zero(ring), |acc, (p, s)| acc.add(&p.mul(s)))
                            })
                            .collect(),
                    )
                })
                .collect();
            ModuleMap::from_columns(ring, f.module(i), target, &columns)
        })
        .collect()
}

/// Degree-zero functionals on `F_c`: a basis of the candidates for `σ`.
fn sigma_candidates(f: &FreeComplex, twist: i32) -> Vec<FreeModuleElement> {
    let ring = f.ring();
    let dual = f.module(f.length()).dual(twist);
    let mut out = Vec::new();
    for k in 0..dual.rank() {
        for m in ring.monomials_of_degree(-dual.degree(k)) {
            let mut v = alloc::vec![Polynomial::zero(ring); dual.rank()];
            v[k] = Polynomial::term(ring, m, ring.field().one());
            out.push(FreeModuleElement::new(v));
        }
    }
    out
}

/// Chooses `σ` as the first candidate (basis vectors, then their sum with
/// weights `1, 2, 3, ...`) making `t_0` invertible.
pub fn duality_maps(mult: &MultiplicativeStructure, twist: i32) -> Result<DualityMaps> {
    let f = mult.complex();
    let c = f.length();
    if c.is_multiple_of(2) {
        return Err(AlgebraError::OddCodimRequired(c));
    }
    let ring = f.ring();
    let mut candidates = sigma_candidates(f, twist);
    if candidates.len() > 1 {
        let combined = candidates.iter().enumerate().fold(FreeModuleElement::zero(ring, candidates[0].rank()), |acc, (k, v)| {
            acc.add(&v.scale(&Polynomial::from_i64(ring, k as i64 + 1)))
        });
        candidates.push(combined);
    }
    for sigma in candidates {
        let maps = maps_for(mult, twist, &sigma)?;
        if !maps[0].is_invertible() {
            continue;
        }
        if let Some(i) = (0..=c).find(|&i| !maps[i].is_invertible()) {
            return Err(AlgebraError::TNotInvertible { index: i });
        }
        return Ok(DualityMaps { twist, sigma, maps });
    }
    Err(AlgebraError::NotGorenstein("no degree-zero functional identifies R with its dual".into()))
}

/// Records `t_0(e_0) = σ`, `t_{i-1} d_i = (-1)^{i+1} d^*_i t_i`, the middle
/// identity and `t_{c-i} = t_i^*`.
pub fn check_duality_identities(f: &FreeComplex, dm: &DualityMaps, transcript: &mut Transcript) -> bool {
    let ring = f.ring();
    let c = f.length();
    let m = (c - 1) / 2;
    let t = &dm.maps;
    let dual = dualize(f, dm.twist);
    let mut ok = transcript.record("t_0(e_0) = sigma", t[0].column(0) == dm.sigma);
    let mut chain = true;
    for i in 1..=c {
        let left = t[i - 1].compose(f.differential(i));
        let right = dual.differential(i).compose(&t[i]).map(|r| r.scale(&ring.field().from_i64(if i % 2 == 1 { 1 } else { -1 })));
        chain &= matches!((left, right), (Ok(l), Ok(r)) if l.same_matrix(&r));
    }
    ok &= transcript.record("t_{i-1} d_i = (-1)^{i+1} d_i^* t_i", chain);
    let middle = t[m].compose(f.differential(m + 1)).ok().zip(
        f.differential(m + 1)
            .transpose(dm.twist)
            .compose(&t[m + 1])
            .ok()
            .map(|r| r.scale(&ring.field().from_i64(if m.is_multiple_of(2) { 1 } else { -1 }))),
    );
    ok &= transcript.record("t_m d_{m+1} = (-1)^m d_{m+1}^* t_{m+1}", middle.is_some_and(|(l, r)| l.same_matrix(&r)));
    let transposes = (0..=c).all(|i| {
        let tr = t[i].transpose(dm.twist);
        tr.same_matrix(&t[c - i]) && tr.source() == t[c - i].source() && tr.target() == t[c - i].target()
    });
    ok &= transcript.record("t_{c-i} = t_i^*", transposes);
    ok
}

/// `F_0 <- ... <- F_m <-middle- F_m^*(t) <- d_m^* ... <- F_0^*(t)`.
fn symmetric_complex(f: &FreeComplex, twist: i32, middle: ModuleMap) -> Result<FreeComplex> {
    let c = f.length();
    let m = (c - 1) / 2;
    let mut maps: Vec<ModuleMap> = (1..=m).map(|i| f.differential(i).clone()).collect();
    maps.push(middle);
    for p in m + 2..=c {
        maps.push(f.differential(c - p + 1).transpose(twist));
    }
    FreeComplex::new(f.ring(), f.module(0), maps)
}

fn half_sign(m: usize) -> i32 {
    if m.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Records the symmetry, exactness, minimality and Betti checks on a
/// symmetrized complex.
fn check_symmetric(original: &FreeComplex, sym: &FreeComplex, transcript: &mut Transcript) -> Result<()> {
    let c = sym.length();
    let m = (c - 1) / 2;
    let sign = half_sign(m);
    let middle = sym.differential(m + 1);
    let symmetric = middle.is_symmetric_with_sign(sign) && (sign > 0 || middle.is_alternating());
    transcript.record("middle map (-1)^m-symmetric", symmetric);
    if !symmetric {
        return Err(AlgebraError::MiddleMapNotSymmetric { sign });
    }
    let exact = (1..=c).all(|i| homology_is_zero(sym, i));
    transcript.record("symmetric complex exact", exact);
    transcript.record("symmetric complex minimal", sym.is_minimal());
    transcript.record("Betti table unchanged", betti(sym) == betti(original));
    if !transcript.all_passed() {
        return Err(AlgebraError::LiftFailed("symmetrized complex failed a check".into()));
    }
    Ok(())
}

struct Prepared {
    c: usize,
    twist: i32,
    mult: MultiplicativeStructure,
    dm: DualityMaps,
    transcript: Transcript,
}

fn prepare(a: &AlgebraOverS, res: &Resolution) -> Result<Prepared> {
    let mut transcript = Transcript::new(a.base().field().tag());
    let c = codimension(a)?;
    if !transcript.record("perfect", check_perfect(a, res)) {
        return Err(AlgebraError::NotGorenstein("the module is not perfect".into()));
    }
    if c % 2 == 0 {
        return Err(AlgebraError::OddCodimRequired(c));
    }
    let twist = find_twist(res.complex())?;
    transcript.record("palindromic Betti table", betti(res.complex()).is_palindromic(c, twist));
    let mult = build_multiplication(a, res)?;
    transcript.record("Leibniz", mult.check_leibniz());
    transcript.record("unit", mult.check_unit());
    transcript.record("graded commutativity", mult.check_commutative());
    let dm = duality_maps(&mult, twist)?;
    transcript.record("t_i invertible", dm.maps.iter().all(ModuleMap::is_invertible));
    if !check_duality_identities(res.complex(), &dm, &mut transcript) {
        return Err(AlgebraError::LiftFailed("duality maps fail the sign identities".into()));
    }
    Ok(Prepared { c, twist, mult, dm, transcript })
}

/// Replaces the upper half of the resolution by its dual, joined by
/// `d̃ = d_{m+1} t_{m+1}^{-1}`.
pub fn symmetrize(a: &AlgebraOverS, res: &Resolution) -> Result<GorensteinCertificate> {
    symmetrize_with_multiplication(a, res).map(|(cert, _)| cert)
}

/// [`symmetrize`], also returning the multiplication it was built from.
pub fn symmetrize_with_multiplication(
    a: &AlgebraOverS,
    res: &Resolution,
) -> Result<(GorensteinCertificate, MultiplicativeStructure)> {
    let Prepared { c, twist, mult, dm, mut transcript } = prepare(a, res)?;
    let f = res.complex();
    let m = (c - 1) / 2;
    let inverse = dm.maps[m + 1].inverse().ok_or(AlgebraError::TNotInvertible { index: m + 1 })?;
    let middle = f.differential(m + 1).compose(&inverse)?;
    let sym = symmetric_complex(f, twist, middle)?;
    check_symmetric(f, &sym, &mut transcript)?;
    let cert = GorensteinCertificate {
        codimension: c,
        twist,
        sigma: Some(dm.sigma),
        duality_maps: dm.maps,
        complex: sym,
        transcript,
    };
    Ok((cert, mult))
}

/// The same construction with `v = (ψ + (-1)^m ψ^∨) / 2` in place of `t^{-1}`,
/// where `ψ` lifts `t_0^{-1}` along the dual complex.
pub fn symmetrize_by_averaging(a: &AlgebraOverS, res: &Resolution) -> Result<GorensteinCertificate> {
    let Prepared { c, twist, mult: _, dm, mut transcript } = prepare(a, res)?;
    let f = res.complex();
    let ring = f.ring();
    let m = (c - 1) / 2;
    let dual = dualize(f, twist);
    let psi0 = dm.maps[0].inverse().ok_or(AlgebraError::TNotInvertible { index: 0 })?;
    let psi = lift_map(&psi0, &dual, f)?;
    let half = ring.field().from_i64(2).inv().expect("characteristic is not 2");
    let eps = ring.field().from_i64(half_sign(m) as i64);
    let averaged: Vec<ModuleMap> = (0..=c)
        .map(|i| {
            let flipped = psi.component(c - i).transpose(twist).scale(&eps);
            psi.component(i).add(&flipped).map(|s| s.scale(&half))
        })
        .collect::<Result<_>>()?;
    if !averaged.iter().all(ModuleMap::is_invertible) {
        return Err(AlgebraError::AveragedMapNotInvertible);
    }
    let middle = f.differential(m + 1).compose(&averaged[m + 1])?;
    let sym = symmetric_complex(f, twist, middle)?;
    check_symmetric(f, &sym, &mut transcript)?;
    let maps = averaged.iter().map(|v| v.inverse().expect("checked invertible")).collect();
    Ok(GorensteinCertificate { codimension: c, twist, sigma: Some(dm.sigma), duality_maps: maps, complex: sym, transcript })
}

/// Certifies a complex already of the symmetric shape: the outer modules are
/// dual, the middle map is `(-1)^m`-symmetric, both it and its dual are exact,
/// and the comparison of the dual with the complex is an isomorphism.
pub fn verify_symmetric_resolution(a: &AlgebraOverS, f: &FreeComplex) -> Result<GorensteinCertificate> {
    let ring = f.ring();
    let mut transcript = Transcript::new(ring.field().tag());
    let c = f.length();
    if c.is_multiple_of(2) {
        return Err(AlgebraError::OddCodimRequired(c));
    }
    let m = (c - 1) / 2;
    let (first, last) = (f.module(0), f.module(c));
    if first.rank() == 0 || last.rank() == 0 {
        return Err(AlgebraError::ShapeMismatch("empty end module".into()));
    }
    let twist = -first.degree(0) - last.degree(0);
    let shape = (0..=c).all(|i| f.module(c - i) == f.module(i).dual(twist));
    transcript.record("palindromic shape", shape);
    if !shape {
        return Err(AlgebraError::ShapeMismatch("F_{c-i} is not F_i^*(t)".into()));
    }
    if first != *a.generators() || !same_image(a.presentation(), f.differential(1))? {
        return Err(AlgebraError::ShapeMismatch("d_1 does not present the algebra's module".into()));
    }
    let sign = half_sign(m);
    let middle = f.differential(m + 1);
    let symmetric = middle.is_symmetric_with_sign(sign) && (sign > 0 || middle.is_alternating());
    transcript.record("middle map (-1)^m-symmetric", symmetric);
    if !symmetric {
        return Err(AlgebraError::MiddleMapNotSymmetric { sign });
    }
    if !transcript.record("d d = 0", f.is_complex()) {
        return Err(AlgebraError::ShapeMismatch("consecutive maps do not compose to zero".into()));
    }
    if let Some(i) = (1..=c).find(|&i| !homology_is_zero(f, i)) {
        transcript.record("complex exact", false);
        return Err(AlgebraError::ShapeMismatch(alloc::format!("not a resolution: homology at position {i}")));
    }
    transcript.record("complex exact", true);
    let dual = dualize(f, twist);
    if let Some(i) = (1..=c).find(|&i| !homology_is_zero(&dual, i)) {
        transcript.record("dual complex exact", false);
        return Err(AlgebraError::DualNotExact { position: i });
    }
    transcript.record("dual complex exact", true);
    let identity = ModuleMap::identity(ring, &first).with_modules(dual.module(0), first.clone())?;
    let u = lift_map(&identity, &dual, f).map_err(|e| AlgebraError::NotGorenstein(alloc::format!("comparison map: {e}")))?;
    let invertible = (0..=c).all(|i| u.component(i).is_invertible());
    transcript.record("comparison map invertible", invertible);
    if !invertible {
        return Err(AlgebraError::NotGorenstein("comparison map is not an isomorphism".into()));
    }
    let maps = (0..=c).map(|i| u.component(i).inverse().expect("checked invertible")).collect();
    Ok(GorensteinCertificate { codimension: c, twist, sigma: None, duality_maps: maps, complex: f.clone(), transcript })
}

/// Whether two maps into the same free module have the same image.
fn same_image(a: &ModuleMap, b: &ModuleMap) -> Result<bool> {
    let ring = a.ring();
    let ga = GroebnerBasis::submodule(ring, a.target(), &a.columns(), PositionOrder::Top)?;
    let gb = GroebnerBasis::submodule(ring, b.target(), &b.columns(), PositionOrder::Top)?;
    Ok(ga == gb)
}
