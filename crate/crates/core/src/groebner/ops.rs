//! Syzygies, lifts and ideal operations, all through the graph module
//! `{(M e_j, e_j)} ⊂ G ⊕ F` under a block order in which `G` dominates.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{GroebnerBasis, PositionOrder};
use crate::complexes::{FreeModuleElement, GradedFreeModule, ModuleMap};
use crate::error::{AlgebraError, Result};
use crate::poly::Polynomial;
use crate::ring::GradedRing;

/// A Gröbner basis of the graph of a map, reusable for many lifts.
#[derive(Clone, Debug)]
pub struct Lifter {
    map: ModuleMap,
    graph: GroebnerBasis,
}

impl Lifter {
    pub fn new(map: &ModuleMap) -> Self {
        let ring = map.ring();
        let r = map.rows();
        let n = map.cols();
        let module = map.target().direct_sum(map.source());
        let gens: Vec<FreeModuleElement> = (0..n)
            .map(|j| {
                let mut entries = map.column(j).into_entries();
                entries.extend((0..n).map(|k| if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }));
                FreeModuleElement::new(entries)
            })
            .collect();
        let graph = GroebnerBasis::submodule(ring, &module, &gens, PositionOrder::Block { split: r })
            .expect("graph module generators have matching length");
        Lifter { map: map.clone(), graph }
    }

    pub fn map(&self) -> &ModuleMap {
        &self.map
    }

    /// Some `X` with `M X = B`, or the first column of `B` outside the image.
    pub fn lift(&self, b: &ModuleMap) -> Result<ModuleMap> {
        if b.target() != self.map.target() {
            return Err(AlgebraError::IncompatibleModule("lift target differs from map target".into()));
        }
        let ring = self.map.ring();
        let (r, n) = (self.map.rows(), self.map.cols());
        let mut columns = Vec::with_capacity(b.cols());
        for k in 0..b.cols() {
            let mut entries = b.column(k).into_entries();
            entries.extend(core::iter::repeat_with(|| Polynomial::zero(ring)).take(n));
            let nf = self.graph.normal_form(&FreeModuleElement::new(entries))?.into_entries();
            if nf[..r].iter().any(|p| !p.is_zero()) {
                return Err(AlgebraError::NotInImage { column: k });
            }
            columns.push(FreeModuleElement::new(nf[r..].iter().map(Polynomial::neg).collect()));
        }
        let x = ModuleMap::from_columns(ring, b.source().clone(), self.map.source().clone(), &columns)?;
        if !self.map.compose(&x)?.same_matrix(b) {
            return Err(AlgebraError::LiftFailed("lifted map does not reproduce the target".into()));
        }
        Ok(x)
    }

    /// Generators of the kernel (a Gröbner basis of it, not yet minimal).
    pub fn kernel_basis(&self) -> Vec<FreeModuleElement> {
        let r = self.map.rows();
        self.graph
            .generators()
            .into_iter()
            .filter(|g| g.entries()[..r].iter().all(Polynomial::is_zero))
            .map(|g| FreeModuleElement::new(g.into_entries().split_off(r)))
            .collect()
    }

    /// Minimal generators of the kernel as the columns of a map into the source.
    pub fn kernel(&self) -> ModuleMap {
        let ring = self.map.ring();
        let source = self.map.source();
        let basis = self.kernel_basis();
        let degrees: Vec<i32> = basis.iter().map(|v| v.degree_in(source).expect("homogeneous kernel element")).collect();
        let all = ModuleMap::from_columns(ring, GradedFreeModule::new(degrees), source.clone(), &basis)
            .expect("kernel elements are homogeneous");
        minimal_generators(&all)
    }
}

/// Homogeneous generators of `ker M`, minimal, as columns of `N` with `M N = 0`.
pub fn syzygies(map: &ModuleMap) -> ModuleMap {
    Lifter::new(map).kernel()
}

/// Some homogeneous `X` with `M X = B`; errors with `NotInImage` otherwise.
pub fn lift_through(map: &ModuleMap, b: &ModuleMap) -> Result<ModuleMap> {
    Lifter::new(map).lift(b)
}

/// A minimal generating subset of the columns (zero columns dropped).
pub fn minimal_generators(map: &ModuleMap) -> ModuleMap {
    let (_, kept) = GroebnerBasis::with_minimal_generators(map.ring(), map.target(), &map.columns(), PositionOrder::Top)
        .expect("columns match the target");
    let rows: Vec<usize> = (0..map.rows()).collect();
    map.submatrix(&rows, &kept)
}

/// Same ideal, decided by comparing reduced Gröbner bases.
pub fn ideal_equal(ring: &Arc<GradedRing>, a: &[Polynomial], b: &[Polynomial]) -> bool {
    GroebnerBasis::ideal(ring, a) == GroebnerBasis::ideal(ring, b)
}

fn row(ring: &Arc<GradedRing>, entries: Vec<Polynomial>) -> Result<ModuleMap> {
    let source: Result<Vec<i32>> = entries
        .iter()
        .map(|p| if p.is_zero() { Ok(0) } else { p.degree().ok_or(AlgebraError::NotHomogeneous { row: 0, col: 0 }) })
        .collect();
    ModuleMap::new(ring, GradedFreeModule::new(source?), GradedFreeModule::new(alloc::vec![0]), alloc::vec![entries])
}

/// `(I : f)` for homogeneous generators of `I` and homogeneous `f`.
pub fn colon(ring: &Arc<GradedRing>, ideal: &[Polynomial], f: &Polynomial) -> Result<GroebnerBasis> {
    let mut entries = alloc::vec![f.clone()];
    entries.extend(ideal.iter().cloned());
    let kernel = syzygies(&row(ring, entries)?);
    let first: Vec<Polynomial> = (0..kernel.cols()).map(|j| kernel.entry(0, j).clone()).collect();
    Ok(GroebnerBasis::ideal(ring, &first))
}

/// `ann_S(coker P)`, as `{f : f e_j ∈ im P for all j}`.
///
/// Solves `f e_j = P x_j` for all `j` at once as the kernel of a single map
/// `S ⊕ F_1^r → F_0^r` and keeps the first coordinate.
pub fn annihilator(presentation: &ModuleMap) -> GroebnerBasis {
    let ring = presentation.ring();
    let f0 = presentation.target();
    let f1 = presentation.source();
    let r = f0.rank();
    let n = f1.rank();
    // Block j of the target is F_0 twisted so that f e_j has the degree of f.
    let mut target_degrees = Vec::with_capacity(r * r);
    let mut source_degrees = alloc::vec![0];
    for j in 0..r {
        target_degrees.extend(f0.degrees().iter().map(|g| g - f0.degree(j)));
    }
    for j in 0..r {
        source_degrees.extend(f1.degrees().iter().map(|h| h - f0.degree(j)));
    }
    let mut m = ModuleMap::zero(ring, GradedFreeModule::new(source_degrees), GradedFreeModule::new(target_degrees));
    for j in 0..r {
        m.set_entry(j * r + j, 0, Polynomial::one(ring));
        for k in 0..r {
            for l in 0..n {
                m.set_entry(j * r + k, 1 + j * n + l, presentation.entry(k, l).neg());
            }
        }
    }
    let lifter = Lifter::new(&m);
    let gens: Vec<Polynomial> = lifter.kernel_basis().iter().map(|v| v.entries()[0].clone()).collect();
    GroebnerBasis::ideal(ring, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_poly;

    fn ring() -> Arc<GradedRing> {
        GradedRing::standard(&["x", "y", "z"], Field::default()).unwrap().into_arc()
    }

    fn p(r: &Arc<GradedRing>, s: &str) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring();
        let m = row(&r, alloc::vec![p(&r, "x"), p(&r, "y")]).unwrap();
        let n = syzygies(&m);
        assert_eq!(n.cols(), 1);
        assert!(m.compose(&n).unwrap().is_zero());
        let col = n.column(0).into_entries();
        assert!(col == alloc::vec![p(&r, "y"), p(&r, "-x")] || col == alloc::vec![p(&r, "-y"), p(&r, "x")]);
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = ring();
        let m = row(&r, alloc::vec![p(&r, "x^2 + y*z")]).unwrap();
        assert_eq!(syzygies(&m).cols(), 0);
    }

    #[test]
    fn lift_of_sum_of_squares() {
        let r = ring();
        let m = row(&r, alloc::vec![p(&r, "x"), p(&r, "y")]).unwrap();
        let b = row(&r, alloc::vec![p(&r, "x^2 + y^2")]).unwrap();
        let x = lift_through(&m, &b).unwrap();
        assert!(m.compose(&x).unwrap().same_matrix(&b));
        let outside = row(&r, alloc::vec![p(&r, "z")]).unwrap();
        assert_eq!(lift_through(&m, &outside).unwrap_err(), AlgebraError::NotInImage { column: 0 });
    }

    #[test]
    fn ideals_and_annihilators() {
        let r = ring();
        assert!(ideal_equal(&r, &[p(&r, "x"), p(&r, "y")], &[p(&r, "y"), p(&r, "x + y")]));
        assert!(!ideal_equal(&r, &[p(&r, "x")], &[p(&r, "y")]));
        let f = GradedFreeModule::new(alloc::vec![0]);
        let times_x = ModuleMap::new(&r, f.shifted(1), f, alloc::vec![alloc::vec![p(&r, "x")]]).unwrap();
        assert_eq!(annihilator(&times_x).polynomials(), alloc::vec![p(&r, "x")]);
        let c = colon(&r, &[p(&r, "x*y"), p(&r, "x*z")], &p(&r, "x")).unwrap();
        assert_eq!(c, GroebnerBasis::ideal(&r, &[p(&r, "y"), p(&r, "z")]));
    }
}
