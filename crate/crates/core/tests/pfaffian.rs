mod common;

use std::sync::Arc;

use common::{leibniz_det, poly, polys, ring, weighted};
use gorenstein_core::complexes::{betti, homology_is_zero, resolve, BettiTable, FreeModuleElement, GradedFreeModule, ModuleMap};
use gorenstein_core::gorenstein::{check_diamond_partial, codimension, symmetrize, symmetrize_with_multiplication, DiamondCheck, AlgebraOverS};
use gorenstein_core::groebner::ideal_equal;
use gorenstein_core::pfaffian::*;
use gorenstein_core::{AlgebraError, GradedRing, Polynomial};
use proptest::prelude::*;

fn generic_skew(n: usize) -> (Arc<GradedRing>, SkewMatrix) {
    let names: Vec<String> = (0..n * (n - 1) / 2).map(|k| format!("a{k}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let r = ring(&refs);
    let upper: Vec<Polynomial> = (0..refs.len()).map(|k| Polynomial::var(&r, k)).collect();
    let m = SkewMatrix::from_upper(&r, n, &upper).unwrap();
    (r, m)
}

#[test]
fn generic_five_by_five_complex_is_exact() {
    let (_, m) = generic_skew(5);
    let f = buchsbaum_eisenbud_complex(&m, None).unwrap();
    assert!(f.is_complex());
    assert_eq!(f.ranks(), vec![1, 5, 5, 1]);
    assert_eq!(betti(&f), BettiTable::from_degrees(&[&[0], &[2; 5], &[3; 5], &[5]]));
    assert!((1..=3).all(|i| homology_is_zero(&f, i)));
}

#[test]
fn degenerate_matrix_gives_an_inexact_complex() {
    let r = ring(&["x", "y", "z"]);
    // The last row vanishes, so only one Pfaffian survives.
    let upper = polys(&r, &["x", "y", "z", "0", "x", "y", "0", "z", "0", "0"]);
    let m = SkewMatrix::from_upper(&r, 5, &upper).unwrap();
    let f = buchsbaum_eisenbud_complex(&m, Some((vec![2; 5], -5))).unwrap();
    assert!(f.is_complex());
    assert!(!(1..=3).all(|i| homology_is_zero(&f, i)));
}

#[test]
fn even_size_has_no_submaximal_pfaffians() {
    let (_, m) = generic_skew(4);
    assert!(submaximal_pfaffians(&m).is_err());
}

/// Each upper entry is a sum of terms `c * x^i * y^j` given as `(i, j, c)`.
type SparseEntries = Vec<Vec<(u16, u16, i64)>>;

fn skew_strategy() -> impl Strategy<Value = (usize, SparseEntries)> {
    (1usize..=6).prop_flat_map(|n| {
        let entries = n * (n - 1) / 2;
        (Just(n), prop::collection::vec(prop::collection::vec((0u16..2, 0u16..2, -4i64..=4), 0..3), entries))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pfaffian_squares_to_the_determinant((n, entries) in skew_strategy()) {
        let r = ring(&["x", "y"]);
        let field = r.field();
        let upper: Vec<Polynomial> = entries
            .iter()
            .map(|terms| {
                Polynomial::from_terms(&r, terms.iter().map(|&(a, b, c)| (r.monomial(&[a, b]).unwrap(), field.from_i64(c))).collect())
            })
            .collect();
        let m = SkewMatrix::from_upper(&r, n, &upper).unwrap();
        let pf = pfaffian(&m);
        let det = leibniz_det(&r, m.entries());
        prop_assert_eq!(pf.mul(&pf), det.clone());
        prop_assert_eq!(determinant(&r, m.entries()), det);
        if n % 2 == 1 {
            prop_assert!(pf.is_zero());
        }
    }
}

#[test]
fn pushforward_of_a_square_root() {
    // deg x = 2, deg y = 1: k[x, y] / (y^2 - x) is free over k[x] on 1, y.
    let t = weighted(&["x", "y"], &[2, 1]);
    let alg = finite_algebra_presentation(&t, &[poly(&t, "y^2-x")], &[0]).unwrap();
    assert_eq!(alg.generators().degrees(), &[0, 1]);
    assert_eq!(alg.presentation().cols(), 0);
    let s = alg.base();
    let products = alg.products().unwrap();
    assert_eq!(products[1][1], FreeModuleElement::new(vec![poly(s, "x"), Polynomial::zero(s)]));
    assert_eq!(products[0][1], FreeModuleElement::basis(s, 2, 1));

    let nilpotent = finite_algebra_presentation(&t, &[poly(&t, "y^2")], &[0]).unwrap();
    assert!(nilpotent.products().unwrap()[1][1].is_zero());
}

#[test]
fn pushforward_rejects_infinite_extensions() {
    let t = ring(&["x", "y"]);
    let err = finite_algebra_presentation(&t, &[poly(&t, "x*y")], &[0]).unwrap_err();
    assert!(matches!(err, AlgebraError::NotFiniteOverS(_)), "{err:?}");
}

#[test]
fn curve_pushforward_has_the_expected_resolution() {
    let (t, ideal) = common::canonical_curve();
    let res = resolve(&common::cyclic(&t, &ideal), 8).unwrap();
    assert_eq!(
        betti(res.complex()),
        BettiTable::from_degrees(&[&[0], &[2; 6], &[3, 3, 3, 3, 3, 4, 4, 4, 4, 4], &[5; 6], &[7]])
    );
    let alg = finite_algebra_presentation(&t, &ideal, &[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(alg.generators().degrees(), &[0, 1]);
    let res = resolve(alg.presentation(), 8).unwrap();
    assert_eq!(
        betti(res.complex()),
        BettiTable::from_degrees(&[&[0, 1], &[2, 2, 2, 2, 2, 3], &[3, 4, 4, 4, 4, 4], &[5, 6]])
    );
    let cert = symmetrize(&alg, &res).unwrap();
    assert_eq!(cert.twist, -6);
    assert!(cert.middle().is_alternating());
    assert!(cert.transcript.all_passed());
}

struct Surface {
    ring: Arc<GradedRing>,
    c2: Polynomial,
    c4: Polynomial,
    a12: Polynomial,
    a22: Polynomial,
}

fn surface() -> Surface {
    let s = ring(&["u0", "u1", "u2", "u3"]);
    Surface {
        c2: poly(&s, "u0^2-3*u1*u2+u3^2+2*u0*u3"),
        c4: poly(&s, "u1^4+u0*u2^3-5*u3^4+u0^2*u1*u3"),
        a12: poly(&s, "u0^3+2*u1^2*u2-u2*u3^2+u1*u2*u3"),
        a22: poly(&s, "u0+3*u1-u2+2*u3"),
        ring: s,
    }
}

impl Surface {
    fn matrix(&self, a11: &Polynomial) -> ModuleMap {
        let rows = vec![vec![a11.clone(), self.a12.clone()], vec![self.a12.clone(), self.a22.clone()]];
        ModuleMap::new(&self.ring, GradedFreeModule::new(vec![5, 3]), GradedFreeModule::new(vec![0, 2]), rows).unwrap()
    }

    fn good(&self) -> Polynomial {
        self.c2.mul(&self.a12).add(&self.c4.mul(&self.a22))
    }
}

#[test]
fn rank_condition_detects_ring_structures() {
    let x = surface();
    assert!(check_rank_condition(&x.matrix(&x.good())).holds);
    let bad = x.good().add(&poly(&x.ring, "u1^5"));
    assert!(!check_rank_condition(&x.matrix(&bad)).holds);

    let alg = AlgebraOverS::from_presentation(x.matrix(&bad)).unwrap();
    let res = resolve(alg.presentation(), 4).unwrap();
    assert!(matches!(symmetrize(&alg, &res), Err(AlgebraError::NoRingStructure(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Invariant under rescaling rows and columns and swapping the columns.
    #[test]
    fn rank_condition_is_invariant_under_units(
        scales in prop::collection::vec(1i64..50, 4),
        swap in any::<bool>(),
        perturb in any::<bool>(),
    ) {
        let x = surface();
        let a11 = if perturb { x.good().add(&poly(&x.ring, "u1^5")) } else { x.good() };
        let d = x.matrix(&a11);
        let k = |i: usize| Polynomial::from_i64(&x.ring, scales[i]);
        let mut rows: Vec<Vec<Polynomial>> = d
            .entries()
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().enumerate().map(|(j, e)| e.mul(&k(i)).mul(&k(2 + j))).collect())
            .collect();
        let mut source = d.source().clone();
        if swap {
            for row in &mut rows {
                row.swap(0, 1);
            }
            source = GradedFreeModule::new(vec![3, 5]);
        }
        let moved = ModuleMap::new(&x.ring, source, d.target().clone(), rows).unwrap();
        prop_assert_eq!(check_rank_condition(&moved).holds, !perturb);
    }
}

#[test]
fn surface_relations_form_a_complete_intersection() {
    let x = surface();
    let alg = AlgebraOverS::from_presentation(x.matrix(&x.good())).unwrap();
    assert_eq!(codimension(&alg).unwrap(), 1);
    assert!(matches!(check_diamond_partial(&alg), DiamondCheck::Unknown(_)));
    let res = resolve(alg.presentation(), 4).unwrap();
    let (cert, mult) = symmetrize_with_multiplication(&alg, &res).unwrap();
    assert_eq!(cert.twist, -5);
    assert_eq!(cert.sign(), 1);
    assert!(cert.middle().is_symmetric_with_sign(1));

    let rels = recover_algebra_relations(&cert, &mult, &["1".into(), "x0".into()]).unwrap();
    assert!(rels.hilbert_matches());
    let ext = rels.ring();
    assert_eq!(ext.weights(), &[1, 1, 1, 1, 2]);
    let embed = |p: &Polynomial| p.map_to_ring(ext, &[Some(0), Some(1), Some(2), Some(3)]).unwrap();
    let x0 = poly(ext, "x0");
    let linear = embed(&x.a12).add(&embed(&x.a22).mul(&x0));
    // x0 = -a12 / a22 gives a22 x0^2 = c2 a12 + c4 a22 = -c2 a22 x0 + c4 a22.
    let quadric = x0.mul(&x0).add(&embed(&x.c2).mul(&x0)).sub(&embed(&x.c4));
    assert!(ideal_equal(ext, &rels.polynomials(), &[linear.clone(), quadric]));
    let sign_flipped = x0.mul(&x0).sub(&embed(&x.c2).mul(&x0)).add(&embed(&x.c4));
    assert!(!ideal_equal(ext, &rels.polynomials(), &[linear, sign_flipped]));
}
