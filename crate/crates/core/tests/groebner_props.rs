mod common;

use std::sync::Arc;

use common::{cyclic, poly, ring};
use gorenstein_core::complexes::{betti, hilbert_from_betti, homology_is_zero, resolve, FreeModuleElement};
use gorenstein_core::groebner::{ideal_equal, GroebnerBasis};
use gorenstein_core::{GradedRing, Polynomial};
use proptest::prelude::*;

fn homogeneous(r: &Arc<GradedRing>, degree: i32, coeffs: &[i64]) -> Polynomial {
    let field = r.field();
    let terms = r.monomials_of_degree(degree).into_iter().zip(coeffs.iter().cycle()).map(|(m, c)| (m, field.from_i64(*c))).collect();
    Polynomial::from_terms(r, terms)
}

/// Up to three homogeneous generators of degree 1..=3 in `x, y, z`.
fn ideal_strategy() -> impl Strategy<Value = Vec<(i32, Vec<i64>)>> {
    prop::collection::vec((1i32..=3, prop::collection::vec(-3i64..=3, 10)), 1..=3)
}

fn build_ideal(r: &Arc<GradedRing>, spec: &[(i32, Vec<i64>)]) -> Vec<Polynomial> {
    spec.iter().map(|(d, c)| homogeneous(r, *d, c)).filter(|p| !p.is_zero()).collect()
}

/// `x_i^{d_i}` plus terms in later variables only: lead terms are coprime
/// under lex, so the generators form a regular sequence.
fn regular_sequence(r: &Arc<GradedRing>, degrees: &[i32], coeffs: &[i64]) -> Vec<Polynomial> {
    let n = r.nvars();
    let field = r.field();
    let mut coeffs = coeffs.iter().cycle();
    degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut p = Polynomial::var(r, i).pow(d as u32);
            for m in r.monomials_of_degree(d) {
                if (0..=i).all(|k| m.exponent(k) == 0) && i + 1 < n {
                    p = p.add(&Polynomial::term(r, m, field.from_i64(*coeffs.next().unwrap())));
                }
            }
            p
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_idempotent_and_reduces_into_ideal(spec in ideal_strategy(), f in (1i32..=4, prop::collection::vec(-5i64..=5, 15))) {
        let r = ring(&["x", "y", "z"]);
        let gens = build_ideal(&r, &spec);
        let gb = GroebnerBasis::ideal(&r, &gens);
        prop_assert!(gb.is_groebner());
        prop_assert!(gb.is_reduced());
        let f = homogeneous(&r, f.0, &f.1);
        let nf = gb.reduce(&f);
        prop_assert_eq!(gb.reduce(&nf), nf.clone());
        prop_assert!(gb.contains(&FreeModuleElement::new(vec![f.sub(&nf)])).unwrap());
        for g in &gens {
            prop_assert!(gb.reduce(g).is_zero());
        }
        prop_assert!(ideal_equal(&r, &gens, &gb.polynomials()));
    }

    #[test]
    fn hilbert_series_matches_betti_alternating_sum(spec in ideal_strategy()) {
        let r = ring(&["x", "y", "z"]);
        let gens = build_ideal(&r, &spec);
        prop_assume!(!gens.is_empty());
        let res = resolve(&cyclic(&r, &gens), 8).unwrap();
        prop_assert!(res.is_minimal());
        for i in 1..=res.length() {
            prop_assert!(homology_is_zero(res.complex(), i));
        }
        let from_betti = hilbert_from_betti(&betti(res.complex()), &r);
        prop_assert!(GroebnerBasis::ideal(&r, &gens).hilbert_series().same_series(&from_betti));
    }

    #[test]
    fn complete_intersection_betti_tables_are_palindromic(
        degrees in prop::collection::vec(1i32..=3, 3),
        coeffs in prop::collection::vec(-4i64..=4, 12),
    ) {
        let r = ring(&["x", "y", "z"]);
        let gens = regular_sequence(&r, &degrees, &coeffs);
        let res = resolve(&cyclic(&r, &gens), 8).unwrap();
        let b = betti(res.complex());
        let total: i32 = degrees.iter().sum();
        prop_assert_eq!(b.length(), Some(3));
        prop_assert!(b.is_palindromic(3, -total));
        for ((i, j), n) in b.entries() {
            prop_assert_eq!(b.get(3 - i, total - j), n);
        }
        prop_assert_eq!((0..=3).map(|i| b.rank(i)).collect::<Vec<_>>(), vec![1, 3, 3, 1]);
    }
}

#[test]
fn weighted_hilbert_series() {
    let r = common::weighted(&["a", "b", "c"], &[1, 2, 3]);
    let gens = vec![poly(&r, "a^2*b + c*a + b^2 - a^4"), poly(&r, "c^2 - b^3")];
    let res = resolve(&cyclic(&r, &gens), 8).unwrap();
    let from_betti = hilbert_from_betti(&betti(res.complex()), &r);
    let gb = GroebnerBasis::ideal(&r, &gens);
    assert!(gb.hilbert_series().same_series(&from_betti));
    assert_eq!(gb.krull_dimension(), 1);
    // Numerator (1 - T^4)(1 - T^6): the scaled multiplicity is 4 * 6.
    assert_eq!(gb.hilbert_series().multiplicity(), 24);
}
