use std::collections::BTreeMap;
use std::sync::Arc;

use gorenstein_cli::corpus::{self, Params};
use gorenstein_cli::job::{Input, Job};
use gorenstein_core::groebner::GroebnerBasis;
use gorenstein_core::ring::MAX_VARS;
use gorenstein_core::{parse_poly, render, GradedRing, Monomial, Polynomial};

const P: i64 = 31991;

/// Every polynomial of every corpus job, with its ring.
fn corpus_inputs() -> Vec<(String, Arc<GradedRing>, Input)> {
    let params = Params::committed();
    let mut out = Vec::new();
    for name in corpus::names() {
        let report = corpus::run(name, &params).unwrap();
        for (label, text) in &report.jobs {
            let job = Job::parse(text).unwrap();
            let ring = job.ring(None).unwrap();
            out.push((format!("{name}/{label}"), ring.clone(), job.input(&ring).unwrap()));
        }
    }
    out
}

fn polynomials(input: &Input) -> Vec<Polynomial> {
    match input {
        Input::Ideal(gens) | Input::Algebra { ideal: gens, .. } => gens.clone(),
        Input::Matrix(m) => m.entries().iter().flatten().cloned().collect(),
        Input::Skew { matrix, .. } => matrix.entries().iter().flatten().cloned().collect(),
        Input::Complex(f) => f.differentials().iter().flat_map(|d| d.entries().iter().flatten().cloned()).collect(),
    }
}

#[test]
fn rendered_corpus_polynomials_parse_back() {
    let inputs = corpus_inputs();
    assert_eq!(inputs.len(), 11);
    for (label, ring, input) in &inputs {
        for p in polynomials(input) {
            let text = render(&p);
            assert_eq!(parse_poly(&text, ring).unwrap(), p, "{label}: {text}");
        }
    }
}

fn to_mod_p(p: &Polynomial) -> Vec<(Monomial, i64)> {
    p.terms().iter().map(|(m, c)| (*m, c.to_signed_string().parse::<i64>().unwrap().rem_euclid(P))).collect()
}

fn inverse(a: i64) -> i64 {
    let (mut base, mut e, mut acc) = (a, P - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    acc
}

/// `dim (S/I)_d` as the number of monomials minus the rank of all products
/// `m g` of degree `d`, by sparse elimination mod `P`.
fn brute_force_dimension(ring: &Arc<GradedRing>, gens: &[Polynomial], d: i32) -> i64 {
    let basis = ring.monomials_of_degree(d);
    let index: BTreeMap<[u16; MAX_VARS], usize> = basis.iter().enumerate().map(|(i, m)| (*m.exponents(), i)).collect();
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        if dg > d {
            continue;
        }
        let terms = to_mod_p(g);
        for m in ring.monomials_of_degree(d - dg) {
            let mut row: BTreeMap<usize, i64> = terms.iter().map(|(t, c)| (index[t.mul(&m).exponents()], *c)).collect();
            while let Some((&col, &c)) = row.iter().next() {
                let Some(pivot) = pivots.get(&col) else {
                    let inv = inverse(c);
                    row.values_mut().for_each(|v| *v = *v * inv % P);
                    pivots.insert(col, row);
                    break;
                };
                for (&k, &v) in pivot {
                    let e = row.entry(k).or_insert(0);
                    *e = (*e - c * v).rem_euclid(P);
                    if *e == 0 {
                        row.remove(&k);
                    }
                }
            }
        }
    }
    (basis.len() - pivots.len()) as i64
}

#[test]
fn hilbert_functions_of_corpus_ideals_match_brute_force() {
    for (label, ring, input) in corpus_inputs() {
        let (Input::Ideal(gens) | Input::Algebra { ideal: gens, .. }) = input else { continue };
        let top = 10;
        let series = GroebnerBasis::ideal(&ring, &gens).hilbert_series().coefficients(0, top);
        let brute: Vec<i64> = (0..=top).map(|d| brute_force_dimension(&ring, &gens, d)).collect();
        assert_eq!(series, brute, "{label}");
    }
}

#[test]
fn every_oracle_reference_resolves() {
    let params = Params::committed();
    for report in corpus::run_all(&params) {
        for e in &report.expectations {
            assert!(e.origin.is_traceable(), "{}: {} cites a missing oracle", report.name, e.key);
        }
    }
}

#[test]
fn seeded_choices_are_reproducible_and_general() {
    let a = Params::from_seed(11).unwrap();
    assert_eq!(a, Params::from_seed(11).unwrap());
    assert_ne!(a, Params::committed());
    let report = corpus::run("genus6-curve", &a).unwrap();
    assert!(report.passed(), "{:?}", report.to_json(&a, false));
}
