//! One line per acceptance criterion. A criterion may print FAIL only when its
//! literal statement is reproducibly false and the corrected statement holds;
//! anything else makes the run fail.

use std::process::ExitCode;

use gorenstein_cli::corpus::{self, CaseReport, Params, Verdict};
use gorenstein_core::pfaffian::{determinant, pfaffian, SkewMatrix};
use gorenstein_core::{Field, GradedRing, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    number: u8,
    title: &'static str,
    passed: bool,
    /// For a FAIL: the facts that must hold for the failure to be a known
    /// discrepancy rather than a defect.
    explained: Option<(bool, &'static str)>,
}

fn holds(r: &CaseReport, keys: &[&str]) -> bool {
    r.error.is_none() && keys.iter().all(|k| r.get(k).is_some_and(|e| e.holds()))
}

fn discrepancies(r: &CaseReport, keys: &[&str]) -> bool {
    keys.iter().all(|k| r.get(k).is_some_and(|e| e.verdict() == Verdict::KnownDiscrepancy))
}

/// `pf(A)^2 = det(A)` for random integer skew matrices of size up to 6.
fn pfaffian_squares() -> bool {
    let names: Vec<String> = (0..4).map(|i| format!("z{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = GradedRing::standard(&refs, Field::default()).unwrap().into_arc();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..24).all(|k| {
        let n = 2 * (k % 3 + 1);
        let upper: Vec<Polynomial> = (0..n * (n - 1) / 2)
            .map(|_| {
                let v = rng.random_range(0..4);
                Polynomial::var(&ring, v).scale(&ring.field().from_i64(rng.random_range(-9..=9)))
            })
            .collect();
        let a = SkewMatrix::from_upper(&ring, n, &upper).unwrap();
        pfaffian(&a).pow(2) == determinant(&ring, a.entries())
    })
}

fn main() -> ExitCode {
    let params = Params::committed();
    let reports = corpus::run_all(&params);
    let case = |name: &str| reports.iter().find(|r| r.name == name).expect("corpus case");
    let certified: Vec<&CaseReport> = reports.iter().filter(|r| r.get("transcript").is_some()).collect();
    let averaged: Vec<&CaseReport> = reports.iter().filter(|r| r.get("averaging-agrees").is_some()).collect();

    let printed = case("genus6-curve-printed");
    let surface = case("surface-k2-6");
    let lines = [
        Line {
            number: 1,
            title: "genus 6 curve over T: Betti table T, T(-2)^6, T(-3)^5 + T(-4)^5, T(-5)^6, T(-7)",
            passed: holds(case("genus6-curve-ambient"), &["betti"]),
            explained: None,
        },
        Line {
            number: 2,
            title: "genus 6 curve over S: Betti table, alternating middle map, twist -6",
            passed: holds(case("genus6-curve"), &["generators", "betti", "codimension", "twist", "alternating"]),
            explained: None,
        },
        Line {
            number: 3,
            title: "displayed curve differentials: d1 d2 = 0, d2 alternating, certificate granted",
            passed: holds(printed, &["printed-d1-d2", "printed-alternating", "printed-certificate"]),
            explained: Some((
                discrepancies(printed, &["printed-d1-d2", "printed-certificate"])
                    && holds(printed, &["printed-alternating", "corrected-d1-d2", "corrected-certificate", "transcript"]),
                "the displayed d1 d2 is nonzero; negating the last column of d1 gives a complex certified with c = 3, m = 1, t = -6",
            )),
        },
        Line {
            number: 4,
            title: "surface: rank condition with controls, relations a12 + a22 x0 and x0^2 - c2 x0 + c4",
            passed: holds(surface, &["rank-condition", "rank-condition-control", "linear-relation", "printed-quadric"]),
            explained: Some((
                discrepancies(surface, &["printed-quadric"])
                    && holds(surface, &["rank-condition", "rank-condition-control", "linear-relation", "relation-ideal"]),
                "x0^2 - c2 x0 + c4 is not a relation; the relations generate (a12 + a22 x0, x0^2 + c2 x0 - c4)",
            )),
        },
        Line {
            number: 5,
            title: "complete intersection: alternating 3x3 middle map whose Pfaffians generate the ideal",
            passed: holds(case("complete-intersection"), &["codimension", "alternating", "pfaffians"]),
            explained: None,
        },
        Line {
            number: 6,
            title: "properties on every corpus case: transcript checks, Betti palindromes, Euler identity; pf^2 = det",
            passed: certified.len() == 5
                && certified.iter().all(|r| holds(r, &["transcript", "betti-palindrome"]))
                && reports.iter().filter(|r| r.get("hilbert-euler").is_some()).count() == 5
                && reports.iter().all(|r| r.get("hilbert-euler").is_none_or(|e| e.holds()))
                && pfaffian_squares(),
            explained: None,
        },
        Line {
            number: 7,
            title: "averaging and multiplication certify with the same Betti table and sign",
            passed: averaged.len() == 4 && averaged.iter().all(|r| holds(r, &["averaging-agrees"])),
            explained: None,
        },
        Line {
            number: 8,
            title: "negative controls: perturbed middle map and the double cover are refused",
            passed: holds(case("perturbed-middle-map"), &["refused"]) && holds(case("double-cover"), &["birational", "refused"]),
            explained: None,
        },
        Line {
            number: 9,
            title: "Godeaux shape: weights (2, 2, 3, 3, 3, 3) and twist -17 are degree-consistent",
            passed: holds(case("godeaux-shape"), &["weights", "plurigenera", "shape-twist", "shape-palindrome"]),
            explained: None,
        },
    ];

    let mut defects = 0;
    for line in &lines {
        if line.passed {
            println!("criterion {}: PASS  {}", line.number, line.title);
            continue;
        }
        match line.explained {
            Some((true, why)) => println!("criterion {}: FAIL  {} ({why})", line.number, line.title),
            _ => {
                defects += 1;
                println!("criterion {}: FAIL  {} (unexplained)", line.number, line.title);
            }
        }
    }
    let failing: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
    if !failing.is_empty() {
        defects += 1;
        println!("corpus cases failing: {}", failing.join(", "));
    }
    if defects == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
