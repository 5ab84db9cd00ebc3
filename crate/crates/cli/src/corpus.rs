//! The example corpus. Each case writes its jobs as TOML, runs them through the
//! job parser and the library, and compares every expectation with what was
//! computed.

use std::sync::Arc;
use std::thread;

use gorenstein_core::complexes::{betti, hilbert_from_betti, resolve, BettiTable, FreeComplex, ModuleMap};
use gorenstein_core::gorenstein::{
    check_diamond_partial, codimension, find_twist, symmetrize_by_averaging, symmetrize_with_multiplication,
    verify_symmetric_resolution, AlgebraOverS, DiamondCheck, GorensteinCertificate,
};
use gorenstein_core::groebner::{ideal_equal, GroebnerBasis, PositionOrder};
use gorenstein_core::pfaffian::{
    check_rank_condition, finite_algebra_presentation, recover_algebra_relations, submaximal_pfaffians, SkewMatrix,
};
use gorenstein_core::{parse_poly, render, AlgebraError, GradedRing, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use toml::{Table, Value as TomlValue};

use crate::error::{kind_of, CliError, CliResult};
use crate::job::{Input, Job};
use crate::report;

const ORACLE_SOURCE: &str = include_str!("../tests/oracles.rs");
const MAX_LENGTH: usize = 10;
const MAX_REROLLS: usize = 32;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Stated in the published example.
    Published,
    /// Follows from the definitions with no computation worth recording.
    Elementary,
    /// Produced by the named test in `tests/oracles.rs`.
    Oracle(&'static str),
}

impl Origin {
    fn to_json(self) -> Value {
        match self {
            Origin::Published => json!({ "kind": "published" }),
            Origin::Elementary => json!({ "kind": "elementary" }),
            Origin::Oracle(test) => json!({ "kind": "oracle", "test": format!("tests/oracles.rs::{test}") }),
        }
    }

    /// Oracle references must name a test that exists.
    pub fn is_traceable(self) -> bool {
        match self {
            Origin::Oracle(test) => ORACLE_SOURCE.contains(&format!("fn {test}(")),
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A published statement that is reproducibly false as printed.
    KnownDiscrepancy,
}

impl Verdict {
    fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::KnownDiscrepancy => "known-discrepancy",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub key: &'static str,
    pub claim: String,
    pub origin: Origin,
    pub expected: Value,
    pub observed: Value,
    /// Set when the published statement is known not to hold as printed.
    pub discrepancy: bool,
}

impl Expectation {
    pub fn holds(&self) -> bool {
        self.expected == self.observed
    }

    pub fn verdict(&self) -> Verdict {
        match (self.holds(), self.discrepancy, self.origin.is_traceable()) {
            (_, _, false) => Verdict::Fail,
            (true, false, _) => Verdict::Pass,
            (false, true, _) => Verdict::KnownDiscrepancy,
            _ => Verdict::Fail,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "key": self.key,
            "claim": self.claim,
            "origin": self.origin.to_json(),
            "expected": self.expected,
            "observed": self.observed,
            "verdict": self.verdict().tag(),
        })
    }
}

/// The free choices in the examples: four linear forms and a quadric for the
/// curve, and the coefficients of the surface's presentation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub linear_forms: [String; 4],
    pub quadric: String,
    pub c2: String,
    pub c4: String,
    pub a12: String,
    pub a22: String,
    pub seed: Option<u64>,
    pub rerolls: usize,
}

impl Params {
    /// The committed choice.
    pub fn committed() -> Self {
        Params {
            linear_forms: ["3*x0-x1+2*x4", "x1+5*x2-x3", "2*x0+x3-7*x4", "x2-4*x1+x4"].map(String::from),
            quadric: "x0*x2-3*x1^2+x3*x4+2*x4^2-x0*x1".into(),
            c2: "u0^2-3*u1*u2+u3^2+2*u0*u3".into(),
            c4: "u1^4+u0*u2^3-5*u3^4+u0^2*u1*u3".into(),
            a12: "u0^3+2*u1^2*u2-u2*u3^2+u1*u2*u3".into(),
            a22: "u0+3*u1-u2+2*u3".into(),
            seed: None,
            rerolls: 0,
        }
    }

    /// A pseudorandom choice. Draws whose curve does not have the general
    /// Betti table, or whose surface matrix has a zero entry, are redrawn.
    pub fn from_seed(seed: u64) -> CliResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rerolls in 0..MAX_REROLLS {
            let x = ["x0", "x1", "x2", "x3", "x4"];
            let u = ["u0", "u1", "u2", "u3"];
            let params = Params {
                linear_forms: std::array::from_fn(|_| random_form(&mut rng, &x, 1, 1.0)),
                quadric: random_form(&mut rng, &x, 2, 0.5),
                c2: random_form(&mut rng, &u, 2, 0.5),
                c4: random_form(&mut rng, &u, 4, 0.15),
                a12: random_form(&mut rng, &u, 3, 0.25),
                a22: random_form(&mut rng, &u, 1, 1.0),
                seed: Some(seed),
                rerolls,
            };
            if params.is_general()? {
                return Ok(params);
            }
        }
        Err(CliError::check("DegenerateSeed", format!("seed {seed}: no general choice in {MAX_REROLLS} draws")))
    }

    fn is_general(&self) -> CliResult<bool> {
        if [&self.linear_forms[..], &[self.quadric.clone(), self.a12.clone(), self.a22.clone()]].concat().iter().any(|f| f == "0") {
            return Ok(false);
        }
        let job = Job::parse(&curve_ambient_job(self)?)?;
        let ring = job.ring(None)?;
        let Input::Ideal(ideal) = job.input(&ring)? else { unreachable!("ideal job") };
        let res = resolve(&cyclic(&ring, &ideal)?, MAX_LENGTH)?;
        Ok(betti(res.complex()) == curve_ambient_betti())
    }

    fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "rerolls": self.rerolls,
            "linear_forms": self.linear_forms,
            "quadric": self.quadric,
            "c2": self.c2,
            "c4": self.c4,
            "a12": self.a12,
            "a22": self.a22,
        })
    }
}

/// A form of the given degree with small integer coefficients; each monomial
/// is kept with probability `density`.
fn random_form(rng: &mut ChaCha8Rng, vars: &[&str], degree: u32, density: f64) -> String {
    let terms: Vec<String> = monomials(vars, degree)
        .into_iter()
        .filter_map(|m| {
            let keep = rng.random_bool(density);
            let c: i64 = rng.random_range(-5..=5);
            (keep && c != 0).then(|| format!("({c})*{m}"))
        })
        .collect();
    if terms.is_empty() {
        return "0".into();
    }
    let ring = GradedRing::standard(vars, gorenstein_core::Field::default()).expect("valid names").into_arc();
    render(&parse_poly(&terms.join("+"), &ring).expect("generated form parses"))
}

fn monomials(vars: &[&str], degree: u32) -> Vec<String> {
    if degree == 0 {
        return vec!["1".into()];
    }
    let mut out = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        for rest in monomials(&vars[i..], degree - 1) {
            out.push(if rest == "1" { v.to_string() } else { format!("{v}*{rest}") });
        }
    }
    out
}

/// A case report: its expectations, or the error that stopped it.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub name: &'static str,
    pub description: &'static str,
    pub jobs: Vec<(&'static str, String)>,
    pub expectations: Vec<Expectation>,
    pub error: Option<String>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.expectations.iter().all(|e| e.verdict() != Verdict::Fail)
    }

    pub fn get(&self, key: &str) -> Option<&Expectation> {
        self.expectations.iter().find(|e| e.key == key)
    }

    pub fn to_json(&self, params: &Params, with_jobs: bool) -> Value {
        let mut out = json!({
            "case": self.name,
            "description": self.description,
            "status": if self.passed() { "pass" } else { "fail" },
            "params": params.to_json(),
            "expectations": self.expectations.iter().map(Expectation::to_json).collect::<Vec<_>>(),
        });
        if let Some(e) = &self.error {
            out["error"] = e.clone().into();
        }
        if with_jobs {
            out["jobs"] = self.jobs.iter().map(|(label, text)| json!({ "label": label, "toml": text })).collect();
        }
        out
    }
}

struct Case<'a> {
    params: &'a Params,
    jobs: Vec<(&'static str, String)>,
    out: Vec<Expectation>,
}

impl Case<'_> {
    fn job(&mut self, label: &'static str, text: String) -> CliResult<(Arc<GradedRing>, Input)> {
        let job = Job::parse(&text)?;
        self.jobs.push((label, text));
        let ring = job.ring(None)?;
        let input = job.input(&ring)?;
        Ok((ring, input))
    }

    fn expect(&mut self, key: &'static str, claim: &str, origin: Origin, expected: impl Serialize, observed: impl Serialize) {
        self.push(key, claim, origin, expected, observed, false);
    }

    /// A published statement known not to hold as printed.
    fn misprint(&mut self, key: &'static str, claim: &str, expected: impl Serialize, observed: impl Serialize) {
        self.push(key, claim, Origin::Published, expected, observed, true);
    }

    fn push(&mut self, key: &'static str, claim: &str, origin: Origin, expected: impl Serialize, observed: impl Serialize, discrepancy: bool) {
        let expected = serde_json::to_value(expected).expect("serializable");
        let observed = serde_json::to_value(observed).expect("serializable");
        self.out.push(Expectation { key, claim: claim.into(), origin, expected, observed, discrepancy });
    }

    /// Hilbert series of the module against the alternating sum of its Betti numbers.
    fn euler(&mut self, presentation: &ModuleMap, table: &BettiTable) -> CliResult<()> {
        let ring = presentation.ring();
        let gb = GroebnerBasis::submodule(ring, presentation.target(), &presentation.columns(), PositionOrder::Top)?;
        let same = gb.hilbert_series().same_series(&hilbert_from_betti(table, ring));
        self.expect("hilbert-euler", "Hilbert series equals the alternating sum of the Betti numbers", Origin::Elementary, true, same);
        Ok(())
    }

    fn palindrome(&mut self, cert: &GorensteinCertificate) {
        let ok = cert.betti().is_palindromic(cert.codimension, cert.twist);
        self.expect("betti-palindrome", "betti(i, j) = betti(c - i, -t - j)", Origin::Elementary, true, ok);
    }

    fn transcript(&mut self, cert: &GorensteinCertificate) {
        let failed: Vec<&str> = cert.transcript.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
        self.expect("transcript", "every check in the certificate transcript passes", Origin::Elementary, Vec::<&str>::new(), failed);
    }

    /// Both constructions certify with the same Betti table and sign.
    fn averaging(&mut self, alg: &AlgebraOverS, res: &gorenstein_core::complexes::Resolution, cert: &GorensteinCertificate) {
        let observed = match symmetrize_by_averaging(alg, res) {
            Ok(avg) => json!({ "betti": report::betti(&avg.betti()), "sign": avg.sign(), "all_passed": avg.transcript.all_passed() }),
            Err(e) => json!({ "error": kind_of(&e) }),
        };
        let expected = json!({ "betti": report::betti(&cert.betti()), "sign": cert.sign(), "all_passed": true });
        self.expect("averaging-agrees", "averaging certifies with the same Betti table and sign", Origin::Elementary, expected, observed);
    }
}

type CaseFn = fn(&mut Case) -> CliResult<()>;

/// Name, description and body of every case, in report order.
const CASES: &[(&str, &str, CaseFn)] = &[
    ("koszul", "the residue field of k[x, y, z]", koszul),
    ("complete-intersection", "a complete intersection of three forms in k[x, y, z]", complete_intersection),
    ("genus6-curve-ambient", "a canonical curve of genus 6 resolved over k[x0..x4, y]", curve_ambient),
    ("genus6-curve", "the same curve as an algebra over k[x0..x4]", curve),
    ("genus6-curve-printed", "the displayed differentials of the curve, as printed and with the sign fixed", curve_printed),
    ("surface-k2-6", "a codimension 1 algebra of rank 2 with a symmetric 2x2 presentation", surface),
    ("godeaux-shape", "degree consistency of the Godeaux resolution shape", godeaux_shape),
    ("perturbed-middle-map", "negative control: one entry of the middle map changed", perturbed_middle_map),
    ("double-cover", "negative control: the double cover k[x0, x1, y]/(y^2 - x0^2)", double_cover),
];

pub fn names() -> Vec<&'static str> {
    CASES.iter().map(|(n, _, _)| *n).collect()
}

pub fn run(name: &str, params: &Params) -> CliResult<CaseReport> {
    let &(name, description, body) = CASES
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| CliError::Input(format!("unknown corpus case {name:?}; expected one of {}", names().join(", "))))?;
    let mut case = Case { params, jobs: Vec::new(), out: Vec::new() };
    let error = body(&mut case).err().map(|e| e.to_string());
    Ok(CaseReport { name, description, jobs: case.jobs, expectations: case.out, error })
}

/// Every case, each on its own thread; reports come back in `CASES` order.
pub fn run_all(params: &Params) -> Vec<CaseReport> {
    thread::scope(|scope| {
        let handles: Vec<_> = CASES.iter().map(|(name, _, _)| scope.spawn(move || run(name, params))).collect();
        handles.into_iter().map(|h| h.join().expect("corpus case panicked").expect("known case")).collect()
    })
}

fn cyclic(ring: &Arc<GradedRing>, gens: &[Polynomial]) -> CliResult<ModuleMap> {
    let cols: Vec<_> = gens.iter().map(|g| gorenstein_core::complexes::FreeModuleElement::new(vec![g.clone()])).collect();
    Ok(ModuleMap::from_columns_infer(ring, gorenstein_core::complexes::GradedFreeModule::new(vec![0]), &cols, 0)?)
}

fn strings(items: &[impl AsRef<str>]) -> TomlValue {
    TomlValue::Array(items.iter().map(|s| TomlValue::String(s.as_ref().into())).collect())
}

fn ints(items: &[i32]) -> TomlValue {
    TomlValue::Array(items.iter().map(|&d| TomlValue::Integer(d.into())).collect())
}

fn matrix(rows: &[Vec<String>]) -> TomlValue {
    TomlValue::Array(rows.iter().map(|r| strings(r)).collect())
}

fn ring_table(vars: &[&str], weights: Option<&[u32]>) -> TomlValue {
    let mut t = Table::new();
    t.insert("field".into(), "Fp:31991".into());
    t.insert("vars".into(), strings(vars));
    if let Some(w) = weights {
        t.insert("weights".into(), TomlValue::Array(w.iter().map(|&x| TomlValue::Integer(x.into())).collect()));
    }
    TomlValue::Table(t)
}

fn job_text(ring: TomlValue, block: &str, body: Table) -> String {
    let mut doc = Table::new();
    doc.insert("ring".into(), ring);
    doc.insert(block.into(), TomlValue::Table(body));
    toml::to_string(&doc).expect("tables serialize")
}

fn table(entries: impl IntoIterator<Item = (&'static str, TomlValue)>) -> Table {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn error_kind(e: &AlgebraError) -> Value {
    Value::String(kind_of(e))
}

fn koszul(c: &mut Case) -> CliResult<()> {
    let text = job_text(ring_table(&["x", "y", "z"], None), "ideal", table([("generators", strings(&["x", "y", "z"]))]));
    let (ring, input) = c.job("ideal", text)?;
    let Input::Ideal(gens) = input else { unreachable!() };
    let alg = AlgebraOverS::from_presentation(cyclic(&ring, &gens)?)?;
    let res = resolve(alg.presentation(), MAX_LENGTH)?;
    let table = betti(res.complex());
    c.expect("betti", "Betti table 1, 3, 3, 1", Origin::Elementary, report::betti(&BettiTable::from_degrees(&[&[0], &[1; 3], &[2; 3], &[3]])), report::betti(&table));
    c.euler(alg.presentation(), &table)?;
    let (cert, _) = symmetrize_with_multiplication(&alg, &res)?;
    c.expect("twist", "twist -3", Origin::Elementary, -3, cert.twist);
    c.expect("alternating", "alternating 3x3 middle map", Origin::Elementary, true, cert.middle().is_alternating());
    c.palindrome(&cert);
    c.transcript(&cert);
    c.averaging(&alg, &res, &cert);
    Ok(())
}

fn complete_intersection(c: &mut Case) -> CliResult<()> {
    let forms = ["x^2+y*z", "y^3-x*z^2", "z^4+x^3*y"];
    let text = job_text(ring_table(&["x", "y", "z"], None), "ideal", table([("generators", strings(&forms))]));
    let (ring, input) = c.job("ideal", text)?;
    let Input::Ideal(gens) = input else { unreachable!() };
    let alg = AlgebraOverS::from_presentation(cyclic(&ring, &gens)?)?;
    c.expect("codimension", "codimension 3", Origin::Elementary, 3, codimension(&alg)?);
    let res = resolve(alg.presentation(), MAX_LENGTH)?;
    let table = betti(res.complex());
    let koszul = BettiTable::from_degrees(&[&[0], &[2, 3, 4], &[5, 6, 7], &[9]]);
    c.expect("betti", "Koszul Betti table", Origin::Elementary, report::betti(&koszul), report::betti(&table));
    c.euler(alg.presentation(), &table)?;
    let (cert, _) = symmetrize_with_multiplication(&alg, &res)?;
    c.expect("twist", "twist -9, minus the sum of the degrees", Origin::Elementary, -9, cert.twist);
    c.expect("alternating", "alternating 3x3 middle map", Origin::Oracle("koszul_middle_map_is_alternating_and_exact_in_the_middle"), true, cert.middle().is_alternating());
    let middle = SkewMatrix::from_map(cert.middle())?;
    let pf = submaximal_pfaffians(&middle)?;
    c.expect(
        "pfaffians",
        "the submaximal Pfaffians of the middle map generate the ideal",
        Origin::Oracle("koszul_middle_map_is_alternating_and_exact_in_the_middle"),
        true,
        ideal_equal(&ring, &pf, &gens),
    );
    c.palindrome(&cert);
    c.transcript(&cert);
    c.averaging(&alg, &res, &cert);
    Ok(())
}

const CURVE_VARS: [&str; 6] = ["x0", "x1", "x2", "x3", "x4", "y"];

/// The Pfaffians of the del Pezzo matrix and `x4*y + q`, rendered.
fn curve_ideal(p: &Params) -> CliResult<Vec<String>> {
    let ring = GradedRing::standard(&CURVE_VARS, gorenstein_core::Field::default())?.into_arc();
    let l = &p.linear_forms;
    let upper: Vec<Polynomial> = ["y", &l[0], &l[2], "x0", &l[1], &l[3], "x1", "y", "x2", "x3"]
        .iter()
        .map(|e| parse_poly(e, &ring))
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Input(e.to_string()))?;
    let m = SkewMatrix::from_upper(&ring, 5, &upper)?;
    let mut ideal: Vec<String> = submaximal_pfaffians(&m)?.iter().map(render).collect();
    ideal.push(format!("x4*y+({})", p.quadric));
    Ok(ideal)
}

fn curve_ambient_job(p: &Params) -> CliResult<String> {
    Ok(job_text(ring_table(&CURVE_VARS, None), "ideal", table([("generators", strings(&curve_ideal(p)?))])))
}

fn curve_ambient_betti() -> BettiTable {
    BettiTable::from_degrees(&[&[0], &[2; 6], &[3, 3, 3, 3, 3, 4, 4, 4, 4, 4], &[5; 6], &[7]])
}

/// The Hilbert function of a canonical curve of genus 6, degrees 0 to 12.
fn curve_hilbert_function() -> Vec<i64> {
    (0..=12).map(|n| match n {
        0 => 1,
        1 => 6,
        n => 10 * n - 5,
    }).collect()
}

fn curve_ambient(c: &mut Case) -> CliResult<()> {
    let (ring, input) = c.job("ideal", curve_ambient_job(c.params)?)?;
    let Input::Ideal(ideal) = input else { unreachable!() };
    let presentation = cyclic(&ring, &ideal)?;
    let res = resolve(&presentation, MAX_LENGTH)?;
    let table = betti(res.complex());
    c.expect("betti", "Betti table T, T(-2)^6, T(-3)^5 + T(-4)^5, T(-5)^6, T(-7)", Origin::Published, report::betti(&curve_ambient_betti()), report::betti(&table));
    c.euler(&presentation, &table)?;
    let h = hilbert_from_betti(&table, &ring).coefficients(0, 12);
    c.expect("hilbert", "Hilbert function 1, 6 and 10n - 5 for n >= 2", Origin::Oracle("curve_hilbert_function_agrees_over_both_rings"), curve_hilbert_function(), h);
    Ok(())
}

fn curve(c: &mut Case) -> CliResult<()> {
    let body = table([("generators", strings(&curve_ideal(c.params)?)), ("base", strings(&CURVE_VARS[..5]))]);
    let (ring, input) = c.job("algebra", job_text(ring_table(&CURVE_VARS, None), "algebra", body))?;
    let Input::Algebra { ideal, base_vars } = input else { unreachable!() };
    let alg = finite_algebra_presentation(&ring, &ideal, &base_vars)?;
    c.expect("generators", "generated by 1 and y in degrees 0 and 1", Origin::Published, [0, 1], alg.generators().degrees());
    let res = resolve(alg.presentation(), MAX_LENGTH)?;
    let table = betti(res.complex());
    let expected = BettiTable::from_degrees(&[&[0, 1], &[2, 2, 2, 2, 2, 3], &[3, 4, 4, 4, 4, 4], &[5, 6]]);
    c.expect("betti", "S + S(-1) <- S(-2)^5 + S(-3) <- S(-4)^5 + S(-3) <- S(-5) + S(-6)", Origin::Published, report::betti(&expected), report::betti(&table));
    c.euler(alg.presentation(), &table)?;
    let h = hilbert_from_betti(&table, alg.base()).coefficients(0, 12);
    c.expect("hilbert", "the same Hilbert function as over the ambient ring", Origin::Oracle("curve_hilbert_function_agrees_over_both_rings"), curve_hilbert_function(), h);
    c.expect("codimension", "codimension 3", Origin::Published, 3, codimension(&alg)?);
    let (cert, _) = symmetrize_with_multiplication(&alg, &res)?;
    c.expect("twist", "twist -6", Origin::Published, -6, cert.twist);
    c.expect("alternating", "alternating middle map", Origin::Published, true, cert.middle().is_alternating());
    c.palindrome(&cert);
    c.transcript(&cert);
    c.averaging(&alg, &res, &cert);
    Ok(())
}

/// The displayed differentials `d1`, `d2` of the curve over `k[x0..x4]`,
/// with the linear forms and the quadric substituted in.
fn printed_differentials(p: &Params) -> (Vec<Vec<String>>, Vec<Vec<String>>) {
    let sub = |e: &str| {
        let mut e = e.to_string();
        for (i, l) in p.linear_forms.iter().enumerate() {
            e = e.replace(&format!("l{}", i + 1), &format!("({l})"));
        }
        e.replace('q', &format!("({})", p.quadric))
    };
    let d1 = [
        ["x3*l1-x2*l3", "x3*l2-x2*l4", "-x1*l1+x0*l2", "-x1*l3+x0*l4", "q", "x4*(l1*l4-l2*l3)"],
        ["x0", "x1", "x2", "x3", "x4", "q"],
    ]
    .map(|row| row.map(sub).to_vec())
    .to_vec();
    let upper = [
        "q", "-x4*l4", "x4*l2", "-x3*l2+x2*l4", "x1", "x4*l3", "-x4*l1", "x3*l1-x2*l3", "-x0", "q", "x1*l3-x0*l4",
        "x3", "-x1*l1+x0*l2", "-x2", "0",
    ];
    let mut d2 = vec![vec![String::from("0"); 6]; 6];
    let mut k = 0;
    for i in 0..6 {
        for j in i + 1..6 {
            d2[i][j] = sub(upper[k]);
            d2[j][i] = format!("-({})", sub(upper[k]));
            k += 1;
        }
    }
    (d1, d2)
}

fn complex_job(d1: &[Vec<String>], d2: &[Vec<String>]) -> String {
    let body = table([
        ("degrees", TomlValue::Array(vec![ints(&[0, 1]), ints(&[2, 2, 2, 2, 2, 3])])),
        ("twist", TomlValue::Integer(-6)),
        ("differentials", TomlValue::Array(vec![matrix(d1), matrix(d2)])),
    ]);
    job_text(ring_table(&CURVE_VARS[..5], None), "complex", body)
}

/// `d1` with its last column negated, the sign that makes `d1 d2 = 0`.
fn corrected(d1: &[Vec<String>]) -> Vec<Vec<String>> {
    d1.iter().map(|row| {
        let mut row = row.clone();
        row[5] = format!("-({})", row[5]);
        row
    }).collect()
}

fn first_two_compose(f: &FreeComplex) -> CliResult<bool> {
    Ok(f.differential(1).compose(f.differential(2))?.is_zero())
}

fn curve_printed(c: &mut Case) -> CliResult<()> {
    let (d1, d2) = printed_differentials(c.params);
    let (_, input) = c.job("printed", complex_job(&d1, &d2))?;
    let Input::Complex(printed) = input else { unreachable!() };
    c.misprint("printed-d1-d2", "the displayed d1 and d2 compose to zero", true, first_two_compose(&printed)?);
    c.expect("printed-alternating", "the displayed d2 is alternating", Origin::Published, true, printed.differential(2).is_alternating());
    let alg = AlgebraOverS::from_presentation(printed.differential(1).clone())?;
    let literal = verify_symmetric_resolution(&alg, &printed).map(|_| Value::from("certificate")).unwrap_or_else(|e| error_kind(&e));
    c.misprint("printed-certificate", "the displayed complex is certified", "certificate", literal);

    let (_, input) = c.job("corrected", complex_job(&corrected(&d1), &d2))?;
    let Input::Complex(fixed) = input else { unreachable!() };
    let oracle = Origin::Oracle("curve_matrices_compose_to_zero_after_negating_the_last_column");
    c.expect("corrected-d1-d2", "with the last column of d1 negated, d1 d2 = 0", oracle, true, first_two_compose(&fixed)?);
    let alg = AlgebraOverS::from_presentation(fixed.differential(1).clone())?;
    let cert = verify_symmetric_resolution(&alg, &fixed)?;
    let shape = json!({ "codimension": cert.codimension, "half": cert.half(), "twist": cert.twist, "alternating": cert.middle().is_alternating() });
    c.expect(
        "corrected-certificate",
        "the corrected complex is certified with c = 3, m = 1, t = -6 and an alternating middle map",
        Origin::Published,
        json!({ "codimension": 3, "half": 1, "twist": -6, "alternating": true }),
        shape,
    );
    c.transcript(&cert);
    c.palindrome(&cert);
    let presentation = fixed.differential(1);
    let gb = GroebnerBasis::submodule(presentation.ring(), presentation.target(), &presentation.columns(), PositionOrder::Top)?;
    c.expect(
        "corrected-hilbert",
        "the corrected d1 presents a module with the curve's Hilbert function",
        Origin::Oracle("curve_hilbert_function_agrees_over_both_rings"),
        curve_hilbert_function(),
        gb.hilbert_series().coefficients(0, 12),
    );
    Ok(())
}

const SURFACE_VARS: [&str; 4] = ["u0", "u1", "u2", "u3"];

fn surface_job(a11: &str, p: &Params) -> String {
    let rows = vec![vec![a11.to_string(), p.a12.clone()], vec![p.a12.clone(), p.a22.clone()]];
    let body = table([("rows", matrix(&rows)), ("target_degrees", ints(&[0, 2])), ("source_degrees", ints(&[5, 3]))]);
    job_text(ring_table(&SURFACE_VARS, None), "matrix", body)
}

fn surface(c: &mut Case) -> CliResult<()> {
    let p = c.params;
    let good = format!("({})*({})+({})*({})", p.c2, p.a12, p.c4, p.a22);
    let (_, input) = c.job("consistent", surface_job(&good, p))?;
    let Input::Matrix(d1) = input else { unreachable!() };
    c.expect("rank-condition", "the rank condition holds when a11 = c2 a12 + c4 a22", Origin::Published, true, check_rank_condition(&d1).holds);
    let (_, input) = c.job("perturbed", surface_job(&format!("{good}+u1^5"), p))?;
    let Input::Matrix(bad) = input else { unreachable!() };
    c.expect("rank-condition-control", "the rank condition fails for another a11", Origin::Published, false, check_rank_condition(&bad).holds);
    let bad_alg = AlgebraOverS::from_presentation(bad)?;
    let bad_res = resolve(bad_alg.presentation(), MAX_LENGTH)?;
    let refused = symmetrize_with_multiplication(&bad_alg, &bad_res).map(|_| Value::from("certificate")).unwrap_or_else(|e| error_kind(&e));
    c.expect("no-ring-structure", "no certificate without a ring structure", Origin::Elementary, "NoRingStructure", refused);

    let alg = AlgebraOverS::from_presentation(d1)?;
    c.expect("codimension", "codimension 1", Origin::Published, 1, codimension(&alg)?);
    let res = resolve(alg.presentation(), MAX_LENGTH)?;
    let table = betti(res.complex());
    c.euler(alg.presentation(), &table)?;
    let (cert, mult) = symmetrize_with_multiplication(&alg, &res)?;
    c.expect("twist", "twist -5", Origin::Elementary, -5, cert.twist);
    c.expect("symmetric", "symmetric 2x2 middle map", Origin::Published, true, cert.middle().is_symmetric_with_sign(1));
    c.palindrome(&cert);
    c.transcript(&cert);
    c.averaging(&alg, &res, &cert);

    let rels = recover_algebra_relations(&cert, &mult, alg.generator_names())?;
    c.expect("relations-hilbert", "the relations cut out a ring with the module's Hilbert series", Origin::Elementary, true, rels.hilbert_matches());
    let ext = rels.ring().clone();
    let found = rels.polynomials();
    let parse = |e: String| parse_poly(&e, &ext).map_err(|e| CliError::Input(e.to_string()));
    let linear = parse(format!("({})+({})*x0", p.a12, p.a22))?;
    let consistent = parse(format!("x0^2+({})*x0-({})", p.c2, p.c4))?;
    let printed = parse(format!("x0^2-({})*x0+({})", p.c2, p.c4))?;
    let contains = |f: &Polynomial| GroebnerBasis::ideal(&ext, &found).reduce(f).is_zero();
    c.expect("linear-relation", "a12 + a22 x0 is a relation", Origin::Published, true, contains(&linear));
    c.misprint("printed-quadric", "x0^2 - c2 x0 + c4 is a relation", true, contains(&printed));
    c.expect(
        "relation-ideal",
        "the relations generate (a12 + a22 x0, x0^2 + c2 x0 - c4)",
        Origin::Oracle("surface_quadric_clears_to_minus_the_determinant"),
        true,
        ideal_equal(&ext, &found, &[linear, consistent]),
    );
    Ok(())
}

/// Plurigenera of a numerical Godeaux surface: `P_0 = 1`, `P_1 = 0`, and
/// `1 + n(n - 1)/2` from `n = 2` on.
fn godeaux_plurigenera(to: usize) -> Vec<i64> {
    (0..=to as i64).map(|n| if n == 1 { 0 } else { 1 + n * (n - 1) / 2 }).collect()
}

fn godeaux_shape(c: &mut Case) -> CliResult<()> {
    let vars = ["x1", "x2", "y1", "y2", "y3", "y4"];
    let f0 = [0, 4, 4, 4, 4, 5, 5, 5];
    let f1: Vec<i32> = [(6, 6), (7, 12), (8, 8)].iter().flat_map(|&(d, n)| std::iter::repeat_n(d, n)).collect();
    let zeros = |r: usize, k: usize| vec![vec![String::from("0"); k]; r];
    let body = table([
        ("degrees", TomlValue::Array(vec![ints(&f0), ints(&f1)])),
        ("twist", TomlValue::Integer(-17)),
        ("differentials", TomlValue::Array(vec![matrix(&zeros(f0.len(), f1.len())), matrix(&zeros(f1.len(), f1.len()))])),
    ]);
    let text = job_text(ring_table(&vars, Some(&[2, 2, 3, 3, 3, 3])), "complex", body);
    let (ring, input) = c.job("shape", text)?;
    c.expect("weights", "the ring with weights 2, 2, 3, 3, 3, 3 is accepted", Origin::Published, [2, 2, 3, 3, 3, 3], ring.weights());
    let Input::Complex(shape) = input else { unreachable!() };
    let table = betti(&shape);
    let series = hilbert_from_betti(&table, &ring).coefficients(0, 30);
    c.expect(
        "plurigenera",
        "the sample Betti numbers reproduce the plurigenera",
        Origin::Oracle("godeaux_numerator_from_plurigenera"),
        godeaux_plurigenera(30),
        series,
    );
    c.expect("shape-twist", "F0 <- F1 <- F1^*(-17) <- F0^*(-17) has twist -17", Origin::Published, -17, find_twist(&shape)?);
    c.expect("shape-palindrome", "the shape is palindromic for codimension 3 and twist -17", Origin::Published, true, table.is_palindromic(3, -17));
    Ok(())
}

fn perturbed_middle_map(c: &mut Case) -> CliResult<()> {
    let (d1, mut d2) = printed_differentials(c.params);
    d2[0][1] = format!("{}+x0^2", d2[0][1]);
    let (_, input) = c.job("perturbed", complex_job(&corrected(&d1), &d2))?;
    let Input::Complex(f) = input else { unreachable!() };
    let alg = AlgebraOverS::from_presentation(f.differential(1).clone())?;
    let outcome = verify_symmetric_resolution(&alg, &f).map(|_| Value::from("certificate")).unwrap_or_else(|e| error_kind(&e));
    c.expect("refused", "a middle map that is not alternating is refused", Origin::Elementary, "MiddleMapNotSymmetric", outcome);
    Ok(())
}

fn double_cover(c: &mut Case) -> CliResult<()> {
    let body = table([("generators", strings(&["y^2-x0^2"])), ("base", strings(&["x0", "x1"]))]);
    let (ring, input) = c.job("algebra", job_text(ring_table(&["x0", "x1", "y"], None), "algebra", body))?;
    let Input::Algebra { ideal, base_vars } = input else { unreachable!() };
    let alg = finite_algebra_presentation(&ring, &ideal, &base_vars)?;
    let diamond = match check_diamond_partial(&alg) {
        DiamondCheck::Verified => "verified",
        DiamondCheck::Unknown(_) => "unknown",
    };
    c.expect("birational", "birationality is not certified", Origin::Elementary, "unknown", diamond);
    let res = resolve(alg.presentation(), MAX_LENGTH)?;
    let certified = symmetrize_with_multiplication(&alg, &res).is_ok();
    c.expect("refused", "no certificate is granted", Origin::Elementary, false, certified);
    Ok(())
}
