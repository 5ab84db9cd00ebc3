use std::sync::Arc;

use gorenstein_core::complexes::{betti, homology_is_zero, resolve as resolve_module, FreeModuleElement, GradedFreeModule, ModuleMap};
use gorenstein_core::gorenstein::{
    build_multiplication, check_diamond_partial, check_perfect, codimension, symmetrize_by_averaging,
    symmetrize_with_multiplication, verify_symmetric_resolution, AlgebraOverS, DiamondCheck, GorensteinCertificate,
    MultiplicativeStructure,
};
use gorenstein_core::pfaffian::{
    buchsbaum_eisenbud_complex, check_rank_condition, finite_algebra_presentation, pfaffian, recover_algebra_relations,
    submaximal_pfaffians, RelationKind,
};
use gorenstein_core::{GradedRing, Polynomial};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::job::{Input, Job};
use crate::report;

pub const DEFAULT_MAX_LENGTH: usize = 20;

/// Flags that override the job's `[options]`.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub field: Option<String>,
    pub twist: Option<i32>,
    pub max_length: Option<usize>,
    /// Include differentials and duality maps in the output.
    pub dump: bool,
    /// Build the symmetric resolution by averaging a comparison map.
    pub averaging: bool,
}

/// JSON for stdout and a one-line summary for stderr.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
}

struct Prepared {
    ring: Arc<GradedRing>,
    input: Input,
    twist: Option<i32>,
    max_length: usize,
}

fn prepare(job: &Job, s: &Settings) -> CliResult<Prepared> {
    let ring = job.ring(s.field.as_deref())?;
    let input = job.input(&ring)?;
    Ok(Prepared {
        ring,
        input,
        twist: s.twist.or(job.spec.options.twist),
        max_length: s.max_length.or(job.spec.options.max_length).unwrap_or(DEFAULT_MAX_LENGTH),
    })
}

fn cyclic(ring: &Arc<GradedRing>, gens: &[Polynomial]) -> CliResult<ModuleMap> {
    let cols: Vec<FreeModuleElement> = gens.iter().map(|g| FreeModuleElement::new(vec![g.clone()])).collect();
    ModuleMap::from_columns_infer(ring, GradedFreeModule::new(vec![0]), &cols, 0).map_err(|e| CliError::Input(e.to_string()))
}

/// The algebra an input describes, over its base ring.
fn algebra(p: &Prepared) -> CliResult<AlgebraOverS> {
    let from = |m: ModuleMap| AlgebraOverS::from_presentation(m).map_err(|e| CliError::Input(e.to_string()));
    match &p.input {
        Input::Ideal(gens) => from(cyclic(&p.ring, gens)?),
        Input::Matrix(m) => from(m.clone()),
        Input::Skew { matrix, .. } => {
            let pf = submaximal_pfaffians(matrix).map_err(|e| CliError::Input(format!("[skew]: {e}")))?;
            from(cyclic(&p.ring, &pf)?)
        }
        Input::Algebra { ideal, base_vars } => Ok(finite_algebra_presentation(&p.ring, ideal, base_vars)?),
        Input::Complex(f) => from(f.differential_or_zero(1)),
    }
}

pub fn resolve(job: &Job, s: &Settings) -> CliResult<Outcome> {
    let p = prepare(job, s)?;
    if matches!(p.input, Input::Complex(_)) {
        return Err(CliError::Input("resolve takes an [ideal], [matrix], [skew] or [algebra] block".into()));
    }
    let alg = algebra(&p)?;
    let res = resolve_module(alg.presentation(), p.max_length)?;
    let table = betti(res.complex());
    let mut body = json!({
        "input": p.input.kind(),
        "ring": report::ring(alg.base()),
        "generators": { "names": alg.generator_names(), "degrees": alg.generators().degrees() },
        "minimal": res.is_minimal(),
        "betti": report::betti(&table),
    });
    if s.dump {
        body["complex"] = report::complex(res.complex());
    }
    let ranks: Vec<String> = (0..=res.length()).map(|i| res.complex().module(i).rank().to_string()).collect();
    let summary = format!("resolved over {} variables: ranks {}", alg.base().nvars(), ranks.join(", "));
    Ok(Outcome { json: report::envelope("resolve", body), summary })
}

fn diamond(a: &AlgebraOverS) -> Value {
    match check_diamond_partial(a) {
        DiamondCheck::Verified => json!({ "status": "verified" }),
        DiamondCheck::Unknown(reason) => json!({ "status": "unknown", "reason": reason }),
    }
}

/// Relations are recovered when the algebra has generators beyond the unit, all of positive degree.
fn has_extra_generators(alg: &AlgebraOverS) -> bool {
    let degrees = alg.generators().degrees();
    degrees.len() > 1 && degrees[1..].iter().all(|&d| d > 0)
}

fn relations_with(
    cert: &GorensteinCertificate,
    mult: &MultiplicativeStructure,
    alg: &AlgebraOverS,
) -> CliResult<Value> {
    let rels = recover_algebra_relations(cert, mult, alg.generator_names())?;
    let list: Vec<Value> = rels
        .relations()
        .iter()
        .map(|r| {
            let kind = match r.kind {
                RelationKind::Linear { column } => json!({ "linear": column }),
                RelationKind::Quadratic { left, right } => json!({ "quadratic": [left, right] }),
            };
            json!({ "kind": kind, "polynomial": report::poly(&r.polynomial) })
        })
        .collect();
    Ok(json!({ "ring": report::ring(rels.ring()), "relations": list, "hilbert_matches": rels.hilbert_matches() }))
}

fn check_twist(expected: Option<i32>, found: i32) -> CliResult<()> {
    match expected {
        Some(t) if t != found => Err(CliError::check("TwistMismatch", format!("requested twist {t}, found {found}"))),
        _ => Ok(()),
    }
}

fn certificate_summary(cert: &GorensteinCertificate) -> String {
    let middle = cert.middle();
    let kind = if cert.sign() < 0 { "alternating" } else { "symmetric" };
    let passed = cert.transcript.checks.iter().filter(|(_, ok)| *ok).count();
    format!(
        "certified: codimension {}, twist {}, {kind} {}x{} middle map, {passed}/{} checks passed",
        cert.codimension,
        cert.twist,
        middle.rows(),
        middle.cols(),
        cert.transcript.checks.len()
    )
}

pub fn certify(job: &Job, s: &Settings) -> CliResult<Outcome> {
    let p = prepare(job, s)?;
    let alg = algebra(&p)?;
    if let Input::Complex(f) = &p.input {
        let cert = verify_symmetric_resolution(&alg, f)?;
        check_twist(p.twist, cert.twist)?;
        let body = json!({
            "input": "complex",
            "method": "verification",
            "ring": report::ring(&p.ring),
            "certificate": report::certificate(&cert, s.dump),
        });
        return Ok(Outcome { json: report::envelope("certify", body), summary: certificate_summary(&cert) });
    }
    let res = resolve_module(alg.presentation(), p.max_length)?;
    let codim = codimension(&alg)?;
    let perfect = check_perfect(&alg, &res);
    let (cert, rels) = if s.averaging {
        let cert = symmetrize_by_averaging(&alg, &res)?;
        // Averaging keeps F_0, so the product on the input resolution applies.
        let rels = if has_extra_generators(&alg) {
            Some(relations_with(&cert, &build_multiplication(&alg, &res)?, &alg)?)
        } else {
            None
        };
        (cert, rels)
    } else {
        let (cert, mult) = symmetrize_with_multiplication(&alg, &res)?;
        let rels = if has_extra_generators(&alg) {
            Some(relations_with(&cert, &mult, &alg)?)
        } else {
            None
        };
        (cert, rels)
    };
    check_twist(p.twist, cert.twist)?;
    let mut body = json!({
        "input": p.input.kind(),
        "method": if s.averaging { "averaging" } else { "multiplication" },
        "ring": report::ring(alg.base()),
        "generators": { "names": alg.generator_names(), "degrees": alg.generators().degrees() },
        "codimension": codim,
        "perfect": perfect,
        "birational": diamond(&alg),
        "resolution_betti": report::betti(&betti(res.complex())),
        "certificate": report::certificate(&cert, s.dump),
    });
    if let Some(r) = rels {
        body["relations"] = r;
    }
    Ok(Outcome { json: report::envelope("certify", body), summary: certificate_summary(&cert) })
}

pub fn pfaffians(job: &Job, s: &Settings) -> CliResult<Outcome> {
    let p = prepare(job, s)?;
    let Input::Skew { matrix, degrees } = &p.input else {
        return Err(CliError::Input("pfaffian takes a [skew] block".into()));
    };
    let n = matrix.size();
    if n % 2 == 0 {
        let pf = pfaffian(matrix);
        let summary = format!("Pfaffian of a {n}x{n} matrix: {} terms", pf.len());
        return Ok(Outcome { json: report::envelope("pfaffian", json!({ "size": n, "pfaffian": report::poly(&pf) })), summary });
    }
    let pf = submaximal_pfaffians(matrix)?;
    let f = buchsbaum_eisenbud_complex(matrix, degrees.clone())?;
    let exact = f.is_complex() && (1..=f.length()).all(|i| homology_is_zero(&f, i));
    let mut body = json!({
        "size": n,
        "submaximal_pfaffians": report::polys(&pf),
        "complex_betti": report::betti(&betti(&f)),
        "is_complex": f.is_complex(),
        "exact": exact,
    });
    if s.dump {
        body["complex"] = report::complex(&f);
    }
    let summary = format!("{n} submaximal Pfaffians; the complex is {}", if exact { "exact" } else { "not exact" });
    Ok(Outcome { json: report::envelope("pfaffian", body), summary })
}

pub fn rank_condition(job: &Job, s: &Settings) -> CliResult<Outcome> {
    let p = prepare(job, s)?;
    let Input::Matrix(m) = &p.input else {
        return Err(CliError::Input("rank-condition takes a [matrix] block".into()));
    };
    let rc = check_rank_condition(m);
    let body = json!({
        "holds": rc.holds,
        "minors": report::polys(&rc.minors),
        "minors_without_first_row": report::polys(&rc.minors_without_first_row),
    });
    let summary = format!("rank condition {}", if rc.holds { "holds" } else { "fails" });
    Ok(Outcome { json: report::envelope("rank-condition", body), summary })
}
