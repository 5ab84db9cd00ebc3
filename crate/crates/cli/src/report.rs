//! JSON renderings, schema `v1`. Keys are emitted in sorted order, so equal
//! inputs give byte-identical documents.

use gorenstein_core::complexes::{BettiTable, FreeComplex, FreeModuleElement, ModuleMap};
use gorenstein_core::gorenstein::GorensteinCertificate;
use gorenstein_core::{render, GradedRing, Polynomial};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "v1";

pub fn poly(p: &Polynomial) -> Value {
    Value::String(render(p))
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn vector(v: &FreeModuleElement) -> Value {
    polys(v.entries())
}

pub fn matrix(m: &ModuleMap) -> Value {
    json!({
        "source_degrees": m.source().degrees(),
        "target_degrees": m.target().degrees(),
        "rows": m.entries().iter().map(|r| polys(r)).collect::<Vec<_>>(),
    })
}

pub fn betti(b: &BettiTable) -> Value {
    let ranks: Vec<usize> = match b.length() {
        Some(l) => (0..=l).map(|i| b.rank(i)).collect(),
        None => Vec::new(),
    };
    let entries: Vec<Value> = b.entries().map(|((i, j), n)| json!({ "i": i, "j": j, "count": n })).collect();
    json!({ "length": b.length(), "ranks": ranks, "entries": entries })
}

pub fn complex(f: &FreeComplex) -> Value {
    json!({
        "modules": f.modules().iter().map(|m| m.degrees().to_vec()).collect::<Vec<_>>(),
        "differentials": f.differentials().iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn ring(r: &GradedRing) -> Value {
    json!({
        "field": r.field().tag(),
        "vars": r.names(),
        "weights": r.weights(),
        "order": r.order().tag(),
    })
}

pub fn certificate(cert: &GorensteinCertificate, dump: bool) -> Value {
    let checks: Vec<Value> = cert.transcript.checks.iter().map(|(name, ok)| json!({ "check": name, "passed": ok })).collect();
    let mut out = json!({
        "codimension": cert.codimension,
        "half": cert.half(),
        "twist": cert.twist,
        "sign": cert.sign(),
        "middle_map": matrix(cert.middle()),
        "middle_alternating": cert.middle().is_alternating(),
        "betti": betti(&cert.betti()),
        "transcript": { "field": cert.transcript.field, "checks": checks, "all_passed": cert.transcript.all_passed() },
    });
    if let Some(sigma) = &cert.sigma {
        out["sigma"] = vector(sigma);
    }
    if dump {
        out["complex"] = complex(&cert.complex);
        out["duality_maps"] = Value::Array(cert.duality_maps.iter().map(matrix).collect());
    }
    out
}

/// `{"schema": "v1", "command": ..., "status": "ok", ...body}`.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), SCHEMA.into());
    map.insert("command".into(), command.into());
    map.insert("status".into(), "ok".into());
    if let Value::Object(fields) = body {
        map.extend(fields);
    }
    Value::Object(map)
}
