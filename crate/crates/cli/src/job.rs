//! Job files: a `[ring]` table and exactly one input block.
//!
//! ```toml
//! [ring]
//! field = "Fp:31991"          # or "QQ"
//! vars = ["x", "y", "z"]
//! weights = [1, 1, 1]         # optional
//! order = "grevlex"           # optional: lex, grevlex, weighted-grevlex
//!
//! [ideal]                     # the cyclic module S / I
//! generators = ["x^2", "y^2 + x*z", "z^3"]
//!
//! [options]                   # all optional; flags take precedence
//! twist = -7
//! max_length = 10
//! seed = 1
//! ```
//!
//! The other input blocks are `[matrix]` (`rows`, optional `target_degrees`
//! and `source_degrees`), `[skew]` (`size`, row-wise strict upper triangle
//! `upper`, optional `degrees` and `twist`), `[algebra]` (`generators` of an
//! ideal of the ring and the `base` variables it is finite over) and
//! `[complex]` (`degrees` of `F_0..F_m`, `twist` and `differentials`
//! `d_1..d_{m+1}`; the remaining maps are the transposes).

use std::sync::Arc;

use gorenstein_core::complexes::{FreeComplex, FreeModuleElement, GradedFreeModule, ModuleMap};
use gorenstein_core::pfaffian::SkewMatrix;
use gorenstein_core::{parse_poly, AlgebraError, Field, GradedRing, MonomialOrder, Polynomial};
use serde::Deserialize;
use toml::Spanned;

use crate::error::{CliError, CliResult};

type Expr = Spanned<String>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: Option<String>,
    pub vars: Vec<String>,
    pub weights: Option<Vec<u32>>,
    pub order: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealBlock {
    pub generators: Vec<Expr>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixBlock {
    pub rows: Vec<Vec<Expr>>,
    pub target_degrees: Option<Vec<i32>>,
    pub source_degrees: Option<Vec<i32>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewBlock {
    pub size: usize,
    pub upper: Vec<Expr>,
    pub degrees: Option<Vec<i32>>,
    pub twist: Option<i32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub generators: Vec<Expr>,
    pub base: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexBlock {
    pub degrees: Vec<Vec<i32>>,
    pub twist: i32,
    pub differentials: Vec<Vec<Vec<Expr>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub twist: Option<i32>,
    pub max_length: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub ring: Option<RingSpec>,
    pub ideal: Option<IdealBlock>,
    pub matrix: Option<MatrixBlock>,
    pub skew: Option<SkewBlock>,
    pub algebra: Option<AlgebraBlock>,
    pub complex: Option<ComplexBlock>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingFile {
    ring: RingSpec,
}

/// A parsed job with its source text, for error positions.
#[derive(Clone, Debug)]
pub struct Job {
    pub spec: JobSpec,
    source: String,
}

/// The mathematical input described by a job.
#[derive(Clone, Debug)]
pub enum Input {
    Ideal(Vec<Polynomial>),
    Matrix(ModuleMap),
    Skew { matrix: SkewMatrix, degrees: Option<(Vec<i32>, i32)> },
    Algebra { ideal: Vec<Polynomial>, base_vars: Vec<usize> },
    /// `d_1..d_c` of a candidate symmetric resolution.
    Complex(FreeComplex),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Ideal(_) => "ideal",
            Input::Matrix(_) => "matrix",
            Input::Skew { .. } => "skew",
            Input::Algebra { .. } => "algebra",
            Input::Complex(_) => "complex",
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, col)
}

fn toml_error(what: &str, e: toml::de::Error) -> CliError {
    CliError::Input(format!("{what}: {}", e.to_string().trim_end()))
}

impl Job {
    pub fn parse(text: &str) -> CliResult<Self> {
        let spec: JobSpec = toml::from_str(text).map_err(|e| toml_error("job file", e))?;
        Ok(Job { spec, source: text.to_string() })
    }

    /// Takes the `[ring]` table from a separate file.
    pub fn with_ring_file(mut self, text: &str) -> CliResult<Self> {
        let file: RingFile = toml::from_str(text).map_err(|e| toml_error("ring file", e))?;
        if self.spec.ring.is_some() {
            return Err(CliError::Input("the job already declares [ring]; drop it or the ring file".into()));
        }
        self.spec.ring = Some(file.ring);
        Ok(self)
    }

    pub fn ring(&self, field_override: Option<&str>) -> CliResult<Arc<GradedRing>> {
        let spec = self.spec.ring.as_ref().ok_or_else(|| CliError::Input("missing [ring] table".into()))?;
        let bad = |e: AlgebraError| CliError::Input(format!("[ring]: {e}"));
        let field = match field_override.or(spec.field.as_deref()) {
            Some(tag) => Field::parse(tag).map_err(bad)?,
            None => Field::default(),
        };
        let weights = spec.weights.clone().unwrap_or_else(|| vec![1; spec.vars.len()]);
        let order = match &spec.order {
            Some(o) => MonomialOrder::parse(o).map_err(bad)?,
            None => MonomialOrder::WeightedGrevLex,
        };
        Ok(GradedRing::new(spec.vars.clone(), weights, field, order).map_err(bad)?.into_arc())
    }

    fn poly(&self, e: &Expr, ring: &Arc<GradedRing>, what: &str) -> CliResult<Polynomial> {
        parse_poly(e.get_ref(), ring).map_err(|err| {
            // One past the opening quote; exact for strings without escapes.
            let start = e.span().start + 1;
            let offset = match &err {
                AlgebraError::SyntaxError { offset, .. } => start + offset,
                _ => start,
            };
            let (line, col) = line_col(&self.source, offset);
            CliError::Input(format!("line {line}, column {col}: {what}: {err}"))
        })
    }

    fn position(&self, e: &Expr) -> String {
        let (line, col) = line_col(&self.source, e.span().start);
        format!("line {line}, column {col}")
    }

    fn matrix(&self, rows: &[Vec<Expr>], ring: &Arc<GradedRing>, what: &str) -> CliResult<Vec<Vec<Polynomial>>> {
        let width = rows.first().map_or(0, Vec::len);
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != width {
                    return Err(CliError::Input(format!("{what}: row {i} has {} entries, expected {width}", row.len())));
                }
                row.iter().enumerate().map(|(j, e)| self.poly(e, ring, &format!("{what}[{i}][{j}]"))).collect()
            })
            .collect()
    }

    /// Wraps a homogeneity failure with the position of the offending entry.
    fn map(
        &self,
        ring: &Arc<GradedRing>,
        source: GradedFreeModule,
        target: GradedFreeModule,
        entries: Vec<Vec<Polynomial>>,
        exprs: &[Vec<Expr>],
        what: &str,
    ) -> CliResult<ModuleMap> {
        ModuleMap::new(ring, source, target, entries).map_err(|e| match e {
            AlgebraError::NotHomogeneous { row, col } => CliError::Input(format!(
                "{}: {what}[{row}][{col}] does not have the degree its row and column require",
                self.position(&exprs[row][col])
            )),
            other => CliError::Input(format!("{what}: {other}")),
        })
    }

    /// Builds the single input block in `ring`.
    pub fn input(&self, ring: &Arc<GradedRing>) -> CliResult<Input> {
        let s = &self.spec;
        let present = [s.ideal.is_some(), s.matrix.is_some(), s.skew.is_some(), s.algebra.is_some(), s.complex.is_some()];
        if present.iter().filter(|&&p| p).count() != 1 {
            return Err(CliError::Input(
                "exactly one of [ideal], [matrix], [skew], [algebra] and [complex] is required".into(),
            ));
        }
        if let Some(b) = &s.ideal {
            let gens = b.generators.iter().enumerate().map(|(k, e)| self.poly(e, ring, &format!("generators[{k}]"))).collect::<CliResult<Vec<_>>>()?;
            if let Some((k, _)) = gens.iter().enumerate().find(|(_, g)| !g.is_zero() && !g.is_homogeneous()) {
                return Err(CliError::Input(format!("{}: generators[{k}] is not homogeneous", self.position(&b.generators[k]))));
            }
            return Ok(Input::Ideal(gens));
        }
        if let Some(b) = &s.matrix {
            return Ok(Input::Matrix(self.matrix_block(b, ring)?));
        }
        if let Some(b) = &s.skew {
            let upper = b.upper.iter().enumerate().map(|(k, e)| self.poly(e, ring, &format!("upper[{k}]"))).collect::<CliResult<Vec<_>>>()?;
            let matrix = SkewMatrix::from_upper(ring, b.size, &upper).map_err(|e| CliError::Input(format!("[skew]: {e}")))?;
            let degrees = match (&b.degrees, b.twist) {
                (Some(d), Some(t)) => Some((d.clone(), t)),
                (None, None) => None,
                _ => return Err(CliError::Input("[skew]: give both `degrees` and `twist` or neither".into())),
            };
            return Ok(Input::Skew { matrix, degrees });
        }
        if let Some(b) = &s.algebra {
            let ideal = b.generators.iter().enumerate().map(|(k, e)| self.poly(e, ring, &format!("generators[{k}]"))).collect::<CliResult<Vec<_>>>()?;
            let base_vars = b
                .base
                .iter()
                .map(|v| ring.var_index(v).ok_or_else(|| CliError::Input(format!("[algebra]: unknown base variable `{v}`"))))
                .collect::<CliResult<Vec<_>>>()?;
            return Ok(Input::Algebra { ideal, base_vars });
        }
        let b = s.complex.as_ref().expect("one block is present");
        Ok(Input::Complex(self.complex_block(b, ring)?))
    }

    fn matrix_block(&self, b: &MatrixBlock, ring: &Arc<GradedRing>) -> CliResult<ModuleMap> {
        let entries = self.matrix(&b.rows, ring, "rows")?;
        let target = GradedFreeModule::new(b.target_degrees.clone().unwrap_or_else(|| vec![0; entries.len()]));
        if target.rank() != entries.len() {
            return Err(CliError::Input("[matrix]: one target degree per row is required".into()));
        }
        let width = entries.first().map_or(0, Vec::len);
        let source = match &b.source_degrees {
            Some(d) => GradedFreeModule::new(d.clone()),
            None => {
                let columns: Vec<FreeModuleElement> =
                    (0..width).map(|j| FreeModuleElement::new(entries.iter().map(|r| r[j].clone()).collect())).collect();
                if let Some(j) = columns.iter().position(FreeModuleElement::is_zero) {
                    return Err(CliError::Input(format!("[matrix]: column {j} is zero; give `source_degrees`")));
                }
                let degrees = columns
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        c.degree_in(&target).ok_or_else(|| {
                            CliError::Input(format!("[matrix]: column {j} is not homogeneous for the target degrees"))
                        })
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                GradedFreeModule::new(degrees)
            }
        };
        if source.rank() != width {
            return Err(CliError::Input("[matrix]: one source degree per column is required".into()));
        }
        self.map(ring, source, target, entries, &b.rows, "rows")
    }

    fn complex_block(&self, b: &ComplexBlock, ring: &Arc<GradedRing>) -> CliResult<FreeComplex> {
        if b.degrees.is_empty() || b.differentials.len() != b.degrees.len() {
            return Err(CliError::Input(
                "[complex]: give the degrees of F_0..F_m and the maps d_1..d_{m+1}".into(),
            ));
        }
        let m = b.degrees.len() - 1;
        let mut modules: Vec<GradedFreeModule> = b.degrees.iter().map(|d| GradedFreeModule::new(d.clone())).collect();
        modules.push(modules[m].dual(b.twist));
        let mut maps = Vec::new();
        for (k, rows) in b.differentials.iter().enumerate() {
            let what = format!("differentials[{k}]");
            let entries = self.matrix(rows, ring, &what)?;
            maps.push(self.map(ring, modules[k + 1].clone(), modules[k].clone(), entries, rows, &what)?);
        }
        for p in m + 2..=2 * m + 1 {
            maps.push(maps[2 * m + 1 - p].transpose(b.twist));
        }
        FreeComplex::sequence(ring, modules[0].clone(), maps).map_err(|e| CliError::Input(format!("[complex]: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RING: &str = "[ring]\nvars = [\"x\", \"y\"]\n";

    #[test]
    fn reports_positions_of_bad_polynomials() {
        let job = Job::parse(&format!("{RING}[ideal]\ngenerators = [\"x^2\", \"x + * y\"]\n")).unwrap();
        let ring = job.ring(None).unwrap();
        let err = job.input(&ring).unwrap_err().to_string();
        assert!(err.starts_with("line 4, column 27"), "{err}");
    }

    #[test]
    fn rejects_unknown_keys_with_position() {
        let err = Job::parse(&format!("{RING}[ideal]\ngens = []\n")).unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
    }

    #[test]
    fn rejects_inhomogeneous_matrix_entries() {
        let job = Job::parse(&format!("{RING}[matrix]\nrows = [[\"x\", \"y\"], [\"y\", \"x^2\"]]\ntarget_degrees = [0, 0]\nsource_degrees = [1, 1]\n")).unwrap();
        let ring = job.ring(None).unwrap();
        let err = job.input(&ring).unwrap_err().to_string();
        assert!(err.contains("line 4") && err.contains("rows[1][1]"), "{err}");
    }

    #[test]
    fn needs_exactly_one_block() {
        let job = Job::parse(RING).unwrap();
        assert!(job.input(&job.ring(None).unwrap()).is_err());
    }

    #[test]
    fn ring_file_and_field_override() {
        let job = Job::parse("[ideal]\ngenerators = [\"x\"]\n").unwrap().with_ring_file(RING).unwrap();
        let ring = job.ring(Some("QQ")).unwrap();
        assert_eq!(ring.field(), Field::Rationals);
        assert!(matches!(job.input(&ring).unwrap(), Input::Ideal(g) if g.len() == 1));
    }

    #[test]
    fn complex_is_completed_by_transposes() {
        let text = format!(
            "{RING}[complex]\ndegrees = [[0]]\ntwist = -2\ndifferentials = [[[\"x*y\"]]]\n"
        );
        let job = Job::parse(&text).unwrap();
        let ring = job.ring(None).unwrap();
        let Input::Complex(f) = job.input(&ring).unwrap() else { panic!() };
        assert_eq!(f.length(), 1);
        assert_eq!(f.module(1).degrees(), &[2]);
    }
}
