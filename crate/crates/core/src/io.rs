//! TOML file formats for algebras, maps, tensors and operation tables.
//!
//! Scalar values are written as integers or as strings in the exact literal
//! syntax (`"-1/4"`); decimals are rejected.
//!
//! ```toml
//! name = "complex"
//! field = "Q"
//! dim = 2
//! unit = 0
//! constants = [
//!   [0, 0, 0, 1],
//!   [0, 1, 1, 1],
//!   [1, 0, 1, 1],
//!   [1, 1, 0, -1],
//! ]
//! ```
//!
//! Maps hold `rows = [[...], ...]`, tensors hold `entries = [[[i, j], "1/4"], ...]`
//! and operation tables hold `size = m` plus `op1`/`op2` tables
//! `{ arity = p, table = [...] }` with the table nested or flat in row-major order.

use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use crate::algebra::{Algebra, AlgebraDef, AlgebraError};
use crate::linmap::LinMap;
use crate::matrix::Matrix;
use crate::omega::{FiniteOpAlgebra, OmegaError, OpTable};
use crate::scalar::{Field, Scalar};
use crate::tensor::Tensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{path}: {reason}")]
    Read { path: String, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid {invariant}: {detail}")]
    Validation { invariant: String, detail: String },
}

impl IoError {
    fn validation(invariant: &str, detail: impl ToString) -> Self {
        IoError::Validation {
            invariant: invariant.to_string(),
            detail: detail.to_string(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn parse(&self, field: Field) -> Result<Scalar, String> {
        match self {
            Literal::Int(v) => Ok(field.from_i64(*v)),
            Literal::Text(s) => field.parse(s).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    field: Spanned<String>,
    dim: usize,
    unit: Option<usize>,
    #[serde(default)]
    constants: Vec<Spanned<(usize, usize, usize, Literal)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapFile {
    rows: Vec<Spanned<Vec<Literal>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    #[serde(default)]
    entries: Vec<Spanned<(Vec<usize>, Literal)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OpSpec {
    arity: usize,
    table: Spanned<toml::Value>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OpTableFile {
    size: usize,
    op1: OpSpec,
    op2: OpSpec,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

fn parse_toml<'de, T: Deserialize<'de>>(text: &'de str) -> Result<T, IoError> {
    toml::from_str(text).map_err(|e| IoError::Parse {
        line: e.span().map_or(1, |s| line_of(text, s)),
        reason: e.message().trim().to_string(),
    })
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn scalar_at(text: &str, span: Range<usize>, lit: &Literal, field: Field) -> Result<Scalar, IoError> {
    lit.parse(field).map_err(|reason| IoError::Parse {
        line: line_of(text, span),
        reason,
    })
}

pub fn parse_algebra(text: &str) -> Result<Algebra, IoError> {
    let file: AlgebraFile = parse_toml(text)?;
    let field: Field = file.field.get_ref().parse().map_err(|e: crate::scalar::ScalarError| IoError::Parse {
        line: line_of(text, file.field.span()),
        reason: e.to_string(),
    })?;
    let mut entries = Vec::with_capacity(file.constants.len());
    for c in &file.constants {
        let (i, j, k, lit) = c.get_ref();
        entries.push((*i, *j, *k, scalar_at(text, c.span(), lit, field)?));
    }
    AlgebraDef::from_entries(file.name, field, file.dim, entries, file.unit).map_err(|e| {
        let invariant = match e {
            AlgebraError::Unit { .. } => "unit",
            AlgebraError::Duplicate(..) => "constants",
            AlgebraError::IndexOutOfRange { .. } => "index",
            AlgebraError::EmptyAlgebra => "dim",
            _ => "algebra",
        };
        IoError::validation(invariant, e)
    })
}

pub fn load_algebra(path: impl AsRef<Path>) -> Result<Algebra, IoError> {
    parse_algebra(&read(path.as_ref())?)
}

/// Rows of literals as a matrix over `field`; every row must have the same length.
pub fn parse_matrix(text: &str, field: Field) -> Result<Matrix, IoError> {
    let file: MapFile = parse_toml(text)?;
    let mut rows = Vec::with_capacity(file.rows.len());
    for row in &file.rows {
        let values = row
            .get_ref()
            .iter()
            .map(|lit| scalar_at(text, row.span(), lit, field))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(IoError::validation("shape", "matrix has no rows"));
    }
    Matrix::from_rows(field, rows).map_err(|e| IoError::validation("shape", e))
}

pub fn load_matrix(path: impl AsRef<Path>, field: Field) -> Result<Matrix, IoError> {
    parse_matrix(&read(path.as_ref())?, field)
}

pub fn parse_map(text: &str, source: &Algebra, target: &Algebra) -> Result<LinMap, IoError> {
    let m = parse_matrix(text, source.field())?;
    LinMap::new(source.clone(), target.clone(), m).map_err(|e| IoError::validation("shape", e))
}

pub fn load_map(path: impl AsRef<Path>, source: &Algebra, target: &Algebra) -> Result<LinMap, IoError> {
    parse_map(&read(path.as_ref())?, source, target)
}

/// Sparse entries over `algs`; unlisted components are zero, repeated indices are rejected.
pub fn parse_tensor(text: &str, algs: &[Algebra]) -> Result<Tensor, IoError> {
    let file: TensorFile = parse_toml(text)?;
    let mut t = Tensor::zeros(algs.to_vec()).map_err(|e| IoError::validation("factors", e))?;
    let mut seen = std::collections::BTreeSet::new();
    for entry in &file.entries {
        let (idx, lit) = entry.get_ref();
        let line = line_of(text, entry.span());
        if idx.len() != algs.len() || idx.iter().zip(algs).any(|(&i, a)| i >= a.dim()) {
            return Err(IoError::Parse {
                line,
                reason: format!("index {idx:?} does not fit dimensions {:?}", t.dims()),
            });
        }
        if !seen.insert(idx.clone()) {
            return Err(IoError::Parse {
                line,
                reason: format!("index {idx:?} listed twice"),
            });
        }
        t.set(idx, scalar_at(text, entry.span(), lit, t.field())?);
    }
    Ok(t)
}

pub fn load_tensor(path: impl AsRef<Path>, algs: &[Algebra]) -> Result<Tensor, IoError> {
    parse_tensor(&read(path.as_ref())?, algs)
}

fn flatten_table(text: &str, value: &Spanned<toml::Value>) -> Result<Vec<usize>, IoError> {
    fn walk(v: &toml::Value, out: &mut Vec<usize>) -> Result<(), String> {
        match v {
            toml::Value::Integer(i) => {
                out.push(usize::try_from(*i).map_err(|_| format!("{i} is not a carrier element"))?);
                Ok(())
            }
            toml::Value::Array(items) => items.iter().try_for_each(|x| walk(x, out)),
            other => Err(format!("unexpected {} in table", other.type_str())),
        }
    }
    let mut out = Vec::new();
    walk(value.get_ref(), &mut out).map_err(|reason| IoError::Parse {
        line: line_of(text, value.span()),
        reason,
    })?;
    Ok(out)
}

pub fn parse_optable(text: &str) -> Result<FiniteOpAlgebra, IoError> {
    let file: OpTableFile = parse_toml(text)?;
    let table = |spec: &OpSpec| -> Result<OpTable, IoError> {
        let entries = flatten_table(text, &spec.table)?;
        OpTable::new(file.size, spec.arity, entries).map_err(|e: OmegaError| IoError::validation("table", e))
    };
    FiniteOpAlgebra::new(table(&file.op1)?, table(&file.op2)?).map_err(|e| IoError::validation("table", e))
}

pub fn load_optable(path: impl AsRef<Path>) -> Result<FiniteOpAlgebra, IoError> {
    parse_optable(&read(path.as_ref())?)
}

fn quoted(s: &Scalar) -> String {
    format!("\"{s}\"")
}

pub fn save_algebra(alg: &Algebra) -> String {
    let mut out = String::new();
    let name = toml::Value::String(alg.name().to_string());
    writeln!(out, "name = {name}").unwrap();
    writeln!(out, "field = \"{}\"", alg.field()).unwrap();
    writeln!(out, "dim = {}", alg.dim()).unwrap();
    if let Some(u) = alg.unit() {
        writeln!(out, "unit = {u}").unwrap();
    }
    writeln!(out, "constants = [").unwrap();
    let n = alg.dim();
    for (flat, c) in alg.constants().iter().enumerate() {
        if !c.is_zero() {
            let (i, j, k) = (flat / (n * n), flat / n % n, flat % n);
            writeln!(out, "  [{i}, {j}, {k}, {}],", quoted(c)).unwrap();
        }
    }
    writeln!(out, "]").unwrap();
    out
}

pub fn save_matrix(m: &Matrix) -> String {
    let mut out = String::from("rows = [\n");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(quoted).collect();
        writeln!(out, "  [{}],", row.join(", ")).unwrap();
    }
    out.push_str("]\n");
    out
}

pub fn save_tensor(t: &Tensor) -> String {
    let mut out = String::from("entries = [\n");
    for (idx, v) in t.nonzero() {
        let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
        writeln!(out, "  [[{}], {}],", idx.join(", "), quoted(v)).unwrap();
    }
    out.push_str("]\n");
    out
}

pub fn save_optable(alg: &FiniteOpAlgebra) -> String {
    let mut out = format!("size = {}\n", alg.size());
    for (name, op) in [("op1", &alg.op1), ("op2", &alg.op2)] {
        let entries: Vec<String> = op.entries().iter().map(ToString::to_string).collect();
        writeln!(out, "{name} = {{ arity = {}, table = [{}] }}", op.arity(), entries.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::algebra::same_algebra;

    const COMPLEX: &str = r#"
name = "complex"
field = "Q"
dim = 2
unit = 0
constants = [
  [0, 0, 0, 1],
  [0, 1, 1, 1],
  [1, 0, 1, 1],
  [1, 1, 0, -1],
]
"#;

    #[test]
    fn parses_algebra() {
        let c = parse_algebra(COMPLEX).unwrap();
        assert!(same_algebra(&c, &fixtures::complex(Field::Rational)));
    }

    #[test]
    fn unit_violation() {
        let bad = COMPLEX.replace("[0, 1, 1, 1]", "[0, 1, 1, 2]");
        assert!(matches!(parse_algebra(&bad), Err(IoError::Validation { invariant, .. }) if invariant == "unit"));
    }

    #[test]
    fn duplicate_constant() {
        let bad = COMPLEX.replace("[1, 1, 0, -1],", "[1, 1, 0, -1],\n  [1, 1, 0, 1],");
        assert!(matches!(parse_algebra(&bad), Err(IoError::Validation { invariant, .. }) if invariant == "constants"));
    }

    #[test]
    fn bad_literal_reports_line() {
        let bad = COMPLEX.replace("[1, 1, 0, -1]", "[1, 1, 0, \"1/0\"]");
        assert!(matches!(parse_algebra(&bad), Err(IoError::Parse { line: 10, .. })));
        let decimal = COMPLEX.replace("[1, 1, 0, -1]", "[1, 1, 0, \"0.5\"]");
        assert!(matches!(parse_algebra(&decimal), Err(IoError::Parse { line: 10, .. })));
        let float = COMPLEX.replace("[1, 1, 0, -1]", "[1, 1, 0, 0.5]");
        assert!(matches!(parse_algebra(&float), Err(IoError::Parse { .. })));
    }

    #[test]
    fn syntax_error_line() {
        let err = parse_algebra("name = \"x\"\nfield = \"Q\"\ndim = \n").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 3, .. }));
        assert!(matches!(parse_algebra("name = \"x\"\nfield = \"Fp:6\"\ndim = 1\n"), Err(IoError::Parse { line: 2, .. })));
    }

    #[test]
    fn algebra_round_trip() {
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            for alg in [fixtures::quaternions(field), fixtures::octonions(field), fixtures::n2(field)] {
                let back = parse_algebra(&save_algebra(&alg)).unwrap();
                assert!(same_algebra(&alg, &back));
            }
        }
    }

    #[test]
    fn matrix_and_tensor_round_trip() {
        let q = Field::Rational;
        let m = Matrix::from_rows(q, vec![vec![fixtures::q(1, 4), fixtures::q(-3, 2)], vec![q.zero(), q.one()]]).unwrap();
        assert_eq!(parse_matrix(&save_matrix(&m), q).unwrap(), m);
        let ragged = "rows = [[1, 2], [3]]";
        assert!(matches!(parse_matrix(ragged, q), Err(IoError::Validation { .. })));

        let h = fixtures::quaternions(q);
        let mut t = Tensor::zeros(vec![h.clone(), h.clone()]).unwrap();
        t.set(&[1, 2], fixtures::q(-1, 4));
        t.set(&[3, 0], fixtures::q(7, 1));
        assert_eq!(parse_tensor(&save_tensor(&t), &[h.clone(), h.clone()]).unwrap(), t);
        let out_of_range = "entries = [\n  [[4, 0], 1],\n]";
        assert!(matches!(parse_tensor(out_of_range, &[h.clone(), h]), Err(IoError::Parse { line: 2, .. })));
    }

    #[test]
    fn optables() {
        let text = "size = 2\nop1 = { arity = 2, table = [[0, 1], [1, 0]] }\nop2 = { arity = 2, table = [0, 0, 0, 1] }\n";
        let alg = parse_optable(text).unwrap();
        assert_eq!(alg.op1.entries(), &[0, 1, 1, 0]);
        assert_eq!(parse_optable(&save_optable(&alg)).unwrap(), alg);
        let bad = text.replace("[0, 0, 0, 1]", "[0, 0, 0, 2]");
        assert!(matches!(parse_optable(&bad), Err(IoError::Validation { .. })));
    }
}
