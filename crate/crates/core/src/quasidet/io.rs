//! JSON matrix input: an array of rows whose entries are exact scalars
//! (`"3/4+1/2i"` or integers) or blocks (arrays of rows of scalars, each
//! scalar a number, an exact string or an `[re, im]` pair).

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::Value;

use super::{BlockMatrix, QuasidetError};
use crate::exact::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CarrierKind {
    /// Exact if every entry is a scalar, matrix otherwise.
    #[default]
    Auto,
    Exact,
    Matrix,
}

#[derive(Debug, Clone)]
pub enum ParsedMatrix {
    Exact(BlockMatrix<GaussianRational>),
    Blocks {
        dim: usize,
        matrix: BlockMatrix<DMatrix<Complex64>>,
    },
}

fn err(msg: impl Into<String>) -> QuasidetError {
    QuasidetError::Input(msg.into())
}

enum Entry {
    Scalar(GaussianRational),
    Block(DMatrix<Complex64>),
}

fn exact_scalar(v: &Value) -> Result<GaussianRational, QuasidetError> {
    match v {
        Value::String(s) => s.parse().map_err(|e: crate::exact::ParseExactError| err(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(GaussianRational::from_int)
            .ok_or_else(|| err(format!("non-integer number {n} needs the string form"))),
        _ => Err(err(format!("expected an exact scalar, got {v}"))),
    }
}

fn complex_scalar(v: &Value) -> Result<Complex64, QuasidetError> {
    match v {
        Value::Number(n) => Ok(Complex64::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
        Value::String(_) => {
            let (re, im) = exact_scalar(v)?.to_f64_pair();
            Ok(Complex64::new(re, im))
        }
        Value::Array(pair) if pair.len() == 2 => {
            let part = |x: &Value| x.as_f64().ok_or_else(|| err(format!("bad complex part {x}")));
            Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
        }
        _ => Err(err(format!("expected a complex scalar, got {v}"))),
    }
}

fn block(v: &[Value]) -> Result<DMatrix<Complex64>, QuasidetError> {
    let d = v.len();
    let mut m = DMatrix::zeros(d, d);
    for (i, row) in v.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == d)
            .ok_or_else(|| err("block rows must be arrays of the block size"))?;
        for (j, x) in row.iter().enumerate() {
            m[(i, j)] = complex_scalar(x)?;
        }
    }
    if d == 0 {
        return Err(err("empty block"));
    }
    Ok(m)
}

pub fn parse_matrix_json(text: &str, kind: CarrierKind) -> Result<ParsedMatrix, QuasidetError> {
    let value: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
    let rows = value.as_array().ok_or_else(|| err("top level must be an array of rows"))?;
    let mut entries = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| err("each row must be an array"))?;
        let mut out = Vec::with_capacity(row.len());
        for x in row {
            out.push(match x {
                Value::Array(b) => Entry::Block(block(b)?),
                _ => Entry::Scalar(exact_scalar(x)?),
            });
        }
        entries.push(out);
    }
    let dims: Vec<usize> = entries
        .iter()
        .flatten()
        .filter_map(|e| match e {
            Entry::Block(b) => Some(b.nrows()),
            Entry::Scalar(_) => None,
        })
        .collect();
    if dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(err("blocks have different sizes"));
    }
    let use_exact = match kind {
        CarrierKind::Exact => {
            if !dims.is_empty() {
                return Err(err("the exact carrier accepts scalar entries only"));
            }
            true
        }
        CarrierKind::Matrix => false,
        CarrierKind::Auto => dims.is_empty(),
    };
    if use_exact {
        let rows = entries
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        Entry::Scalar(q) => q,
                        Entry::Block(_) => unreachable!("checked above"),
                    })
                    .collect()
            })
            .collect();
        return Ok(ParsedMatrix::Exact(BlockMatrix::from_rows(rows)?));
    }
    let dim = dims.first().copied().unwrap_or(1);
    let rows = entries
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|e| match e {
                    Entry::Block(b) => b,
                    Entry::Scalar(q) => {
                        let (re, im) = q.to_f64_pair();
                        DMatrix::from_diagonal_element(dim, dim, Complex64::new(re, im))
                    }
                })
                .collect()
        })
        .collect();
    Ok(ParsedMatrix::Blocks {
        dim,
        matrix: BlockMatrix::from_rows(rows)?,
    })
}

/// `[[ [re, im], ... ], ...]`.
pub fn complex_matrix_json(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| {
                Value::Array(
                    (0..m.ncols())
                        .map(|j| serde_json::json!([m[(i, j)].re, m[(i, j)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}
