use serde::Serialize;

use super::{quasideterminant_expand, BlockMatrix, ExactField, QuasidetError};
use crate::exact::GaussianRational;

/// Laplace expansion along the first row. Exponential, meant for small `n`.
pub fn cofactor_determinant(m: &BlockMatrix<GaussianRational>) -> GaussianRational {
    let n = m.n();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = GaussianRational::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let term = m.get(0, j) * &cofactor_determinant(&m.minor(0, j));
        if j % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutativeOutcome {
    Equal,
    NotEqual { quasideterminant: String, ratio: String },
    /// `det A^{ij} = 0`: the identity says nothing at this position.
    VacuousSingular,
}

/// Compares `|A|_ij` with `(−1)^{i+j} det A / det A^{ij}`.
pub fn commutative_reduction_check(
    m: &BlockMatrix<GaussianRational>,
    i: usize,
    j: usize,
) -> Result<CommutativeOutcome, QuasidetError> {
    if i >= m.n() || j >= m.n() {
        return Err(QuasidetError::IndexOutOfRange {
            row: i,
            col: j,
            n: m.n(),
        });
    }
    let minor_det = if m.n() == 1 {
        GaussianRational::one()
    } else {
        cofactor_determinant(&m.minor(i, j))
    };
    let Some(minor_det_inv) = minor_det.inv() else {
        return Ok(CommutativeOutcome::VacuousSingular);
    };
    let mut ratio = &cofactor_determinant(m) * &minor_det_inv;
    if (i + j) % 2 == 1 {
        ratio = -ratio;
    }
    let q = quasideterminant_expand(&ExactField, m, i, j)?;
    Ok(if q == ratio {
        CommutativeOutcome::Equal
    } else {
        CommutativeOutcome::NotEqual {
            quasideterminant: q.to_string(),
            ratio: ratio.to_string(),
        }
    })
}
