//! Quasideterminants over an abstract division carrier.
//!
//! Two independent evaluation paths are provided:
//!
//! * [`quasideterminant_expand`]: `a_ij − r · (A^{ij})⁻¹ · c`, with the minor
//!   inverted by pivoted Gauss–Jordan elimination over the carrier;
//! * [`quasideterminant_via_inverse`]: `((A⁻¹)_ji)⁻¹`, with `A⁻¹` built by
//!   recursive 2×2 block (Schur complement) inversion.
//!
//! Indices are 0-based in the API and 1-based in error messages.

mod carrier;
mod commutative;
mod io;
pub mod random;

use rayon::prelude::*;
use thiserror::Error;

pub use carrier::{invert_matrix, max_abs, ComplexMatrices, DivisionCarrier, ExactField};
pub use commutative::{
    commutative_reduction_check, cofactor_determinant, CommutativeOutcome,
};
pub use io::{complex_matrix_json, parse_matrix_json, CarrierKind, ParsedMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuasidetError {
    #[error("configuration error: matrix must be square and non-empty")]
    Shape,
    #[error("configuration error: index ({}, {}) outside a {n}x{n} matrix", .row + 1, .col + 1)]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error("NonInvertibleMinor: minor of position ({}, {}) is not invertible", .row + 1, .col + 1)]
    NonInvertibleMinor { row: usize, col: usize },
    #[error("NonInvertibleMatrix: block inversion found no invertible pivot block")]
    NonInvertibleMatrix,
    #[error("NonInvertibleEntry: inverse entry ({}, {}) is not invertible", .row + 1, .col + 1)]
    NonInvertibleEntry { row: usize, col: usize },
    #[error("input error: {0}")]
    Input(String),
}

/// Square `n×n` matrix with carrier entries, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> BlockMatrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self, QuasidetError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(QuasidetError::Shape);
        }
        Ok(BlockMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        assert!(n >= 1, "empty block matrix");
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        BlockMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        self.entries.chunks(self.n)
    }

    /// Removes row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let keep_r: Vec<usize> = (0..self.n).filter(|&r| r != i).collect();
        let keep_c: Vec<usize> = (0..self.n).filter(|&c| c != j).collect();
        self.select(&keep_r, &keep_c)
    }

    /// Submatrix on the given row and column index lists (which must have equal length).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        BlockMatrix {
            n: rows.len(),
            entries,
        }
    }

    /// `M'[r][c] = M[row_perm[r]][col_perm[c]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        self.select(row_perm, col_perm)
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> BlockMatrix<F> {
        BlockMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_index(&self, i: usize, j: usize) -> Result<(), QuasidetError> {
        if i >= self.n || j >= self.n {
            Err(QuasidetError::IndexOutOfRange {
                row: i,
                col: j,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

/// Gauss–Jordan inverse over a (possibly noncommutative) carrier.
///
/// Row operations are left multiplications, so the result is the two-sided
/// inverse whenever every chosen pivot is invertible.
pub fn eliminate_inverse<C: DivisionCarrier>(
    carrier: &C,
    m: &BlockMatrix<C::Elem>,
) -> Option<BlockMatrix<C::Elem>> {
    let n = m.n;
    let mut a: Vec<Vec<C::Elem>> = m.rows().map(<[_]>::to_vec).collect();
    let mut inv: Vec<Vec<C::Elem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { carrier.one() } else { carrier.zero() })
                .collect()
        })
        .collect();
    for k in 0..n {
        let mut best: Option<(usize, C::Elem, f64)> = None;
        for (r, row) in a.iter().enumerate().skip(k) {
            if carrier.is_zero(&row[k]) {
                continue;
            }
            let mag = carrier.magnitude(&row[k]);
            if best.as_ref().is_some_and(|(_, _, b)| *b >= mag) {
                continue;
            }
            if let Some(pinv) = carrier.inv(&row[k]) {
                best = Some((r, pinv, mag));
            }
        }
        let (r, pinv, _) = best?;
        a.swap(k, r);
        inv.swap(k, r);
        a[k] = a[k].iter().map(|x| carrier.mul(&pinv, x)).collect();
        inv[k] = inv[k].iter().map(|x| carrier.mul(&pinv, x)).collect();
        for s in 0..n {
            if s == k || carrier.is_zero(&a[s][k]) {
                continue;
            }
            let factor = a[s][k].clone();
            for c in 0..n {
                let da = carrier.mul(&factor, &a[k][c]);
                a[s][c] = carrier.sub(&a[s][c], &da);
                let di = carrier.mul(&factor, &inv[k][c]);
                inv[s][c] = carrier.sub(&inv[s][c], &di);
            }
        }
    }
    Some(BlockMatrix {
        n,
        entries: inv.into_iter().flatten().collect(),
    })
}

/// `|M|_ij = a_ij − Σ_{p≠i, q≠j} a_iq ((M^{ij})⁻¹)_qp a_pj`.
pub fn quasideterminant_expand<C: DivisionCarrier>(
    carrier: &C,
    m: &BlockMatrix<C::Elem>,
    i: usize,
    j: usize,
) -> Result<C::Elem, QuasidetError> {
    m.check_index(i, j)?;
    let a_ij = m.get(i, j).clone();
    if m.n == 1 {
        return Ok(a_ij);
    }
    let minor_inv = eliminate_inverse(carrier, &m.minor(i, j))
        .ok_or(QuasidetError::NonInvertibleMinor { row: i, col: j })?;
    let rows: Vec<usize> = (0..m.n).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..m.n).filter(|&c| c != j).collect();
    let mut acc = a_ij;
    for (q, &col) in cols.iter().enumerate() {
        let left = m.get(i, col);
        for (p, &row) in rows.iter().enumerate() {
            let term = carrier.mul(&carrier.mul(left, minor_inv.get(q, p)), m.get(row, j));
            acc = carrier.sub(&acc, &term);
        }
    }
    Ok(acc)
}

fn block_mul<C: DivisionCarrier>(
    c: &C,
    a: &BlockMatrix<C::Elem>,
    b: &BlockMatrix<C::Elem>,
) -> BlockMatrix<C::Elem> {
    BlockMatrix::from_fn(a.n, |i, j| {
        (0..a.n).fold(c.zero(), |acc, k| c.add(&acc, &c.mul(a.get(i, k), b.get(k, j))))
    })
}

/// Rectangular blocks are kept as row-major vectors with explicit shape.
#[derive(Clone)]
struct Rect<E> {
    r: usize,
    c: usize,
    e: Vec<E>,
}

impl<E: Clone> Rect<E> {
    fn from_square(m: &BlockMatrix<E>) -> Self {
        Rect {
            r: m.n,
            c: m.n,
            e: m.entries.clone(),
        }
    }

    fn cut(m: &BlockMatrix<E>, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut e = Vec::new();
        for i in rows.clone() {
            for j in cols.clone() {
                e.push(m.get(i, j).clone());
            }
        }
        Rect {
            r: rows.len(),
            c: cols.len(),
            e,
        }
    }

    fn at(&self, i: usize, j: usize) -> &E {
        &self.e[i * self.c + j]
    }

    fn square(self) -> BlockMatrix<E> {
        debug_assert_eq!(self.r, self.c);
        BlockMatrix {
            n: self.r,
            entries: self.e,
        }
    }
}

fn rmul<C: DivisionCarrier>(c: &C, a: &Rect<C::Elem>, b: &Rect<C::Elem>) -> Rect<C::Elem> {
    let mut e = Vec::with_capacity(a.r * b.c);
    for i in 0..a.r {
        for j in 0..b.c {
            e.push((0..a.c).fold(c.zero(), |acc, k| c.add(&acc, &c.mul(a.at(i, k), b.at(k, j)))));
        }
    }
    Rect { r: a.r, c: b.c, e }
}

fn rsub<C: DivisionCarrier>(c: &C, a: &Rect<C::Elem>, b: &Rect<C::Elem>) -> Rect<C::Elem> {
    Rect {
        r: a.r,
        c: a.c,
        e: a.e.iter().zip(&b.e).map(|(x, y)| c.sub(x, y)).collect(),
    }
}

fn radd<C: DivisionCarrier>(c: &C, a: &Rect<C::Elem>, b: &Rect<C::Elem>) -> Rect<C::Elem> {
    Rect {
        r: a.r,
        c: a.c,
        e: a.e.iter().zip(&b.e).map(|(x, y)| c.add(x, y)).collect(),
    }
}

fn rneg<C: DivisionCarrier>(c: &C, a: &Rect<C::Elem>) -> Rect<C::Elem> {
    Rect {
        r: a.r,
        c: a.c,
        e: a.e.iter().map(|x| c.neg(x)).collect(),
    }
}

fn assemble<E: Clone>(tl: Rect<E>, tr: Rect<E>, bl: Rect<E>, br: Rect<E>) -> BlockMatrix<E> {
    let n = tl.r + bl.r;
    BlockMatrix::from_fn(n, |i, j| {
        match (i < tl.r, j < tl.c) {
            (true, true) => tl.at(i, j),
            (true, false) => tr.at(i, j - tl.c),
            (false, true) => bl.at(i - tl.r, j),
            (false, false) => br.at(i - tl.r, j - tl.c),
        }
        .clone()
    })
}

/// `M = [[A, B], [C, D]]`; tries the Schur complement of `A`, then of `D`.
fn block_inverse_once<C: DivisionCarrier>(
    c: &C,
    m: &BlockMatrix<C::Elem>,
) -> Option<BlockMatrix<C::Elem>> {
    let n = m.n;
    if n == 1 {
        let x = c.inv(m.get(0, 0))?;
        return Some(BlockMatrix {
            n: 1,
            entries: vec![x],
        });
    }
    let h = n / 2;
    let a = Rect::cut(m, 0..h, 0..h);
    let b = Rect::cut(m, 0..h, h..n);
    let cc = Rect::cut(m, h..n, 0..h);
    let d = Rect::cut(m, h..n, h..n);

    if let Some(ai) = block_inverse(c, &a.clone().square()).map(|x| Rect::from_square(&x)) {
        let ai_b = rmul(c, &ai, &b);
        let c_ai = rmul(c, &cc, &ai);
        let s = rsub(c, &d, &rmul(c, &cc, &ai_b));
        if let Some(si) = block_inverse(c, &s.square()).map(|x| Rect::from_square(&x)) {
            let ai_b_si = rmul(c, &ai_b, &si);
            let tl = radd(c, &ai, &rmul(c, &ai_b_si, &c_ai));
            let tr = rneg(c, &ai_b_si);
            let bl = rneg(c, &rmul(c, &si, &c_ai));
            return Some(assemble(tl, tr, bl, si));
        }
    }
    // (A − B D⁻¹ C)⁻¹ in the top-left corner.
    let di = Rect::from_square(&block_inverse(c, &d.square())?);
    let b_di = rmul(c, &b, &di);
    let di_c = rmul(c, &di, &cc);
    let t = rsub(c, &a, &rmul(c, &b_di, &cc));
    let ti = Rect::from_square(&block_inverse(c, &t.square())?);
    let ti_b_di = rmul(c, &ti, &b_di);
    let tr = rneg(c, &ti_b_di);
    let bl = rneg(c, &rmul(c, &di_c, &ti));
    let br = radd(c, &di, &rmul(c, &di_c, &ti_b_di));
    Some(assemble(ti, tr, bl, br))
}

/// Recursive block inverse. When neither diagonal block admits a Schur
/// step, rows are cyclically shifted (`(PM)⁻¹P` recovers `M⁻¹`).
pub fn block_inverse<C: DivisionCarrier>(
    c: &C,
    m: &BlockMatrix<C::Elem>,
) -> Option<BlockMatrix<C::Elem>> {
    let n = m.n;
    for shift in 0..n {
        let perm: Vec<usize> = (0..n).map(|r| (r + shift) % n).collect();
        let ident: Vec<usize> = (0..n).collect();
        let pm = m.permuted(&perm, &ident);
        if let Some(inv) = block_inverse_once(c, &pm) {
            // (PM)⁻¹ = M⁻¹ P⁻¹, so M⁻¹[r][perm[k]] = (PM)⁻¹[r][k].
            let mut out = inv.entries.clone();
            for r in 0..n {
                for k in 0..n {
                    out[r * n + perm[k]] = inv.get(r, k).clone();
                }
            }
            return Some(BlockMatrix { n, entries: out });
        }
    }
    None
}

/// `|M|_ij = ((M⁻¹)_ji)⁻¹` with `M⁻¹` from [`block_inverse`].
pub fn quasideterminant_via_inverse<C: DivisionCarrier>(
    carrier: &C,
    m: &BlockMatrix<C::Elem>,
    i: usize,
    j: usize,
) -> Result<C::Elem, QuasidetError> {
    m.check_index(i, j)?;
    let inv = block_inverse(carrier, m).ok_or(QuasidetError::NonInvertibleMatrix)?;
    carrier
        .inv(inv.get(j, i))
        .ok_or(QuasidetError::NonInvertibleEntry { row: j, col: i })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Expand,
    ViaInverse,
}

/// One evaluated position of [`all_quasideterminants`].
#[derive(Debug, Clone)]
pub struct Position<E> {
    pub row: usize,
    pub col: usize,
    pub value: Result<E, QuasidetError>,
}

/// All `n²` quasideterminants, evaluated in parallel, in row-major order.
pub fn all_quasideterminants<C: DivisionCarrier>(
    carrier: &C,
    m: &BlockMatrix<C::Elem>,
    method: Method,
) -> Vec<Position<C::Elem>> {
    let n = m.n;
    (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (row, col) = (k / n, k % n);
            let value = match method {
                Method::Expand => quasideterminant_expand(carrier, m, row, col),
                Method::ViaInverse => quasideterminant_via_inverse(carrier, m, row, col),
            };
            Position { row, col, value }
        })
        .collect()
}

/// Product of two block matrices over the carrier.
pub fn matrix_product<C: DivisionCarrier>(
    c: &C,
    a: &BlockMatrix<C::Elem>,
    b: &BlockMatrix<C::Elem>,
) -> BlockMatrix<C::Elem> {
    block_mul(c, a, b)
}

#[cfg(test)]
mod tests;
