use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use crate::exact::GaussianRational;

/// Ring operations plus a partial inverse. Implementations are shared across
/// threads when all positions of a matrix are enumerated in parallel.
pub trait DivisionCarrier: Send + Sync {
    type Elem: Clone + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }
    /// Two-sided inverse, or `None` when `a` is (numerically) singular.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Size used to pick elimination pivots.
    fn magnitude(&self, a: &Self::Elem) -> f64;
    /// Max-norm distance, as a float, for reporting.
    fn distance(&self, a: &Self::Elem, b: &Self::Elem) -> f64;
    fn tolerance(&self) -> f64;
    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
}

/// The commutative field of Gaussian rationals, exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactField;

impl DivisionCarrier for ExactField {
    type Elem = GaussianRational;

    fn name(&self) -> &'static str {
        "exact"
    }
    fn zero(&self) -> GaussianRational {
        GaussianRational::zero()
    }
    fn one(&self) -> GaussianRational {
        GaussianRational::one()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn neg(&self, a: &GaussianRational) -> GaussianRational {
        -a
    }
    fn inv(&self, a: &GaussianRational) -> Option<GaussianRational> {
        a.inv()
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn magnitude(&self, a: &GaussianRational) -> f64 {
        let (re, im) = a.to_f64_pair();
        re.hypot(im)
    }
    fn distance(&self, a: &GaussianRational, b: &GaussianRational) -> f64 {
        let (re, im) = (a - b).to_f64_pair();
        re.abs().max(im.abs())
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
    fn approx_eq(&self, a: &GaussianRational, b: &GaussianRational) -> bool {
        a == b
    }
}

/// `d×d` complex matrices in double precision.
///
/// Inversion is LU with partial pivoting; a pivot below `tol` times the
/// largest entry magnitude counts as singular.
#[derive(Debug, Clone, Copy)]
pub struct ComplexMatrices {
    pub dim: usize,
    pub tol: f64,
}

impl ComplexMatrices {
    pub fn new(dim: usize) -> Self {
        ComplexMatrices { dim, tol: 1e-12 }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn scalar(&self, z: Complex64) -> DMatrix<Complex64> {
        DMatrix::from_diagonal_element(self.dim, self.dim, z)
    }
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Partial-pivot inverse with a singularity cutoff relative to the largest entry.
pub fn invert_matrix(m: &DMatrix<Complex64>, tol: f64) -> Option<DMatrix<Complex64>> {
    if !m.is_square() || m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return None;
    }
    let scale = max_abs(m);
    if scale == 0.0 {
        return None;
    }
    let lu = m.clone().lu();
    let min_pivot = lu
        .u()
        .diagonal()
        .iter()
        .fold(f64::INFINITY, |acc, z| acc.min(z.norm()));
    if min_pivot <= tol * scale {
        return None;
    }
    lu.try_inverse()
}

impl DivisionCarrier for ComplexMatrices {
    type Elem = DMatrix<Complex64>;

    fn name(&self) -> &'static str {
        "matrix"
    }
    fn zero(&self) -> DMatrix<Complex64> {
        DMatrix::zeros(self.dim, self.dim)
    }
    fn one(&self) -> DMatrix<Complex64> {
        DMatrix::identity(self.dim, self.dim)
    }
    fn add(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        a + b
    }
    fn sub(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        a - b
    }
    fn mul(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        a * b
    }
    fn neg(&self, a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        -a
    }
    fn inv(&self, a: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
        invert_matrix(a, self.tol)
    }
    fn is_zero(&self, a: &DMatrix<Complex64>) -> bool {
        a.iter().all(Complex64::is_zero)
    }
    fn magnitude(&self, a: &DMatrix<Complex64>) -> f64 {
        max_abs(a)
    }
    fn distance(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        max_abs(&(a - b))
    }
    fn tolerance(&self) -> f64 {
        self.tol
    }
    fn approx_eq(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
        self.distance(a, b) <= self.tol * (1.0 + max_abs(a).max(max_abs(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_matrix_has_no_inverse() {
        let c = ComplexMatrices::new(2);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[1.0, 2.0, 2.0, 4.0].map(|x| Complex64::new(x, 0.0)),
        );
        assert!(c.inv(&m).is_none());
        assert!(c.inv(&c.zero()).is_none());
    }

    #[test]
    fn inverse_is_two_sided() {
        let c = ComplexMatrices::new(2);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 1.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, -2.0),
                Complex64::new(3.0, 0.0),
            ],
        );
        let mi = c.inv(&m).unwrap();
        assert!(c.distance(&(&m * &mi), &c.one()) < 1e-14);
        assert!(c.distance(&(&mi * &m), &c.one()) < 1e-14);
    }
}
