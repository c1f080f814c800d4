use std::fmt;
use std::sync::Arc;

use crate::ncalg::{Alphabet, Coefficient, NCPolynomial, NcError};

/// 2×2 matrix with noncommutative polynomial entries. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    e: [[NCPolynomial; 2]; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Matrix2 {
    pub fn new(a11: NCPolynomial, a12: NCPolynomial, a21: NCPolynomial, a22: NCPolynomial) -> Self {
        Matrix2 {
            e: [[a11, a12], [a21, a22]],
        }
    }

    pub fn zero(a: &Arc<Alphabet>) -> Self {
        let z = NCPolynomial::zero(a);
        Self::new(z.clone(), z.clone(), z.clone(), z)
    }

    /// `p · I`.
    pub fn identity_times(p: &NCPolynomial) -> Self {
        let z = NCPolynomial::zero(p.alphabet());
        Self::new(p.clone(), z.clone(), z, p.clone())
    }

    /// `p · σ` for σ₁ = ((0,1),(1,0)), σ₂ = ((0,−i),(i,0)), σ₃ = ((1,0),(0,−1)).
    pub fn pauli_times(p: &NCPolynomial, which: Pauli) -> Self {
        let z = NCPolynomial::zero(p.alphabet());
        let i = Coefficient::i();
        match which {
            Pauli::X => Self::new(z.clone(), p.clone(), p.clone(), z),
            Pauli::Y => Self::new(z.clone(), p.scale(&i.neg()), p.scale(&i), z),
            Pauli::Z => Self::new(p.clone(), z.clone(), z, -p),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> &NCPolynomial {
        &self.e[row][col]
    }

    pub fn entries(&self) -> impl Iterator<Item = &NCPolynomial> {
        self.e.iter().flatten()
    }

    pub fn map(&self, f: impl Fn(&NCPolynomial) -> NCPolynomial) -> Self {
        Self::new(
            f(&self.e[0][0]),
            f(&self.e[0][1]),
            f(&self.e[1][0]),
            f(&self.e[1][1]),
        )
    }

    pub fn try_map(
        &self,
        f: impl Fn(&NCPolynomial) -> Result<NCPolynomial, NcError>,
    ) -> Result<Self, NcError> {
        Ok(Self::new(
            f(&self.e[0][0])?,
            f(&self.e[0][1])?,
            f(&self.e[1][0])?,
            f(&self.e[1][1])?,
        ))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &self.e[0][0] + &o.e[0][0],
            &self.e[0][1] + &o.e[0][1],
            &self.e[1][0] + &o.e[1][0],
            &self.e[1][1] + &o.e[1][1],
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(
            &self.e[0][0] - &o.e[0][0],
            &self.e[0][1] - &o.e[0][1],
            &self.e[1][0] - &o.e[1][0],
            &self.e[1][1] - &o.e[1][1],
        )
    }

    /// Matrix product; entry products keep their left-to-right order.
    pub fn mul(&self, o: &Self) -> Self {
        let entry = |r: usize, c: usize| {
            &(&self.e[r][0] * &o.e[0][c]) + &(&self.e[r][1] * &o.e[1][c])
        };
        Self::new(entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1))
    }

    /// `self·o − o·self`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn trace(&self) -> NCPolynomial {
        &self.e[0][0] + &self.e[1][1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(NCPolynomial::is_zero)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[11] {} ; [12] {} ; [21] {} ; [22] {}",
            self.e[0][0], self.e[0][1], self.e[1][0], self.e[1][1]
        )
    }
}
