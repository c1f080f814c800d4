//! Central coefficients: Gaussian rationals times Laurent monomials in the
//! central symbols ħ, c, λ (and the unused symmetric-form constants α₀, α₁).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentralSymbol {
    Hbar,
    C,
    Lambda,
    Alpha0,
    Alpha1,
}

impl CentralSymbol {
    pub const ALL: [CentralSymbol; 5] = [
        CentralSymbol::Hbar,
        CentralSymbol::C,
        CentralSymbol::Lambda,
        CentralSymbol::Alpha0,
        CentralSymbol::Alpha1,
    ];

    /// Token used in the canonical text form.
    pub fn token(self) -> &'static str {
        match self {
            CentralSymbol::Hbar => "h",
            CentralSymbol::C => "c",
            CentralSymbol::Lambda => "l",
            CentralSymbol::Alpha0 => "a0",
            CentralSymbol::Alpha1 => "a1",
        }
    }

    pub fn from_token(t: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.token() == t)
    }

    /// Only λ may carry a negative exponent.
    pub fn allows_negative(self) -> bool {
        matches!(self, CentralSymbol::Lambda)
    }
}

/// Exponent vector over the central symbols, ordered (ħ, c, λ, α₀, α₁).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CentralMonomial {
    exps: [i32; 5],
}

impl CentralMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn exponent(&self, s: CentralSymbol) -> i32 {
        self.exps[s as usize]
    }

    pub fn with(mut self, s: CentralSymbol, e: i32) -> Self {
        assert!(e >= 0 || s.allows_negative(), "negative exponent on {s:?}");
        self.exps[s as usize] = e;
        self
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps) {
            *a += b;
        }
        CentralMonomial { exps }
    }
}

impl fmt::Display for CentralMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in CentralSymbol::ALL {
            let e = self.exponent(s);
            if e != 0 {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}^{}", s.token(), e)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// A finite sum `Σ q_m · m` with `q_m` a nonzero Gaussian rational and `m` a
/// central monomial. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coefficient {
    terms: BTreeMap<CentralMonomial, GaussianRational>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(GaussianRational::one())
    }

    pub fn scalar(q: GaussianRational) -> Self {
        Self::term(q, CentralMonomial::one())
    }

    pub fn term(q: GaussianRational, m: CentralMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        Coefficient { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(GaussianRational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::scalar(GaussianRational::ratio(n, d))
    }

    pub fn i() -> Self {
        Self::scalar(GaussianRational::i())
    }

    /// `s^e` with unit coefficient.
    pub fn symbol(s: CentralSymbol, e: i32) -> Self {
        Self::term(GaussianRational::one(), CentralMonomial::one().with(s, e))
    }

    pub fn hbar() -> Self {
        Self::symbol(CentralSymbol::Hbar, 1)
    }

    pub fn c() -> Self {
        Self::symbol(CentralSymbol::C, 1)
    }

    pub fn lambda(e: i32) -> Self {
        Self::symbol(CentralSymbol::Lambda, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, q)| m.is_one() && q.is_one())
    }

    /// The rational part when the coefficient has no central symbols.
    pub fn as_scalar(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, q) = self.terms.iter().next()?;
                m.is_one().then(|| q.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CentralMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mentions(&self, s: CentralSymbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) != 0)
    }

    fn accumulate(&mut self, m: CentralMonomial, q: &GaussianRational) {
        if q.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(q.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (m, q) in &o.terms {
            self.accumulate(*m, q);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Coefficient {
            terms: self.terms.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Coefficient::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &o.terms {
                out.accumulate(m1.mul(m2), &(q1 * q2));
            }
        }
        out
    }

    pub fn scale(&self, q: &GaussianRational) -> Self {
        let mut out = Coefficient::zero();
        for (m, p) in &self.terms {
            out.accumulate(*m, &(p * q));
        }
        out
    }

    /// Formal Laurent derivative in λ: `∂(λⁿ) = n λⁿ⁻¹`, including `n < 0`.
    pub fn lambda_derivative(&self) -> Self {
        let mut out = Coefficient::zero();
        for (m, q) in &self.terms {
            let n = m.exponent(CentralSymbol::Lambda);
            if n != 0 {
                let m2 = m.with(CentralSymbol::Lambda, n - 1);
                out.accumulate(m2, &(q * &GaussianRational::from_int(n as i64)));
            }
        }
        out
    }

    /// Sets a nonnegative-degree symbol to zero (drops every term mentioning it).
    pub fn vanish(&self, s: CentralSymbol) -> Self {
        Coefficient {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(s) == 0)
                .map(|(m, q)| (*m, q.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, q)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({q})")?;
            if !m.is_one() {
                write!(f, " {m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_derivative_handles_negative_powers() {
        // d/dλ (¼ c λ⁻¹) = -¼ c λ⁻²
        let a = Coefficient::ratio(1, 4).mul(&Coefficient::c()).mul(&Coefficient::lambda(-1));
        let expected = Coefficient::ratio(-1, 4)
            .mul(&Coefficient::c())
            .mul(&Coefficient::lambda(-2));
        assert_eq!(a.lambda_derivative(), expected);
        assert!(Coefficient::c().lambda_derivative().is_zero());
    }

    #[test]
    fn cancellation_removes_entries() {
        let x = Coefficient::hbar().add(&Coefficient::hbar().neg());
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn display_orders_symbols() {
        let x = Coefficient::ratio(1, 2)
            .mul(&Coefficient::i())
            .mul(&Coefficient::hbar())
            .mul(&Coefficient::lambda(-1));
        assert_eq!(x.to_string(), "(0+1/2i) h^1 l^-1");
    }
}
