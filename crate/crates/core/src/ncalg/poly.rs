use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coefficient::{CentralMonomial, CentralSymbol, Coefficient};
use super::word::{Alphabet, Generator, Word};
use super::NcError;
use crate::exact::GaussianRational;

/// Element of the free algebra over an [`Alphabet`] with [`Coefficient`] scalars.
///
/// Scalars are central, so `q·w` means the same on either side of a word.
#[derive(Clone)]
pub struct NCPolynomial {
    alphabet: Arc<Alphabet>,
    terms: BTreeMap<Word, Coefficient>,
}

impl PartialEq for NCPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_alphabet(&self.alphabet, &other.alphabet) && self.terms == other.terms
    }
}

impl Eq for NCPolynomial {}

fn same_alphabet(a: &Arc<Alphabet>, b: &Arc<Alphabet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl NCPolynomial {
    pub fn zero(alphabet: &Arc<Alphabet>) -> Self {
        NCPolynomial {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Arc<Alphabet>) -> Self {
        Self::constant(alphabet, Coefficient::one())
    }

    pub fn constant(alphabet: &Arc<Alphabet>, c: Coefficient) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn generator(alphabet: &Arc<Alphabet>, g: Generator) -> Self {
        Self::monomial(alphabet, Word::single(g), Coefficient::one())
    }

    pub fn word(alphabet: &Arc<Alphabet>, gens: &[Generator]) -> Self {
        Self::monomial(alphabet, Word(gens.to_vec()), Coefficient::one())
    }

    pub fn monomial(alphabet: &Arc<Alphabet>, w: Word, c: Coefficient) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(w, &c);
        p
    }

    pub fn from_terms(
        alphabet: &Arc<Alphabet>,
        terms: impl IntoIterator<Item = (Word, Coefficient)>,
    ) -> Self {
        let mut p = Self::zero(alphabet);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Adds `c·w` in place, dropping the word if its coefficient cancels.
    pub fn add_term(&mut self, w: Word, c: &Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coefficient)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Coefficient> {
        self.terms
    }

    pub fn num_words(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Coefficient {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// `true` when only the empty word occurs, i.e. the value is a pure coefficient.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(Word::is_empty)
    }

    pub fn as_coefficient(&self) -> Option<Coefficient> {
        self.is_central().then(|| self.coefficient(&Word::empty()))
    }

    pub fn contains_generator(&self, g: Generator) -> bool {
        self.terms.keys().any(|w| w.contains(g))
    }

    pub fn mentions(&self, s: CentralSymbol) -> bool {
        self.terms.values().any(|c| c.mentions(s))
    }

    fn check(&self, o: &Self) -> Result<(), NcError> {
        if same_alphabet(&self.alphabet, &o.alphabet) {
            Ok(())
        } else {
            Err(NcError::AlphabetMismatch)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, NcError> {
        self.check(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, NcError> {
        self.try_add(&o.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        self.scale(&Coefficient::int(-1))
    }

    /// Multiplies by a central coefficient.
    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (w, d) in &self.terms {
            out.add_term(w.clone(), &d.mul(c));
        }
        out
    }

    pub fn scale_rational(&self, q: &GaussianRational) -> Self {
        self.scale(&Coefficient::scalar(q.clone()))
    }

    /// Applies a map to every coefficient, keeping words.
    pub fn map_coefficients(&self, f: impl Fn(&Coefficient) -> Coefficient) -> Self {
        let mut out = Self::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c));
        }
        out
    }

    /// Formal Laurent derivative with respect to the central symbol λ.
    pub fn lambda_derivative(&self) -> Self {
        self.map_coefficients(Coefficient::lambda_derivative)
    }

    /// Sets a central symbol to zero.
    pub fn vanish_symbol(&self, s: CentralSymbol) -> Self {
        self.map_coefficients(|c| c.vanish(s))
    }

    /// Replaces every occurrence of `g` by `value`.
    pub fn substitute(&self, g: Generator, value: &NCPolynomial) -> Result<Self, NcError> {
        self.check(value)?;
        let mut out = Self::zero(&self.alphabet);
        for (w, c) in &self.terms {
            let mut acc = Self::constant(&self.alphabet, c.clone());
            for &h in &w.0 {
                acc = if h == g {
                    acc.nc_mul(value)?
                } else {
                    acc.nc_mul(&Self::generator(&self.alphabet, h))?
                };
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Free (concatenation) product; the result is not rewritten.
    pub fn nc_mul(&self, o: &Self) -> Result<Self, NcError> {
        self.check(o)?;
        let mut out = Self::zero(&self.alphabet);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                out.add_term(w1.concat(w2), &c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// `pq − qp`.
    pub fn commutator(&self, o: &Self) -> Result<Self, NcError> {
        self.nc_mul(o)?.try_sub(&o.nc_mul(self)?)
    }

    /// `pq + qp`.
    pub fn anticommutator(&self, o: &Self) -> Result<Self, NcError> {
        self.nc_mul(o)?.try_add(&o.nc_mul(self)?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.alphabet);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Number of (word, central monomial) pairs.
    pub fn num_terms(&self) -> usize {
        self.terms.values().map(Coefficient::len).sum()
    }

    /// Expanded (word, monomial, rational) triples in canonical order.
    pub fn expanded(&self) -> Vec<(&Word, &CentralMonomial, &GaussianRational)> {
        self.terms
            .iter()
            .flat_map(|(w, c)| c.terms().map(move |(m, q)| (w, m, q)))
            .collect()
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPolynomial({self})")
    }
}

// Operators are shorthands for the checked methods and panic on mixed alphabets.
impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, o: &NCPolynomial) -> NCPolynomial {
        self.try_add(o).expect("polynomials over different alphabets")
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, o: &NCPolynomial) -> NCPolynomial {
        self.try_sub(o).expect("polynomials over different alphabets")
    }
}

impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, o: &NCPolynomial) -> NCPolynomial {
        self.nc_mul(o).expect("polynomials over different alphabets")
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.neg_ref()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for NCPolynomial {
            type Output = NCPolynomial;
            fn $m(self, o: NCPolynomial) -> NCPolynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
