//! Canonical text form: `(a+bi) h^j c^k l^m * g1 * g2 + ...`, terms in word
//! order and, within a word, in central-monomial order. The zero polynomial
//! is `0`.

use std::fmt;
use std::sync::Arc;

use super::coefficient::{CentralMonomial, CentralSymbol, Coefficient};
use super::poly::NCPolynomial;
use super::word::{Alphabet, Word};
use super::NcError;
use crate::exact::GaussianRational;

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.expanded();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let a = self.alphabet();
        for (k, (w, m, q)) in terms.into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({q})")?;
            if !m.is_one() {
                write!(f, " {m}")?;
            }
            for g in &w.0 {
                write!(f, " * {}", a.name(*g))?;
            }
        }
        Ok(())
    }
}

impl NCPolynomial {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical text form over `alphabet`.
    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self, NcError> {
        let text = text.trim();
        let mut out = NCPolynomial::zero(alphabet);
        if text == "0" {
            return Ok(out);
        }
        for term in text.split(" + ") {
            let mut parts = term.split(" * ");
            let head = parts.next().unwrap_or_default().trim();
            let coeff = parse_coefficient_head(head)?;
            let mut gens = Vec::new();
            for name in parts {
                gens.push(alphabet.lookup(name.trim())?);
            }
            out.add_term(Word(gens), &coeff);
        }
        Ok(out)
    }
}

fn parse_coefficient_head(head: &str) -> Result<Coefficient, NcError> {
    let bad = || NcError::Parse(format!("malformed term head `{head}`"));
    let rest = head.strip_prefix('(').ok_or_else(bad)?;
    let close = rest.find(')').ok_or_else(bad)?;
    let q: GaussianRational = rest[..close]
        .parse()
        .map_err(|e: crate::exact::ParseExactError| NcError::Parse(e.to_string()))?;
    let mut m = CentralMonomial::one();
    for tok in rest[close + 1..].split_whitespace() {
        let (sym, exp) = tok.split_once('^').ok_or_else(bad)?;
        let sym = CentralSymbol::from_token(sym).ok_or_else(bad)?;
        let exp: i32 = exp.parse().map_err(|_| bad())?;
        if exp < 0 && !sym.allows_negative() {
            return Err(bad());
        }
        m = m.with(sym, exp);
    }
    Ok(Coefficient::term(q, m))
}
