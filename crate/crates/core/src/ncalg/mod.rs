//! Exact noncommutative polynomial arithmetic.
//!
//! Polynomials live in the free algebra over a ranked [`Alphabet`] with
//! central [`Coefficient`]s (Gaussian rationals times Laurent monomials in
//! ħ, c, λ). Products are plain concatenation; relations enter only through
//! an explicit [`RewriteSystem`] and [`normal_form`].

mod coefficient;
mod derivation;
mod poly;
mod rewrite;
mod text;
mod word;

use thiserror::Error;

pub use coefficient::{CentralMonomial, CentralSymbol, Coefficient};
pub use derivation::{classical_limit, derive, DerivationTable};
pub use poly::NCPolynomial;
pub use rewrite::{normal_form, CriticalPair, RewriteSystem, Rule, Strategy};
pub use word::{std_gens, Alphabet, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NcError {
    #[error("configuration error: operands belong to different alphabets")]
    AlphabetMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("derivation error: no image declared for generator `{0}`")]
    MissingDerivation(String),
    #[error("rule {lhs} -> ... does not decrease the word order (offending word {word})")]
    NonDecreasingRule { lhs: String, word: String },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Free product `p·q`, not rewritten.
pub fn nc_mul(p: &NCPolynomial, q: &NCPolynomial) -> Result<NCPolynomial, NcError> {
    p.nc_mul(q)
}
