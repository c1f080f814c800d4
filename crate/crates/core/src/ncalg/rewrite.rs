//! Oriented two-letter rewrite rules and reduction to normal form.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::coefficient::Coefficient;
use super::poly::NCPolynomial;
use super::word::{std_gens::*, Alphabet, Generator, Word};
use super::NcError;

/// Which reducible position is rewritten first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: (Generator, Generator),
    pub rhs: NCPolynomial,
}

/// A set of rules `g·h → p` where every word of `p` is strictly below `gh` in
/// the degree-lexicographic word order. Inverse pairs declared by the alphabet
/// annihilate (`g·g⁻¹ → 1`) unless the system is built without them.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Arc<Alphabet>,
    rules: BTreeMap<(Generator, Generator), NCPolynomial>,
    names: BTreeMap<(Generator, Generator), String>,
}

/// Two reductions of an overlap word `abc` that end in different normal forms.
#[derive(Debug, Clone)]
pub struct CriticalPair {
    pub overlap: Word,
    pub via_left: NCPolynomial,
    pub via_right: NCPolynomial,
}

impl RewriteSystem {
    /// Only the inverse-pair annihilation rules of the alphabet.
    pub fn annihilation_only(alphabet: &Arc<Alphabet>) -> Self {
        let mut rs = RewriteSystem {
            alphabet: alphabet.clone(),
            rules: BTreeMap::new(),
            names: BTreeMap::new(),
        };
        let one = NCPolynomial::one(alphabet);
        for g in alphabet.generators() {
            if let Some(h) = alphabet.inverse_of(g) {
                rs.rules.insert((g, h), one.clone());
                rs.names.insert((g, h), "inverse".into());
            }
        }
        rs
    }

    /// Rule set with no rules at all (the free algebra).
    pub fn free(alphabet: &Arc<Alphabet>) -> Self {
        RewriteSystem {
            alphabet: alphabet.clone(),
            rules: BTreeMap::new(),
            names: BTreeMap::new(),
        }
    }

    /// Adds `lhs → rhs`, rejecting rules that do not decrease the word order.
    pub fn with_rule(
        mut self,
        name: &str,
        lhs: (Generator, Generator),
        rhs: NCPolynomial,
    ) -> Result<Self, NcError> {
        if !Arc::ptr_eq(rhs.alphabet(), &self.alphabet) && **rhs.alphabet() != *self.alphabet {
            return Err(NcError::AlphabetMismatch);
        }
        let lhs_word = Word(vec![lhs.0, lhs.1]);
        if let Some((w, _)) = rhs.terms().find(|(w, _)| **w >= lhs_word) {
            return Err(NcError::NonDecreasingRule {
                lhs: lhs_word.display(&self.alphabet).to_string(),
                word: w.display(&self.alphabet).to_string(),
            });
        }
        self.rules.insert(lhs, rhs);
        self.names.insert(lhs, name.to_string());
        Ok(self)
    }

    pub fn without_rule(mut self, lhs: (Generator, Generator)) -> Self {
        self.rules.remove(&lhs);
        self.names.remove(&lhs);
        self
    }

    /// `z·f2 → f2·z + ½iħ·f2` and `f2'·f2 → f2·f2' − 4λħ`.
    pub fn quantum(alphabet: &Arc<Alphabet>) -> Self {
        Self::annihilation_only(alphabet)
            .with_rule("z-f2", (Z, F2), z_f2_rhs(alphabet))
            .and_then(|rs| rs.with_rule("f2'-f2", (F2P, F2), f2p_f2_rhs(alphabet)))
            .expect("quantum rules are oriented")
    }

    /// [`Self::quantum`] plus the opt-in `z·f2' → f2'·z + ½iħ·f2'`.
    pub fn quantum_with_z_f2prime(alphabet: &Arc<Alphabet>) -> Self {
        let a = alphabet;
        let f2p = NCPolynomial::generator(a, F2P);
        let rhs = &NCPolynomial::word(a, &[F2P, Z]) + &f2p.scale(&half_i_hbar());
        Self::quantum(a)
            .with_rule("z-f2'", (Z, F2P), rhs)
            .expect("z-f2' rule is oriented")
    }

    /// `f0·f2 → f2·f0 − 2λħ` and `f2·f1 → f1·f2 − 2λħ`.
    pub fn symmetric(alphabet: &Arc<Alphabet>) -> Self {
        let a = alphabet;
        let shift = NCPolynomial::constant(a, minus_two_lambda_hbar());
        Self::annihilation_only(a)
            .with_rule("f0-f2", (F0, F2), &NCPolynomial::word(a, &[F2, F0]) + &shift)
            .and_then(|rs| rs.with_rule("f2-f1", (F2, F1), &NCPolynomial::word(a, &[F1, F2]) + &shift))
            .expect("symmetric rules are oriented")
    }

    /// Inverse annihilation plus the substitution `chi·phi^-1 → Delta`.
    pub fn riccati(alphabet: &Arc<Alphabet>) -> Self {
        Self::annihilation_only(alphabet)
            .with_rule("Delta", (CHI, PHI_INV), NCPolynomial::generator(alphabet, DELTA))
            .expect("Delta rule is oriented")
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.rules.iter().map(|(lhs, rhs)| Rule {
            lhs: *lhs,
            rhs: rhs.clone(),
        })
    }

    pub fn rule_name(&self, lhs: (Generator, Generator)) -> Option<&str> {
        self.names.get(&lhs).map(String::as_str)
    }

    fn redex(&self, w: &Word, strategy: Strategy) -> Option<usize> {
        let n = w.len();
        if n < 2 {
            return None;
        }
        let hit = |k: &usize| self.rules.contains_key(&(w.0[*k], w.0[*k + 1]));
        match strategy {
            Strategy::Leftmost => (0..n - 1).find(hit),
            Strategy::Rightmost => (0..n - 1).rev().find(hit),
        }
    }

    /// Reduces to normal form and reports the number of single-step rewrites.
    pub fn normal_form_counted(
        &self,
        p: &NCPolynomial,
        strategy: Strategy,
    ) -> Result<(NCPolynomial, usize), NcError> {
        if !Arc::ptr_eq(p.alphabet(), &self.alphabet) && **p.alphabet() != *self.alphabet {
            return Err(NcError::AlphabetMismatch);
        }
        // Every rewrite replaces a word by strictly smaller ones, so draining the
        // largest pending word first visits each word at most once.
        let mut pending: BTreeMap<Word, Coefficient> = p.clone().into_terms();
        let mut done = NCPolynomial::zero(&self.alphabet);
        let mut steps = 0usize;
        while let Some((w, c)) = pending.pop_last() {
            let Some(k) = self.redex(&w, strategy) else {
                done.add_term(w, &c);
                continue;
            };
            steps += 1;
            let rhs = &self.rules[&(w.0[k], w.0[k + 1])];
            let prefix = Word(w.0[..k].to_vec());
            let suffix = Word(w.0[k + 2..].to_vec());
            for (rw, rc) in rhs.terms() {
                let nw = prefix.concat(rw).concat(&suffix);
                let cancelled = {
                    let slot = pending.entry(nw.clone()).or_default();
                    slot.add_assign(&c.mul(rc));
                    slot.is_zero()
                };
                if cancelled {
                    pending.remove(&nw);
                }
            }
        }
        Ok((done, steps))
    }

    pub fn normal_form_with(
        &self,
        p: &NCPolynomial,
        strategy: Strategy,
    ) -> Result<NCPolynomial, NcError> {
        self.normal_form_counted(p, strategy).map(|(q, _)| q)
    }

    pub fn is_irreducible(&self, p: &NCPolynomial) -> bool {
        p.terms().all(|(w, _)| self.redex(w, Strategy::Leftmost).is_none())
    }

    /// All overlaps `abc` with rules on both `ab` and `bc` whose two reductions
    /// disagree. Empty means the system is confluent.
    pub fn unresolved_critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for &(a, b) in self.rules.keys() {
            for &(b2, c) in self.rules.keys() {
                if b != b2 {
                    continue;
                }
                let overlap = Word(vec![a, b, c]);
                let a_poly = NCPolynomial::generator(&self.alphabet, a);
                let c_poly = NCPolynomial::generator(&self.alphabet, c);
                let left = &self.rules[&(a, b)] * &c_poly;
                let right = &a_poly * &self.rules[&(b, c)];
                let via_left = self
                    .normal_form_with(&left, Strategy::Leftmost)
                    .expect("same alphabet");
                let via_right = self
                    .normal_form_with(&right, Strategy::Leftmost)
                    .expect("same alphabet");
                if via_left != via_right {
                    out.push(CriticalPair {
                        overlap,
                        via_left,
                        via_right,
                    });
                }
            }
        }
        out
    }
}

/// Reduces `p` to normal form under `rules`, rewriting leftmost redexes first.
pub fn normal_form(p: &NCPolynomial, rules: &RewriteSystem) -> Result<NCPolynomial, NcError> {
    rules.normal_form_with(p, Strategy::Leftmost)
}

fn half_i_hbar() -> Coefficient {
    Coefficient::ratio(1, 2)
        .mul(&Coefficient::i())
        .mul(&Coefficient::hbar())
}

fn minus_two_lambda_hbar() -> Coefficient {
    Coefficient::int(-2)
        .mul(&Coefficient::lambda(1))
        .mul(&Coefficient::hbar())
}

fn z_f2_rhs(a: &Arc<Alphabet>) -> NCPolynomial {
    &NCPolynomial::word(a, &[F2, Z]) + &NCPolynomial::generator(a, F2).scale(&half_i_hbar())
}

fn f2p_f2_rhs(a: &Arc<Alphabet>) -> NCPolynomial {
    let shift = Coefficient::int(-4)
        .mul(&Coefficient::lambda(1))
        .mul(&Coefficient::hbar());
    &NCPolynomial::word(a, &[F2, F2P]) + &NCPolynomial::constant(a, shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alph() -> Arc<Alphabet> {
        Alphabet::standard()
    }

    #[test]
    fn z_f2_commutes_with_quantum_shift() {
        let a = alph();
        let q = RewriteSystem::quantum(&a);
        let nf = normal_form(&NCPolynomial::word(&a, &[Z, F2]), &q).unwrap();
        assert_eq!(nf, z_f2_rhs(&a));
    }

    #[test]
    fn z_squared_f2_hand_oracle() {
        // k = ½iħ: z z f2 = f2 z² + 2k f2 z + k² f2
        let a = alph();
        let q = RewriteSystem::quantum(&a);
        let nf = normal_form(&NCPolynomial::word(&a, &[Z, Z, F2]), &q).unwrap();
        let hbar = Coefficient::hbar();
        let expected = NCPolynomial::from_terms(
            &a,
            [
                (Word(vec![F2, Z, Z]), Coefficient::one()),
                (Word(vec![F2, Z]), Coefficient::i().mul(&hbar)),
                (Word(vec![F2]), Coefficient::ratio(-1, 4).mul(&hbar).mul(&hbar)),
            ],
        );
        assert_eq!(nf, expected);
    }

    #[test]
    fn inverse_pairs_annihilate() {
        let a = alph();
        let q = RewriteSystem::quantum(&a);
        let nf = normal_form(&NCPolynomial::word(&a, &[PHI, PHI_INV]), &q).unwrap();
        assert_eq!(nf, NCPolynomial::one(&a));
        let nf = normal_form(&NCPolynomial::word(&a, &[CHI_INV, CHI, F2]), &q).unwrap();
        assert_eq!(nf, NCPolynomial::generator(&a, F2));
    }

    #[test]
    fn increasing_rule_is_rejected() {
        let a = alph();
        let err = RewriteSystem::free(&a)
            .with_rule("bad", (F2, Z), NCPolynomial::word(&a, &[Z, F2]))
            .unwrap_err();
        assert!(matches!(err, NcError::NonDecreasingRule { .. }));
        let err = RewriteSystem::free(&a)
            .with_rule("longer", (F2, F2), NCPolynomial::word(&a, &[F1, F1, F1]))
            .unwrap_err();
        assert!(matches!(err, NcError::NonDecreasingRule { .. }));
    }

    #[test]
    fn quantum_has_no_critical_pairs() {
        assert!(RewriteSystem::quantum(&alph()).unresolved_critical_pairs().is_empty());
    }

    #[test]
    fn symmetric_has_one_unresolved_overlap() {
        // f0·f2·f1 reduces to f2·f0·f1 − 2λħ·f1 or to f0·f1·f2 − 2λħ·f0; nothing
        // relates f0 and f1, so the two normal forms stay apart.
        let a = alph();
        let pairs = RewriteSystem::symmetric(&a).unresolved_critical_pairs();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].overlap, Word(vec![F0, F2, F1]));
    }

    #[test]
    fn opt_in_z_f2prime_rule_breaks_confluence() {
        // z·f2'·f2: the two routes differ by −4λħ(k + κ) with k = κ = ½iħ.
        let pairs = RewriteSystem::quantum_with_z_f2prime(&alph()).unresolved_critical_pairs();
        assert_eq!(pairs.len(), 1);
        let diff = &pairs[0].via_left - &pairs[0].via_right;
        assert!(diff.is_central());
    }

    #[test]
    fn step_count_is_finite_and_reported() {
        let a = alph();
        let q = RewriteSystem::quantum(&a);
        let (_, steps) = q
            .normal_form_counted(&NCPolynomial::word(&a, &[Z, Z, F2]), Strategy::Leftmost)
            .unwrap();
        assert_eq!(steps, 3);
    }
}
