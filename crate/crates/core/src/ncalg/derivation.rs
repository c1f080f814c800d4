use std::collections::BTreeMap;
use std::sync::Arc;

use super::coefficient::{CentralSymbol, Coefficient};
use super::poly::NCPolynomial;
use super::word::{std_gens::*, Alphabet, Generator, Word};
use super::NcError;

/// Images of generators under d/dz, extended to polynomials by linearity and
/// the Leibniz rule. Central symbols have zero derivative.
#[derive(Debug, Clone)]
pub struct DerivationTable {
    alphabet: Arc<Alphabet>,
    images: BTreeMap<Generator, NCPolynomial>,
}

impl DerivationTable {
    pub fn empty(alphabet: &Arc<Alphabet>) -> Self {
        DerivationTable {
            alphabet: alphabet.clone(),
            images: BTreeMap::new(),
        }
    }

    /// `z → 1`, `f2 → f2'`, `f2' → f2''`, the linear system
    /// `chi' = (−2iλ + f2) chi + f2 phi`, `phi' = f2 chi + (2iλ + f2) phi`,
    /// and `g⁻¹' = −g⁻¹ g' g⁻¹` for `chi`, `phi`.
    pub fn standard(alphabet: &Arc<Alphabet>) -> Self {
        let a = alphabet;
        let g = |x| NCPolynomial::generator(a, x);
        let two_i_lambda = Coefficient::int(2)
            .mul(&Coefficient::i())
            .mul(&Coefficient::lambda(1));
        let c = |k: &Coefficient| NCPolynomial::constant(a, k.clone());
        let d_chi = &(&(&c(&two_i_lambda.neg()) + &g(F2)) * &g(CHI)) + &(&g(F2) * &g(PHI));
        let d_phi = &(&g(F2) * &g(CHI)) + &(&(&c(&two_i_lambda) + &g(F2)) * &g(PHI));
        let d_chi_inv = -&(&(&g(CHI_INV) * &d_chi) * &g(CHI_INV));
        let d_phi_inv = -&(&(&g(PHI_INV) * &d_phi) * &g(PHI_INV));
        Self::empty(a)
            .with(Z, NCPolynomial::one(a))
            .with(F2, g(F2P))
            .with(F2P, g(F2PP))
            .with(CHI, d_chi)
            .with(PHI, d_phi)
            .with(CHI_INV, d_chi_inv)
            .with(PHI_INV, d_phi_inv)
    }

    pub fn with(mut self, g: Generator, image: NCPolynomial) -> Self {
        self.images.insert(g, image);
        self
    }

    /// Keeps only the entries for `keep`.
    pub fn restricted(&self, keep: &[Generator]) -> Self {
        DerivationTable {
            alphabet: self.alphabet.clone(),
            images: self
                .images
                .iter()
                .filter(|(g, _)| keep.contains(g))
                .map(|(g, p)| (*g, p.clone()))
                .collect(),
        }
    }

    pub fn image(&self, g: Generator) -> Option<&NCPolynomial> {
        self.images.get(&g)
    }
}

/// Leibniz-linear extension of `table` applied to `p`.
pub fn derive(p: &NCPolynomial, table: &DerivationTable) -> Result<NCPolynomial, NcError> {
    let a = p.alphabet();
    let mut out = NCPolynomial::zero(a);
    for (w, c) in p.terms() {
        for k in 0..w.len() {
            let g = w.0[k];
            let image = table
                .images
                .get(&g)
                .ok_or_else(|| NcError::MissingDerivation(a.name(g).to_string()))?;
            let left = NCPolynomial::monomial(a, Word(w.0[..k].to_vec()), c.clone());
            let right = NCPolynomial::word(a, &w.0[k + 1..]);
            out = out.try_add(&left.nc_mul(image)?.nc_mul(&right)?)?;
        }
    }
    Ok(out)
}

/// Commutative projection at ħ = 0: drops ħ-bearing terms, sorts each word
/// by generator rank and cancels declared inverse pairs.
pub fn classical_limit(p: &NCPolynomial) -> NCPolynomial {
    let a = p.alphabet();
    let mut out = NCPolynomial::zero(a);
    for (w, c) in p.terms() {
        let c = c.vanish(CentralSymbol::Hbar);
        if c.is_zero() {
            continue;
        }
        let mut counts = vec![0usize; a.len()];
        for g in &w.0 {
            counts[g.0 as usize] += 1;
        }
        for g in a.generators() {
            if let Some(h) = a.inverse_of(g) {
                if g < h {
                    let m = counts[g.0 as usize].min(counts[h.0 as usize]);
                    counts[g.0 as usize] -= m;
                    counts[h.0 as usize] -= m;
                }
            }
        }
        let sorted: Vec<Generator> = a
            .generators()
            .flat_map(|g| std::iter::repeat_n(g, counts[g.0 as usize]))
            .collect();
        out.add_term(Word(sorted), &c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::RewriteSystem;

    fn alph() -> Arc<Alphabet> {
        Alphabet::standard()
    }

    #[test]
    fn leibniz_on_square() {
        let a = alph();
        let t = DerivationTable::standard(&a);
        let d = derive(&NCPolynomial::word(&a, &[F2, F2]), &t).unwrap();
        let expected = &NCPolynomial::word(&a, &[F2P, F2]) + &NCPolynomial::word(&a, &[F2, F2P]);
        assert_eq!(d, expected);
    }

    #[test]
    fn z_derives_to_one() {
        let a = alph();
        let t = DerivationTable::standard(&a);
        let d = derive(&NCPolynomial::word(&a, &[Z, F2]), &t).unwrap();
        let expected = &NCPolynomial::generator(&a, F2) + &NCPolynomial::word(&a, &[Z, F2P]);
        assert_eq!(d, expected);
    }

    #[test]
    fn inverse_rule_composes_with_linear_system() {
        let a = alph();
        let t = DerivationTable::standard(&a);
        let d = derive(&NCPolynomial::generator(&a, PHI_INV), &t).unwrap();
        let g = |x| NCPolynomial::generator(&a, x);
        let two_i_lambda = NCPolynomial::constant(
            &a,
            Coefficient::int(2).mul(&Coefficient::i()).mul(&Coefficient::lambda(1)),
        );
        let phi_prime = &(&g(F2) * &g(CHI)) + &(&(&two_i_lambda + &g(F2)) * &g(PHI));
        let expected = -&(&(&g(PHI_INV) * &phi_prime) * &g(PHI_INV));
        assert_eq!(d, expected);
    }

    #[test]
    fn missing_entry_names_generator() {
        let a = alph();
        let t = DerivationTable::standard(&a);
        let err = derive(&NCPolynomial::generator(&a, F2PP), &t).unwrap_err();
        assert_eq!(err, NcError::MissingDerivation("f2''".into()));
        let err = derive(&NCPolynomial::generator(&a, Z), &t.restricted(&[F2])).unwrap_err();
        assert_eq!(err, NcError::MissingDerivation("z".into()));
    }

    #[test]
    fn classical_limit_examples() {
        let a = alph();
        let q = RewriteSystem::quantum(&a);
        let zf = NCPolynomial::word(&a, &[Z, F2]);
        let nf = crate::ncalg::normal_form(&zf, &q).unwrap();
        assert_eq!(classical_limit(&nf), NCPolynomial::word(&a, &[F2, Z]));

        let anti = &zf + &NCPolynomial::word(&a, &[F2, Z]);
        assert_eq!(
            classical_limit(&anti),
            NCPolynomial::word(&a, &[F2, Z]).scale(&Coefficient::int(2))
        );

        let comm = &NCPolynomial::word(&a, &[F2P, F2]) - &NCPolynomial::word(&a, &[F2, F2P]);
        assert!(classical_limit(&comm).is_zero());
    }

    #[test]
    fn classical_limit_cancels_inverses() {
        let a = alph();
        let p = NCPolynomial::word(&a, &[CHI, F2, CHI_INV]);
        assert_eq!(classical_limit(&p), NCPolynomial::generator(&a, F2));
    }
}
