use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;

use ncpainleve::exact::GaussianRational;
use ncpainleve::laxderive::{build_lax, curvature_parts, zero_curvature_residual, Matrix2};
use ncpainleve::ncalg::std_gens::*;
use ncpainleve::ncalg::{
    Alphabet, CentralMonomial, CentralSymbol, Coefficient, Generator, NCPolynomial, Word,
};
use ncpainleve::selftest::DEFAULT_SEED;

fn alph() -> Arc<Alphabet> {
    Alphabet::standard()
}

fn p(text: &str) -> NCPolynomial {
    NCPolynomial::parse(&alph(), text).unwrap()
}

/// The pair written out entry by entry.
fn lax_by_hand() -> (Matrix2, Matrix2) {
    let a11 = p("(0+8i) l^2 + (0+1i) * f2 * f2 + (0-2i) * z");
    let a = Matrix2::new(
        a11.clone(),
        p("(1+0i) h^1 + (1/4+0i) c^1 l^-1 + (-4+0i) l^1 * f2 + (0-1i) * f2'"),
        p("(-1+0i) h^1 + (1/4+0i) c^1 l^-1 + (-4+0i) l^1 * f2 + (0+1i) * f2'"),
        -&a11,
    );
    let b = Matrix2::new(
        p("(0-2i) l^1 + (1+0i) * f2"),
        p("(1+0i) * f2"),
        p("(1+0i) * f2"),
        p("(0+2i) l^1 + (1+0i) * f2"),
    );
    (a, b)
}

#[test]
fn lax_pair_entries() {
    assert_eq!(build_lax(), lax_by_hand());
}

#[test]
fn residual_entries_expanded_by_hand() {
    let (a, b) = build_lax();
    let r = zero_curvature_residual(&a, &b).unwrap();
    // R11 = 2h f2 + 2i (f2 z - z f2): no spectral parameter survives.
    assert_eq!(
        r.get(0, 0),
        &p("(2+0i) h^1 * f2 + (0+2i) * f2 * z + (0-2i) * z * f2")
    );
    assert!(!r.get(0, 0).mentions(CentralSymbol::Lambda));
    // R12 = -i (f2'' - 2 f2^3 + 2 (f2 z + z f2) - c) + 4i l h + i [f2, f2']
    let ode = p("(1+0i) * f2'' + (-2+0i) * f2 * f2 * f2 + (2+0i) * f2 * z + (2+0i) * z * f2 + (-1+0i) c^1");
    let expected = &(&ode.scale(&Coefficient::i().neg()) + &p("(0+4i) h^1 l^1"))
        + &p("(0+1i) * f2 * f2' + (0-1i) * f2' * f2");
    assert_eq!(r.get(0, 1), &expected);
    assert_eq!(
        r.get(0, 1).coefficient(&Word(vec![F2PP])),
        Coefficient::i().neg()
    );
    assert_eq!(r.get(1, 0).coefficient(&Word(vec![F2PP])), Coefficient::i());
}

fn coefficient() -> impl Strategy<Value = Coefficient> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 0i32..=1, -1i32..=2).prop_map(|(re, d, im, c, l)| {
        let m = CentralMonomial::one()
            .with(CentralSymbol::C, c)
            .with(CentralSymbol::Lambda, l);
        Coefficient::term(GaussianRational::from_parts(re, d, im, 1), m)
    })
}

fn entry() -> impl Strategy<Value = NCPolynomial> {
    const GENS: &[Generator] = &[Z, F2, F2P];
    let word = prop::collection::vec(prop::sample::select(GENS), 0..=3);
    prop::collection::vec((word, coefficient()), 0..=4).prop_map(|t| {
        NCPolynomial::from_terms(&alph(), t.into_iter().map(|(w, c)| (Word(w), c)))
    })
}

fn perturbation() -> impl Strategy<Value = Matrix2> {
    (entry(), entry(), entry(), entry()).prop_map(|(a, b, c, d)| Matrix2::new(a, b, c, d))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(DEFAULT_SEED),
        ..ProptestConfig::default()
    })]

    #[test]
    fn residual_parts_are_linear_in_a(delta in perturbation(), k in coefficient()) {
        let (a, b) = build_lax();
        let scaled = delta.scale(&k);
        let base = curvature_parts(&a, &b).unwrap();
        let step = curvature_parts(&scaled, &b).unwrap();
        let moved = curvature_parts(&a.add(&scaled), &b).unwrap();
        prop_assert_eq!(&moved.a_z, &base.a_z.add(&step.a_z));
        prop_assert_eq!(&moved.commutator, &base.commutator.add(&step.commutator));
        prop_assert_eq!(&moved.b_lambda, &base.b_lambda);
    }
}
