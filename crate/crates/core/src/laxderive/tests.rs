use super::*;
use crate::ncalg::classical_limit;

fn a() -> Arc<Alphabet> {
    Alphabet::standard()
}

fn p(text: &str) -> NCPolynomial {
    NCPolynomial::parse(&a(), text).unwrap()
}

fn expected_ode() -> NCPolynomial {
    p("(1+0i) * f2'' + (-2+0i) * f2 * f2 * f2 + (2+0i) * z * f2 + (2+0i) * f2 * z + (-1+0i) c^1")
}

#[test]
fn lax_entries() {
    let (lax_a, lax_b) = build_lax();
    assert_eq!(lax_b.get(0, 0), &p("(0-2i) l^1 + (1+0i) * f2"));
    assert_eq!(
        lax_a.get(0, 1),
        &p("(1/4+0i) c^1 l^-1 + (1+0i) h^1 + (-4+0i) l^1 * f2 + (0-1i) * f2'")
    );
}

#[test]
fn vacuum_lax_reduces_to_constant_coefficients() {
    let (lax_a, _) = build_lax();
    let zero = NCPolynomial::zero(&a());
    let vac = lax_a.map(|e| {
        e.substitute(F2, &zero)
            .unwrap()
            .substitute(F2P, &zero)
            .unwrap()
            .vanish_symbol(CentralSymbol::Hbar)
    });
    assert_eq!(vac.get(0, 0), &p("(0+8i) l^2 + (0-2i) * z"));
    assert_eq!(vac.get(0, 1), &p("(1/4+0i) c^1 l^-1"));
    assert_eq!(vac.get(1, 0), vac.get(0, 1));
    assert_eq!(vac.get(1, 1), &-vac.get(0, 0));
}

#[test]
fn residual_vanishes_on_diagonal_seed() {
    let (lax_a, lax_b) = build_lax();
    let zero = NCPolynomial::zero(&a());
    let kill = |e: &NCPolynomial| {
        e.substitute(F2, &zero)
            .unwrap()
            .substitute(F2P, &zero)
            .unwrap()
            .vanish_symbol(CentralSymbol::Hbar)
            .vanish_symbol(CentralSymbol::C)
    };
    let r = zero_curvature_residual(&lax_a.map(kill), &lax_b.map(kill)).unwrap();
    assert!(r.is_zero(), "{r}");
}

#[test]
fn eigenfunction_generators_are_rejected() {
    let (lax_a, lax_b) = build_lax();
    let bad = lax_a.add(&Matrix2::identity_times(&NCPolynomial::generator(&a(), CHI)));
    let err = zero_curvature_residual(&bad, &lax_b).unwrap_err();
    assert!(matches!(err, LaxError::Domain { ref generator, .. } if generator == "chi"));
}

#[test]
fn commutator_trace_is_zero_before_rewriting() {
    let (lax_a, lax_b) = build_lax();
    assert!(lax_b.commutator(&lax_a).trace().is_zero());
}

#[test]
fn diagonal_has_no_lambda() {
    let (lax_a, lax_b) = build_lax();
    let r = zero_curvature_residual(&lax_a, &lax_b).unwrap();
    assert!(!r.get(0, 0).mentions(CentralSymbol::Lambda));
    assert!(!r.get(1, 1).mentions(CentralSymbol::Lambda));
}

#[test]
fn derived_ode_and_limit() {
    let sys = derive_qpii().unwrap();
    assert_eq!(sys.ode, expected_ode());
    assert_eq!(
        classical_limit(&sys.ode),
        p("(1+0i) * f2'' + (-2+0i) * f2 * f2 * f2 + (4+0i) * f2 * z + (-1+0i) c^1")
    );
    for label in ["V1", "V2", "V3", "RM1", "L7"] {
        assert!(sys.report.labels().any(|l| l == label), "missing {label}");
    }
}

#[test]
fn derived_constraint_is_what_the_residual_forces() {
    let sys = derive_qpii().unwrap();
    assert_eq!(sys.calibration.diagonal_shape, DiagonalShape::CommutatorMinusHbarF2);
    // z f2 - f2 z + i h f2
    assert_eq!(
        sys.constraint,
        p("(0+1i) h^1 * f2 + (-1+0i) * f2 * z + (1+0i) * z * f2")
    );
    assert_eq!(sys.calibration.derived_k, "0-1i");
    assert!(sys.calibration.diagonal_convention.is_none());
}

#[test]
fn symmetric_commutator_value() {
    let s = verify_symmetric_relations();
    assert!(s.value.is_central());
    assert_eq!(s.value, p("(4+0i) h^1 l^1"));
    assert!(s.value.vanish_symbol(CentralSymbol::Hbar).is_zero());
    assert_eq!(s.report.flags.len(), 1);
}

#[test]
fn riccati_equation() {
    let r = riccati_derive().unwrap();
    assert_eq!(
        r.equation,
        p("(1+0i) * f2 + (0-4i) l^1 * Delta + (1+0i) * f2 * Delta + (-1+0i) * Delta * f2 + (-1+0i) * Delta * f2 * Delta")
    );
    assert_eq!(r.report.flags.len(), 1);
}
