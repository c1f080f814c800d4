use num_complex::Complex64;

use super::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(h: f64) -> Grid {
    Grid::spanning(0.0, 1.0, h).unwrap()
}

fn init2() -> (CMat, CMat) {
    let chi = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.3, 0.1), c(-0.2, 0.0), c(0.9, 0.2)]);
    let phi = CMat::from_row_slice(2, 2, &[c(0.7, -0.1), c(0.0, 0.4), c(0.5, 0.0), c(1.1, 0.0)]);
    (chi, phi)
}

fn vacuum_chain(d: usize, lambdas: &[Complex64], h: f64) -> DressingChain {
    let g = grid(h);
    let seed = GridFunction::zeros(g, d);
    let (chi0, phi0) = if d == 2 { init2() } else { (CMat::identity(1, 1), CMat::identity(1, 1)) };
    let pairs = lambdas
        .iter()
        .map(|&l| integrate_linear_system(&seed, l, &chi0, &phi0).unwrap())
        .collect();
    DressingChain::build(seed, pairs, lambdas.len()).unwrap()
}

#[test]
fn vacuum_closed_form_scalar() {
    let g = grid(1e-2);
    let l = c(1.0, 0.5);
    let one = CMat::identity(1, 1);
    let pair = integrate_linear_system(&GridFunction::zeros(g, 1), l, &one, &one).unwrap();
    let exact = vacuum_eigenpair(g, l, &one, &one).unwrap();
    assert!(pair.chi.max_distance(&exact.chi) < 1e-7);
    assert!(pair.phi.max_distance(&exact.phi) < 1e-7);
}

#[test]
fn zero_lambda_keeps_constants() {
    let g = grid(0.1);
    let (chi0, phi0) = init2();
    let pair = integrate_linear_system(&GridFunction::zeros(g, 2), c(0.0, 0.0), &chi0, &phi0).unwrap();
    assert_eq!(pair.chi.at(g.count - 1), &chi0);
    assert_eq!(pair.phi.at(g.count - 1), &phi0);
}

#[test]
fn divergence_is_reported() {
    let g = Grid::new(0.0, 1.0, 2000).unwrap();
    let one = CMat::identity(1, 1);
    let err = integrate_linear_system(&GridFunction::zeros(g, 1), c(0.0, -300.0), &one, &one).unwrap_err();
    assert!(matches!(err, DarbouxError::Divergence { .. }), "{err}");
}

#[test]
fn integrator_is_fourth_order() {
    let l = c(1.0, 0.5);
    let one = CMat::identity(1, 1);
    let mut errs = Vec::new();
    for h in [1e-2, 5e-3, 2.5e-3] {
        let g = grid(h);
        let pair = integrate_linear_system(&GridFunction::zeros(g, 1), l, &one, &one).unwrap();
        let exact = vacuum_eigenpair(g, l, &one, &one).unwrap();
        errs.push(pair.chi.max_distance(&exact.chi).max(pair.phi.max_distance(&exact.phi)));
    }
    for w in errs.windows(2) {
        let r = w[0] / w[1];
        assert!((8.0..=32.0).contains(&r), "ratio {r}");
    }
}

#[test]
fn once_on_vacuum_matches_closed_form() {
    let g = grid(1e-3);
    let l = c(0.8, 0.3);
    let one = CMat::identity(1, 1);
    let pair = vacuum_eigenpair(g, l, &one, &one).unwrap();
    let u1 = darboux_once(&GridFunction::zeros(g, 1), &pair).unwrap();
    let expected = GridFunction::from_fn(g, |z| one.clone() * (c(-4.0, 0.0) * l * (c(0.0, 4.0) * l * z).exp())).unwrap();
    assert!(u1.max_distance(&expected) < 1e-12);
}

#[test]
fn once_with_equal_functions_shifts_by_constant() {
    let g = grid(0.1);
    let (chi0, _) = init2();
    let pair = Eigenpair::new(c(0.5, 0.0), GridFunction::constant(g, chi0.clone()), GridFunction::constant(g, chi0)).unwrap();
    let u = GridFunction::from_fn(g, |z| CMat::from_fn(2, 2, |i, j| c(z + i as f64, j as f64))).unwrap();
    let u1 = darboux_once(&u, &pair).unwrap();
    let expected = GridFunction::from_fn(g, |z| {
        CMat::from_fn(2, 2, |i, j| c(z + i as f64, j as f64)) - CMat::identity(2, 2) * c(2.0, 0.0)
    })
    .unwrap();
    assert!(u1.max_distance(&expected) < 1e-14);
}

#[test]
fn singular_chi_is_reported() {
    let g = grid(0.5);
    let zero = GridFunction::zeros(g, 1);
    let pair = Eigenpair::new(c(1.0, 0.0), zero.clone(), GridFunction::constant(g, CMat::identity(1, 1))).unwrap();
    let err = darboux_once(&zero, &pair).unwrap_err();
    assert!(matches!(err, DarbouxError::SingularEigenfunction { index: 0, .. }));
}

#[test]
fn kernel_property() {
    let chain = vacuum_chain(2, &[c(1.0, 0.5)], 1e-3);
    let p = &chain.eigenpairs()[0];
    let (a, b) = dress_eigenfunctions(&p.chi, &p.phi, p.lambda, p).unwrap();
    assert!(a.max_norm() <= 1e-10 && b.max_norm() <= 1e-10);
}

#[test]
fn dressing_at_zero_lambda() {
    let chain = vacuum_chain(1, &[c(1.0, 0.5), c(0.4, -0.2)], 0.05);
    let p1 = &chain.eigenpairs()[0];
    let p2 = &chain.eigenpairs()[1];
    let (chi1, _) = dress_eigenfunctions(&p2.chi, &p2.phi, c(0.0, 0.0), p1).unwrap();
    let manual: Vec<CMat> = (0..chi1.count())
        .map(|k| -(p1.phi.at(k) * p1.chi.at(k).clone().try_inverse().unwrap() * p2.chi.at(k)) * p1.lambda)
        .collect();
    let manual = GridFunction::new(p1.chi.grid(), manual).unwrap();
    assert!(chi1.max_distance(&manual) < 1e-14);
}

#[test]
fn two_by_two_omega_is_dressed_chi() {
    let chain = vacuum_chain(2, &[c(1.0, 0.5), c(0.5, -0.25)], 0.05);
    let om = omega(chain.eigenpairs(), 2, OmegaKind::Chi).unwrap();
    let dressed = &chain.dressed(1, 0).unwrap().chi;
    assert!(om.max_distance(dressed) < 1e-12);
    let om = omega(chain.eigenpairs(), 2, OmegaKind::Phi).unwrap();
    assert!(om.max_distance(&chain.dressed(1, 0).unwrap().phi) < 1e-12);
}

#[test]
fn nfold_one_is_once() {
    let chain = vacuum_chain(2, &[c(1.0, 0.5), c(0.5, -0.25)], 0.01);
    let once = darboux_once(chain.seed(), &chain.eigenpairs()[0]).unwrap();
    assert_eq!(darboux_nfold(&chain, 1).unwrap(), once);
}

#[test]
fn nfold_two_is_once_twice() {
    let chain = vacuum_chain(2, &[c(1.0, 0.5), c(0.5, -0.25)], 0.01);
    let u1 = darboux_once(chain.seed(), &chain.eigenpairs()[0]).unwrap();
    let u2 = darboux_once(&u1, chain.dressed(1, 0).unwrap()).unwrap();
    assert!(darboux_nfold(&chain, 2).unwrap().max_distance(&u2) <= 1e-10);
}

#[test]
fn paths_agree_up_to_three_levels() {
    let lambdas = [c(1.0, 0.5), c(0.5, -0.25), c(-0.7, 0.2)];
    for d in [1, 2] {
        let chain = vacuum_chain(d, &lambdas, 0.01);
        for n in 1..=3 {
            let a = darboux_nfold(&chain, n).unwrap();
            let b = quasidet_solution_form(&chain, n).unwrap();
            let dev = a.max_distance(&b);
            assert!(dev <= 1e-8, "d={d} n={n} dev={dev}");
        }
    }
}

#[test]
fn level_order_is_enforced() {
    let chain = vacuum_chain(1, &[c(1.0, 0.5)], 0.1);
    assert!(matches!(
        darboux_nfold(&chain, 2),
        Err(DarbouxError::LevelOrderViolation { requested: 2, available: 1 })
    ));
    let mut chain = chain;
    assert!(chain.advance().is_err());
}

#[test]
fn duplicate_lambdas_are_rejected() {
    let g = grid(0.1);
    let one = CMat::identity(1, 1);
    let p = vacuum_eigenpair(g, c(1.0, 0.0), &one, &one).unwrap();
    let err = DressingChain::new(GridFunction::zeros(g, 1), vec![p.clone(), p]).unwrap_err();
    assert_eq!(err, DarbouxError::DuplicateLambda { index: 1 });
}

#[test]
fn riccati_closure_on_vacuum() {
    for d in [1, 2] {
        let chain = vacuum_chain(d, &[c(1.0, 0.5)], 1e-3);
        let res = riccati_residual_numeric(&chain.eigenpairs()[0], chain.seed(), FdOrder::Fourth).unwrap();
        let max = res.iter().copied().fold(0.0, f64::max);
        assert!(max <= 1e-6, "d={d} max={max}");
    }
}

#[test]
fn second_order_riccati_converges_quadratically() {
    let mut maxes = Vec::new();
    for h in [1e-2, 5e-3] {
        let chain = vacuum_chain(1, &[c(1.0, 0.5)], h);
        let res = riccati_residual_numeric(&chain.eigenpairs()[0], chain.seed(), FdOrder::Second).unwrap();
        maxes.push(res.iter().copied().fold(0.0, f64::max));
    }
    let r = maxes[0] / maxes[1];
    assert!((3.0..=5.0).contains(&r), "ratio {r}");
}

#[test]
fn qpii_residual_examples() {
    let g = grid(0.01);
    let zero = GridFunction::zeros(g, 2);
    assert!(qpii_residual_numeric(&zero, c(0.0, 0.0)).unwrap().iter().all(|&r| r == 0.0));
    let lin = GridFunction::from_fn(g, |z| CMat::identity(2, 2) * c(z, 0.0)).unwrap();
    let res = qpii_residual_numeric(&lin, c(0.0, 0.0)).unwrap();
    for (k, r) in res.iter().enumerate() {
        let z = g.z(k + 1);
        let expected = (4.0 * z * z - 2.0 * z * z * z).abs() * 2f64.sqrt();
        assert!((r - expected).abs() < 1e-9, "{r} vs {expected}");
    }
}
