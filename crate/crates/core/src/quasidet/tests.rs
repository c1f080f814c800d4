use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exact::GaussianRational as Q;

fn q(s: &str) -> Q {
    s.parse().unwrap()
}

fn exact(rows: &[&[&str]]) -> BlockMatrix<Q> {
    BlockMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()).unwrap()
}

#[test]
fn two_by_two_exact_example() {
    let m = exact(&[&["1", "2"], &["3", "4"]]);
    assert_eq!(quasideterminant_expand(&ExactField, &m, 0, 0).unwrap(), q("-1/2"));
    assert_eq!(quasideterminant_via_inverse(&ExactField, &m, 0, 0).unwrap(), q("-1/2"));
    assert_eq!(
        commutative_reduction_check(&m, 0, 0).unwrap(),
        CommutativeOutcome::Equal
    );
}

#[test]
fn two_by_two_noncommutative_formula() {
    let c = ComplexMatrices::new(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random::block_matrix(&mut rng, 2, 2);
    let a22_inv = c.inv(m.get(1, 1)).unwrap();
    let expected = m.get(0, 0) - m.get(0, 1) * a22_inv * m.get(1, 0);
    let got = quasideterminant_expand(&c, &m, 0, 0).unwrap();
    assert!(c.distance(&got, &expected) < 1e-13);
    let via = quasideterminant_via_inverse(&c, &m, 0, 0).unwrap();
    assert!(c.distance(&via, &expected) < 1e-12);
}

#[test]
fn off_diagonal_two_by_two() {
    // |A|_12 = a12 − a11 a21⁻¹ a22
    let c = ComplexMatrices::new(3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let m = random::block_matrix(&mut rng, 2, 3);
    let expected = m.get(0, 1) - m.get(0, 0) * c.inv(m.get(1, 0)).unwrap() * m.get(1, 1);
    let got = quasideterminant_expand(&c, &m, 0, 1).unwrap();
    assert!(c.distance(&got, &expected) < 1e-12);
}

#[test]
fn diagonal_matrix_gives_diagonal_entries() {
    let m = exact(&[&["2", "0", "0"], &["0", "1/3", "0"], &["0", "0", "1+1i"]]);
    for i in 0..3 {
        assert_eq!(&quasideterminant_expand(&ExactField, &m, i, i).unwrap(), m.get(i, i));
    }
}

#[test]
fn identity_via_inverse_is_one() {
    let c = ComplexMatrices::new(2);
    let m = BlockMatrix::from_fn(3, |i, j| if i == j { c.one() } else { c.zero() });
    for i in 0..3 {
        let v = quasideterminant_via_inverse(&c, &m, i, i).unwrap();
        assert!(c.distance(&v, &c.one()) == 0.0);
    }
}

#[test]
fn singular_minor_is_reported() {
    let m = exact(&[&["1", "2", "3"], &["0", "1", "1"], &["0", "2", "2"]]);
    assert_eq!(
        quasideterminant_expand(&ExactField, &m, 0, 0).unwrap_err(),
        QuasidetError::NonInvertibleMinor { row: 0, col: 0 }
    );
    assert_eq!(
        commutative_reduction_check(&m, 0, 0).unwrap(),
        CommutativeOutcome::VacuousSingular
    );
}

#[test]
fn block_inverse_survives_singular_leading_block() {
    let m = exact(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "2"]]);
    let inv = block_inverse(&ExactField, &m).unwrap();
    let prod = matrix_product(&ExactField, &m, &inv);
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(prod.get(i, j), &if i == j { Q::one() } else { Q::zero() });
        }
    }
}

#[test]
fn enumeration_has_n_squared_positions() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = random::exact_matrix(&mut rng, 3);
    let all = all_quasideterminants(&ExactField, &m, Method::Expand);
    assert_eq!(all.len(), 9);
    assert!(all.iter().enumerate().all(|(k, p)| p.row == k / 3 && p.col == k % 3));
}

#[test]
fn out_of_range_index() {
    let m = exact(&[&["1"]]);
    assert!(matches!(
        quasideterminant_expand(&ExactField, &m, 1, 0),
        Err(QuasidetError::IndexOutOfRange { .. })
    ));
}

#[test]
fn parses_exact_and_block_input() {
    match parse_matrix_json(r#"[["3/4+1/2i", 2], ["0", "-i"]]"#, CarrierKind::Auto).unwrap() {
        ParsedMatrix::Exact(m) => {
            assert_eq!(m.get(0, 0), &q("3/4+1/2i"));
            assert_eq!(m.get(1, 1), &-Q::i());
        }
        other => panic!("{other:?}"),
    }
    let text = r#"[[[[1, 0], [0, 1]], "2"], [[[0, [1, -1]], [2.5, 0]], [[1, 1], [1, 2]]]]"#;
    match parse_matrix_json(text, CarrierKind::Auto).unwrap() {
        ParsedMatrix::Blocks { dim, matrix } => {
            assert_eq!(dim, 2);
            assert_eq!(matrix.get(0, 1), &DMatrix::from_diagonal_element(2, 2, Complex64::new(2.0, 0.0)));
            assert_eq!(matrix.get(1, 0)[(0, 1)], Complex64::new(1.0, -1.0));
        }
        other => panic!("{other:?}"),
    }
    assert!(parse_matrix_json(text, CarrierKind::Exact).is_err());
    assert!(parse_matrix_json("[[1, 2]]", CarrierKind::Auto).is_err());
}
