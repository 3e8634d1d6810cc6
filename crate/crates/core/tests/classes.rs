mod common;

use common::*;
use nbar::classes::TERMWISE_READING;
use nbar::scalar::rational;
use nbar::{
    class_check, compose_into_domain, dual_norm, operator_norm, row_dual_bound, ClassQuery, MatrixSpec, Rational,
    RowTail, SequenceSpec, Space, Status, TruncationConfig, WeightPair,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(depth: usize, window: usize) -> TruncationConfig<Rational> {
    TruncationConfig::new(depth, window, Rational::zero()).unwrap()
}

fn scale_rows(a: &MatrixSpec<Rational>, lambda: &Rational, rows: usize, len: usize) -> MatrixSpec<Rational> {
    MatrixSpec::Rows {
        rows: (0..rows)
            .map(|n| SequenceSpec::literal(a.row(n).prefix(len).into_iter().map(|v| v * lambda.clone()).collect()))
            .collect(),
        tail: RowTail::Zero,
    }
}

fn rand_matrix(rng: &mut ChaCha8Rng) -> MatrixSpec<Rational> {
    match rng.gen_range(0..4) {
        0 => {
            let rows = rng.gen_range(1..=5);
            rand_finite_rows(rng, rows, 5, 3)
        }
        1 => MatrixSpec::ConstantRows {
            row: rand_literal(rng, 4, 3),
        },
        2 => MatrixSpec::Identity,
        _ => MatrixSpec::Rows {
            rows: vec![rand_literal(rng, 3, 2), rand_literal(rng, 3, 2)],
            tail: RowTail::RepeatLast,
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constant_rows_collapse_to_one_dual_norm(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 4);
        let row = rand_literal(&mut rng, 5, 3);
        let c = cfg(14, 3);
        let a = MatrixSpec::ConstantRows { row: row.clone() };
        let v14 = row_dual_bound(&a, &w, &c).unwrap();
        let vd = dual_norm(&w, &row, &c).unwrap();
        prop_assert_eq!(v14.evidence, vd.evidence);
    }

    #[test]
    fn row_dual_bound_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 4);
        let a = rand_finite_rows(&mut rng, 4, 4, 3);
        let c = cfg(8, 2);
        let v = row_dual_bound(&a, &w, &c).unwrap();
        prop_assert_eq!(v.evidence.unwrap(), row_dual_bound_brute(&a, &w, 0..=8, 8));
    }

    #[test]
    fn composition_is_linear(seed in any::<u64>(), num in -5i64..=5, den in 1i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 4);
        let a = rand_finite_rows(&mut rng, 5, 5, 3);
        let lambda = rational(num, den);
        let scaled = scale_rows(&a, &lambda, 5, 5);
        for m in 0..8 {
            let b = compose_into_domain(&a, &w, m).unwrap();
            let bl = compose_into_domain(&scaled, &w, m).unwrap();
            for k in 0..8 {
                prop_assert_eq!(bl.eval(k), lambda.clone() * b.eval(k));
            }
        }
    }

    #[test]
    fn null_into_c0_implies_null_into_linf(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 3);
        let a = rand_matrix(&mut rng);
        let c = cfg(12, 3);
        let into_c0 = class_check(&ClassQuery::new(a.clone(), Space::N0, Space::C0, w.clone(), c.clone()).unwrap()).unwrap();
        let into_linf = class_check(&ClassQuery::new(a, Space::N0, Space::Linf, w, c).unwrap()).unwrap();
        if into_c0.status == Status::Holds {
            prop_assert_eq!(into_linf.status, Status::Holds);
        }
    }
}

#[test]
fn worked_example_is_bounded_into_linf() {
    let (w, a) = worked_example();
    let c = cfg(32, 4);
    let v = class_check(&ClassQuery::new(a.clone(), Space::Ninf, Space::Linf, w.clone(), c.clone()).unwrap()).unwrap();
    assert_eq!(v.status, Status::Holds);
    assert!(v.interpretation_flags.iter().any(|f| f == TERMWISE_READING));
    let v14 = row_dual_bound(&a, &w, &c).unwrap();
    assert_eq!(v14.evidence, Some(row_dual_bound_brute(&a, &w, 0..=0, 32)));
    assert_eq!(v14.evidence, Some(rational(5, 3)));
}

#[test]
fn operator_norm_of_cesaro_first_column() {
    let w = WeightPair::<Rational>::cesaro();
    let a = MatrixSpec::ConstantRows {
        row: SequenceSpec::Unit(0),
    };
    let v = operator_norm(&a, &w, &cfg(16, 4)).unwrap();
    assert_eq!(v.status, Status::Holds);
    assert_eq!(v.evidence, Some(rational(1, 1)));
}

#[test]
fn unsupported_pairs_are_rejected() {
    let w = WeightPair::<Rational>::cesaro();
    let pairs = [
        (Space::Linf, Space::N0),
        (Space::Ninf, Space::C0),
        (Space::C, Space::C0),
        (Space::N, Space::Ninf),
    ];
    for (from, to) in pairs {
        assert!(
            ClassQuery::new(MatrixSpec::Identity, from, to, w.clone(), cfg(8, 2)).is_err(),
            "{from} -> {to}"
        );
    }
}

#[test]
fn identity_from_c_into_null_domain() {
    // A = I maps c into N exactly when T(c) is in c, which holds for Cesaro.
    let w = WeightPair::<Rational>::cesaro();
    let v = class_check(&ClassQuery::new(MatrixSpec::Identity, Space::C, Space::N, w, cfg(16, 4)).unwrap()).unwrap();
    assert_ne!(v.status, Status::Fails);
}

#[test]
fn compose_rejects_rows_that_never_settle() {
    let w = WeightPair::<Rational>::cesaro();
    let a = MatrixSpec::ConstantRows {
        row: SequenceSpec::Geometric(rational(2, 1)),
    };
    assert!(compose_into_domain(&a, &w, 3).is_err());
}
