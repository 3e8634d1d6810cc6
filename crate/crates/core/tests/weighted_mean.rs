mod common;

use common::*;
use nbar::scalar::rational;
use nbar::weighted_mean::{forward_prefix, inverse_prefix, section_tail_norm};
use nbar::{
    ak_convergence_check, forward_transform, inverse_transform, space_norm, InverseTriangle, Rational, SequenceSpec,
    Status, TruncationConfig, WeightPair, WeightedMeanTriangle,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(depth: usize, window: usize) -> TruncationConfig<Rational> {
    TruncationConfig::new(depth, window, Rational::zero()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn truncated_triangle_times_inverse_is_identity(seed in any::<u64>(), m in 1usize..24) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 6);
        let t = WeightedMeanTriangle::new(&w).leading_block(m).unwrap();
        let s = InverseTriangle::new(&w).leading_block(m).unwrap();
        prop_assert_eq!(&t, &triangle_block(&w, m));
        prop_assert!(is_identity(&matmul(&t, &s)));
        prop_assert!(is_identity(&matmul(&s, &t)));
    }

    #[test]
    fn h_recurrence_agrees_with_determinant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p: Vec<Rational> = (0..13).map(|_| rand_weight(&mut rng)).collect();
        let w = WeightPair::new(SequenceSpec::literal(p.clone()), SequenceSpec::ones());
        let by_substitution = signed_h_by_substitution(w.p_spec(), 13);
        for n in 0..=12 {
            let h = w.h(n).unwrap();
            prop_assert_eq!(&h, &h_by_determinant(&p, n));
            let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
            prop_assert_eq!(&(sign * h), &by_substitution[n]);
        }
    }

    #[test]
    fn rows_of_the_triangle_sum_to_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 5);
        let t = WeightedMeanTriangle::new(&w);
        for n in 0..=30 {
            let s: Rational = (0..=n).map(|k| t.entry(n, k).unwrap()).sum();
            prop_assert_eq!(s, Rational::one());
        }
    }

    #[test]
    fn inverse_undoes_forward(seed in any::<u64>(), len in 1usize..=50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = rand_weights(&mut rng, 4);
        let x = rand_literal(&mut rng, len, 5);
        let tau = forward_prefix(&w, &x, len).unwrap();
        let back = inverse_prefix(&w, &SequenceSpec::literal(tau), len).unwrap();
        prop_assert_eq!(back, x.prefix(len));
    }

    #[test]
    fn cesaro_transform_is_the_arithmetic_mean(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = WeightPair::<Rational>::cesaro();
        let x = rand_literal(&mut rng, 40, 9);
        let mut partial = Rational::zero();
        for n in 0..60 {
            partial += x.eval(n);
            let mean = partial.clone() / rational(n as i64 + 1, 1);
            prop_assert_eq!(forward_transform(&w, &x, n).unwrap(), mean);
        }
    }

    #[test]
    fn section_keeps_the_prefix(seed in any::<u64>(), m in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = rand_literal(&mut rng, 20, 3);
        let s = x.section(m);
        for k in 0..40 {
            let expected = if k <= m { x.eval(k) } else { Rational::zero() };
            prop_assert_eq!(s.eval(k), expected);
        }
    }
}

#[test]
fn cesaro_inverse_is_the_difference_formula() {
    let w = WeightPair::<Rational>::cesaro();
    let tau = SequenceSpec::literal((0..=100).map(|k| rational(k * k % 7 - 3, k % 5 + 1)).collect());
    for k in 0..=100usize {
        let prev = if k == 0 { Rational::zero() } else { tau.eval(k - 1) };
        let expected = rational(k as i64 + 1, 1) * tau.eval(k) - rational(k as i64, 1) * prev;
        assert_eq!(inverse_transform(&w, &tau, k).unwrap(), expected);
    }
}

#[test]
fn transform_of_unit_vector_under_cesaro() {
    let w = WeightPair::<Rational>::cesaro();
    let tau = forward_prefix(&w, &SequenceSpec::Unit(0), 4).unwrap();
    assert_eq!(
        tau,
        vec![rational(1, 1), rational(1, 2), rational(1, 3), rational(1, 4)]
    );
}

#[test]
fn norm_of_e_is_one() {
    let w = WeightPair::<Rational>::cesaro();
    let v = space_norm(&w, &SequenceSpec::ones(), &cfg(20, 4)).unwrap();
    assert_eq!(v.status, Status::Holds);
    assert_eq!(v.evidence, Some(Rational::one()));
}

#[test]
fn section_convergence_of_zero_and_unit_vectors() {
    let w = WeightPair::<Rational>::cesaro();
    for x in [SequenceSpec::zero(), SequenceSpec::Unit(0)] {
        let v = ak_convergence_check(&w, &x, &cfg(24, 4)).unwrap();
        assert_eq!(v.status, Status::Holds, "{x:?}");
        assert!(v.trace.iter().all(Zero::is_zero));
    }
}

#[test]
fn section_convergence_fails_for_e() {
    let w = WeightPair::<Rational>::cesaro();
    let v = ak_convergence_check(&w, &SequenceSpec::ones(), &cfg(24, 4)).unwrap();
    assert_eq!(v.status, Status::Fails);
    assert!(v.witness.is_some());
}

#[test]
fn alternating_tail_norm_is_reciprocal() {
    let w = WeightPair::<Rational>::cesaro();
    let x = SequenceSpec::Geometric(-Rational::one());
    for m in 0..20usize {
        assert_eq!(section_tail_norm(&w, &x, m, 12).unwrap(), rational(1, m as i64 + 2));
    }
    let v = ak_convergence_check(&w, &x, &cfg(32, 6)).unwrap();
    assert_eq!(v.status, Status::Holds);
}

#[test]
fn bounded_r_is_inconclusive() {
    // p = e^(0), q = 2^-k: R_n = q_n -> 0
    let w = WeightPair::new(SequenceSpec::Unit(0), SequenceSpec::Geometric(rational(1, 2)));
    let v = ak_convergence_check(&w, &SequenceSpec::Unit(0), &cfg(16, 4)).unwrap();
    assert_eq!(v.status, Status::Inconclusive);
    assert!(v.diagnostics.iter().any(|d| d.contains("R_n")));
}

#[test]
fn positivity_is_checked_on_access() {
    let w = WeightPair::new(
        SequenceSpec::literal(vec![rational(1, 1), rational(-1, 1)]),
        SequenceSpec::ones(),
    );
    assert!(forward_transform(&w, &SequenceSpec::ones(), 0).is_ok());
    assert!(forward_transform(&w, &SequenceSpec::ones(), 1).is_err());
}

#[test]
fn float_mode_tracks_exact_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = rand_weights(&mut rng, 5);
    let x = rand_literal(&mut rng, 12, 4);
    let to_f = |s: &SequenceSpec<Rational>| {
        SequenceSpec::literal(s.prefix(12).iter().map(|v| nbar::Scalar::to_f64(v)).collect())
    };
    let wf = WeightPair::new(to_f(w.p_spec()), to_f(w.q_spec()));
    let exact = forward_prefix(&w, &x, 12).unwrap();
    let float = forward_prefix(&wf, &to_f(&x), 12).unwrap();
    for (e, f) in exact.iter().zip(&float) {
        assert!((nbar::Scalar::to_f64(e) - f).abs() < 1e-12);
    }
}
