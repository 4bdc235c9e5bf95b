//! Target functions against per-term oracles, dataset generation and RMSE.

use ddm_core::rng::Stream;
use ddm_core::{make_dataset, make_dataset_pair, rmse, Split, TargetFunction};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Independent per-term evaluation with std float functions.
fn oracle(tf: TargetFunction, x: &[f64]) -> f64 {
    match tf {
        TargetFunction::Tf1 | TargetFunction::Tf3 => {
            let mut total = 0.0;
            for &v in x {
                total += (20.0 * v.exp()).sin() * v.powi(2);
            }
            total
        }
        TargetFunction::Tf2 => {
            let v = x[0];
            let t1 = 0.2 * (-(10.0 * v - 4.0).powi(2)).exp();
            let t2 = 0.5 * (-(80.0 * v - 40.0).powi(2)).exp();
            let t3 = 0.3 * (-(80.0 * v - 20.0).powi(2)).exp();
            t1 + t2 + t3
        }
        TargetFunction::Tf4 => {
            let mut total = 0.0;
            for (i, &v) in x.iter().enumerate() {
                let k = (i + 1) as f64;
                total -= v.sin() * (k * v * v / PI).sin().powi(20);
            }
            total
        }
        TargetFunction::Tf5 => {
            let mut total = 418.9829 * x.len() as f64;
            for &v in x {
                total -= v * v.abs().sqrt().sin();
            }
            total
        }
    }
}

#[test]
fn tf2_at_half_term_by_term() {
    let expected = 0.2 * (-1.0f64).exp() + 0.5 + 0.3 * (-400.0f64).exp();
    assert!((expected - 0.5735759).abs() < 1e-7);
    assert!((TargetFunction::Tf2.eval(&[0.5]) - expected).abs() < 1e-15);
}

#[test]
fn all_functions_match_oracle() {
    let mut s = Stream::new(2024, 11);
    for tf in TargetFunction::ALL {
        let (lo, hi) = tf.domain();
        for i in 0..1000 {
            let n = tf.fixed_arity().unwrap_or(1 + i % 10);
            let x: Vec<f64> = (0..n).map(|_| lo + s.unit_f64() * (hi - lo)).collect();
            let (got, want) = (tf.eval(&x), oracle(tf, &x));
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{tf} {x:?}: {got} vs {want}");
        }
    }
}

#[test]
fn tf5_train_set_is_reproducible() {
    let a = make_dataset(TargetFunction::Tf5, 2, Split::Train, 5000, 77).unwrap();
    let b = make_dataset(TargetFunction::Tf5, 2, Split::Train, 5000, 77).unwrap();
    assert_eq!(a, b);
    assert!(a.inputs().iter().all(|v| (0.0..=1.0).contains(v)));
    let c = make_dataset(TargetFunction::Tf5, 2, Split::Train, 5000, 78).unwrap();
    assert_ne!(a.inputs(), c.inputs());
}

#[test]
fn generated_data_round_trips_through_normalization() {
    for (tf, n) in [
        (TargetFunction::Tf1, 1),
        (TargetFunction::Tf2, 1),
        (TargetFunction::Tf3, 3),
        (TargetFunction::Tf4, 2),
        (TargetFunction::Tf5, 4),
    ] {
        let (train, test) = make_dataset_pair(tf, n, 400, 300, 5).unwrap();
        let (ilo, ihi) = tf.target_interval();
        for d in [&train, &test] {
            let norm = d.normalization();
            for (x, &y) in d.rows().zip(d.targets()) {
                assert!(x.iter().all(|v| (0.0..=1.0).contains(v)));
                assert!((ilo..=ihi).contains(&y));
                let natural = norm.denormalize_input(x);
                let again = norm.normalize_input(&natural);
                assert!(again.iter().zip(x).all(|(a, b)| (a - b).abs() <= 1e-12));
                let raw = norm.denormalize_target(y);
                assert!((raw - tf.eval(&natural)).abs() <= 1e-12 * raw.abs().max(1.0));
                assert!((norm.normalize_target(raw) - y).abs() <= 1e-12);
            }
        }
    }
}

proptest! {
    #[test]
    fn rmse_is_zero_on_itself_and_order_free(values in prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), 1..50), rot in 0usize..50) {
        let p: Vec<f64> = values.iter().map(|v| v.0).collect();
        let a: Vec<f64> = values.iter().map(|v| v.1).collect();
        prop_assert_eq!(rmse(&p, &p), 0.0);
        let r = rot % p.len();
        let mut p2 = p.clone();
        let mut a2 = a.clone();
        p2.rotate_left(r);
        a2.rotate_left(r);
        let (x, y) = (rmse(&p, &a), rmse(&p2, &a2));
        prop_assert!((x - y).abs() <= 1e-12 * x.max(1.0));
    }
}
