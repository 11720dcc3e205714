mod common;

use common::ks_one_sample;
use egl::datasets::builtin;
use egl::gof::{compare, ks_distance, ks_statistic, Ecdf};
use egl::{fit, Egl, Family, FitOptions, GofReport, ModelSpec};
use proptest::prelude::*;

#[test]
fn ecdf_examples() {
    let e = Ecdf::new(&[1.0, 2.0, 3.0]).unwrap();
    assert!((e.eval(2.0) - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(e.eval(0.0), 0.0);
    let bank = builtin("bank").unwrap();
    assert_eq!(Ecdf::new(bank.values()).unwrap().eval(38.5), 1.0);
    assert!(Ecdf::new(&[]).is_err());
}

#[test]
fn ks_single_point() {
    let d = ks_distance(&[1.0], |_| Ok(0.5)).unwrap();
    assert_eq!(d, 0.5);
}

#[test]
fn ks_matches_independent_implementation() {
    let data = builtin("bladder").unwrap();
    let m = ModelSpec::new(Family::Egl, vec![0.936, 0.5878, 0.6457]).unwrap();
    let ours = ks_statistic(&m, data.values()).unwrap();
    let oracle = ks_one_sample(data.values(), |x| m.cdf(x).unwrap());
    assert!((ours - oracle).abs() < 1e-15);
}

#[test]
fn ks_invariant_under_probability_integral_transform() {
    let d = Egl::new(1.2, 0.7, 0.9).unwrap();
    let m = ModelSpec::egl(&d);
    let xs = m.sample(500, 4).unwrap();
    let direct = ks_statistic(&m, &xs).unwrap();
    let u: Vec<f64> = xs.iter().map(|&x| d.cdf(x).unwrap()).collect();
    let uniform = ks_distance(&u, Ok).unwrap();
    assert!((direct - uniform).abs() < 1e-12);
}

#[test]
fn ks_scaled_median_below_one_under_the_model() {
    let data = builtin("bladder").unwrap();
    let fitted = fit(Family::Egl, data.values(), &FitOptions::default())
        .unwrap()
        .model;
    let n = data.len();
    let mut scaled: Vec<f64> = (0..200u64)
        .map(|seed| {
            ks_statistic(&fitted, &fitted.sample(n, seed).unwrap()).unwrap() * (n as f64).sqrt()
        })
        .collect();
    scaled.sort_by(f64::total_cmp);
    let median = 0.5 * (scaled[99] + scaled[100]);
    assert!(median < 1.0, "median √n·D = {median}");
}

#[test]
fn information_criteria_definitions() {
    let data = builtin("bank").unwrap();
    let m = ModelSpec::new(Family::PowerLindley, vec![1.0, 0.2]).unwrap();
    let r = GofReport::evaluate(&m, data.values()).unwrap();
    assert!((r.aic - (2.0 * r.neg_loglik + 4.0)).abs() < 1e-12);
    assert!((r.bic - (2.0 * r.neg_loglik + 2.0 * 100f64.ln())).abs() < 1e-12);
    assert!((0.0..=1.0).contains(&r.ks));
}

#[test]
fn compare_ranks_by_aic() {
    let data = builtin("bladder").unwrap();
    let rows = compare(&Family::ALL, data.values(), &FitOptions::default()).unwrap();
    assert_eq!(rows.len(), 6);
    let aics: Vec<f64> = rows
        .iter()
        .map(|r| r.report.as_ref().unwrap().aic)
        .collect();
    assert!(aics.windows(2).all(|w| w[0] <= w[1]));
    let one = compare(&[Family::Lindley], data.values(), &FitOptions::default()).unwrap();
    assert_eq!(one.len(), 1);
    assert!(compare(&[], data.values(), &FitOptions::default()).is_err());
}

#[test]
fn compare_is_deterministic() {
    let data = builtin("bank").unwrap();
    let opts = FitOptions {
        seed: 9,
        ..FitOptions::default()
    };
    let a = compare(&Family::ALL, data.values(), &opts).unwrap();
    let b = compare(&Family::ALL, data.values(), &opts).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

proptest! {
    #[test]
    fn ks_within_unit_interval(xs in prop::collection::vec(0.01f64..50.0, 1..60), t in 0.05f64..5.0) {
        let m = ModelSpec::new(Family::Lindley, vec![t]).unwrap();
        let d = ks_statistic(&m, &xs).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(d >= 0.5 / xs.len() as f64 - 1e-15);
    }
}
