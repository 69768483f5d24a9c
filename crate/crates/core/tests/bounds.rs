use std::f64::consts::PI;

use gapcert_core::bounds::{
    collar_width, cycle_counts, cycle_stats, empirical_pmf, ledger_solve, planar_cheeger,
    planar_lambda1, total_variation, LedgerParams,
};
use gapcert_core::groupkit::Word;

/// `D_n/n!` from the alternating series.
fn derangement_ratio(n: usize) -> f64 {
    let mut term = 1.0;
    let mut s = 1.0;
    for k in 1..=n {
        term *= -1.0 / k as f64;
        s += term;
    }
    s
}

fn bisect(f: impl Fn(f64) -> bool, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if f(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    hi
}

#[test]
fn planar_bounds() {
    assert_eq!(planar_lambda1(2.0 * PI).unwrap(), 1.0 / 16.0);
    assert!(planar_cheeger(1e-12).unwrap() < 1e-12);
    let mut prev = 0.0;
    for i in 1..200 {
        let sys = 0.1 * i as f64;
        let h = planar_cheeger(sys).unwrap();
        let r = sys / (2.0 * PI);
        assert!((h - r / (r + 1.0)).abs() < 1e-15);
        let l = planar_lambda1(sys).unwrap();
        assert!(l > prev && l < 0.25);
        prev = l;
    }
    assert!(0.25 - planar_lambda1(1e9).unwrap() < 1e-8);
}

#[test]
fn collar_widths() {
    let fixed = 2.0 * 1f64.asinh();
    assert!((collar_width(fixed).unwrap() - 1f64.asinh()).abs() < 1e-15);
    let mut prev = f64::INFINITY;
    for i in 1..400 {
        let l = 0.1 * i as f64;
        let w = collar_width(l).unwrap();
        assert!(w < prev);
        prev = w;
    }
    // arcsinh(1/sinh(ℓ/2)) = 2e^{−ℓ/2}(1 + O(e^{−ℓ})).
    for l in [20.0, 30.0, 40.0] {
        let ratio = collar_width(l).unwrap() / (2.0 * (-l / 2.0f64).exp());
        assert!(
            (ratio - 1.0).abs() < 2.0 * (-l).exp() + 1e-15,
            "{l} {ratio}"
        );
    }
}

#[test]
fn ledger_threshold_matches_oracles() {
    let eta = 0.1;
    let ledger = ledger_solve(LedgerParams::new(eta, 0.5)).unwrap();
    let first = |l: f64| {
        let h = 1.0 - 2.0 * PI / (l + 2.0 * PI);
        0.25 * h * h > 0.25 - eta / 2.0
    };
    let oracle = bisect(first, 0.0, 1000.0);
    let closed = 2.0 * PI / (1.0 - (1.0 - 2.0 * eta).sqrt()) - 2.0 * PI;
    assert!((ledger.density_threshold - oracle).abs() < 1e-6);
    assert!((oracle - closed).abs() < 1e-9);
    assert!((closed - 53.23).abs() < 0.01);
    assert!(ledger.ell > 4.0 * ledger.params.w);
    ledger.validate().unwrap();

    let mut prev = f64::INFINITY;
    for i in 1..40 {
        let l = ledger_solve(LedgerParams::new(0.01 * i as f64, 0.5)).unwrap();
        assert!(l.density_threshold <= prev + 1e-9);
        prev = l.density_threshold;
    }
}

#[test]
fn fixed_points_of_a_single_permutation() {
    let w = Word::gen(0);
    for n in [1, 2, 5, 17] {
        let r = cycle_stats(&w, 1, n, 4000, 1).unwrap();
        assert!((r.mean - 1.0).abs() < 0.1, "{n} {}", r.mean);
    }
    let r = cycle_stats(&w, 1, 500, 5000, 11).unwrap();
    assert!((r.empirical[0] - derangement_ratio(500)).abs() < 0.02);
    assert!((derangement_ratio(500) - (-1f64).exp()).abs() < 1e-15);
    assert!(r.tv_distance <= 0.02, "{}", r.tv_distance);
}

#[test]
fn two_cycles_and_half_sample_stability() {
    let w = Word::gen(0);
    for n in [300, 500] {
        let r = cycle_stats(&w, 2, n, 5000, 23).unwrap();
        assert!(r.tv_distance <= 0.02, "{n}: {}", r.tv_distance);
    }
    let a = empirical_pmf(&cycle_counts(&w, 1, 500, 0..2500, 5).unwrap());
    let b = empirical_pmf(&cycle_counts(&w, 1, 500, 2500..5000, 5).unwrap());
    assert!(total_variation(&a, &b) <= 0.03);
}

#[test]
fn cycle_stats_is_reproducible() {
    let w = Word::from_letters(&[1, 2, -1, -2]);
    assert_eq!(
        cycle_stats(&w, 1, 50, 300, 9).unwrap(),
        cycle_stats(&w, 1, 50, 300, 9).unwrap()
    );
    let all = cycle_counts(&w, 1, 50, 0..300, 9).unwrap();
    let tail = cycle_counts(&w, 1, 50, 100..300, 9).unwrap();
    assert_eq!(&all[100..], &tail[..]);
}
