use gapcert_core::coverlab::{
    compose_action, cover_connected, free_word_image, hamming, sample_rep, schreier,
    screen_short_geodesics, switch, switch_walk, HandlebodyMap, PermRep, SampleDump, ScreenClass,
    ScreeningSummary, TwoCoverVector,
};
use gapcert_core::error::Error;
use gapcert_core::groupkit::Word;
use gapcert_core::perm::Perm;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn free_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..max_len)
        .prop_map(|l| Word::from_letters(&l))
}

fn surface_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop::sample::select(vec![1, -1, 2, -2, 3, -3, 4, -4]),
        0..max_len,
    )
    .prop_map(|l| Word::from_letters(&l))
}

fn bits(k: usize) -> impl Strategy<Value = TwoCoverVector> {
    prop::collection::vec(any::<bool>(), k).prop_map(|bits| TwoCoverVector { bits })
}

#[test]
fn default_map_examples() {
    let h = HandlebodyMap::default();
    let rep = sample_rep(9, 3);
    assert!(compose_action(&h, &rep, &Word::gen(1))
        .unwrap()
        .is_identity());
    assert!(compose_action(&h, &rep, &HandlebodyMap::relator())
        .unwrap()
        .is_identity());
    assert_eq!(
        compose_action(&h, &rep, &Word::gen(0)).unwrap(),
        rep.sigma_x
    );
    assert!(matches!(
        compose_action(&h, &rep, &Word::gen(5)),
        Err(Error::InvalidWord(_))
    ));
}

/// Probability that two uniform permutations of `n` points act transitively,
/// from `1 = Σ_k C(n−1,k−1) p_k (k!(n−k)!/n!)²`.
fn transitive_probability(n: usize) -> f64 {
    let mut p = vec![0.0, 1.0];
    for m in 2..=n {
        let mut binom = 1.0;
        let mut s = 0.0;
        for k in 1..m {
            binom *= (m - k + 1) as f64 / k as f64;
            s += p[k] * (k as f64 / m as f64) / binom;
        }
        p.push(1.0 - s);
    }
    p[n]
}

#[test]
fn transitivity_is_typical() {
    assert_eq!(transitive_probability(2), 0.75);
    assert!((transitive_probability(3) - 13.0 / 18.0).abs() < 1e-15);
    let exact = transitive_probability(100);
    assert!((exact - 0.98990).abs() < 1e-5);
    let trials = 10_000;
    let hits = (0..trials as u64)
        .filter(|&s| sample_rep(100, s).is_transitive())
        .count();
    let freq = hits as f64 / trials as f64;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    assert!((freq - exact).abs() <= 4.0 * sigma, "{freq} vs {exact}");
    for n in [3, 6] {
        let hits = (0..trials as u64)
            .filter(|&s| sample_rep(n, s).is_transitive())
            .count();
        let p = transitive_probability(n);
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (hits as f64 / trials as f64 - p).abs() <= 4.0 * sigma,
            "{n}"
        );
    }
}

#[test]
fn rank_is_n_plus_one() {
    let mut checked = 0;
    for trial in 0..1000u64 {
        let n = 2 + (trial % 49) as usize;
        let rep = sample_rep(n, trial);
        match schreier(&rep) {
            Ok(s) => {
                assert_eq!(s.rank(), n + 1);
                assert_eq!(s.tree.len(), n - 1);
                assert_eq!(schreier(&rep).unwrap(), s);
                checked += 1;
            }
            Err(Error::NotTransitive) => assert!(!rep.is_transitive()),
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked > 900);
}

#[test]
fn intransitive_action_is_refused() {
    let rep = PermRep::new(Perm::identity(3), Perm::identity(3), 0);
    assert!(matches!(schreier(&rep), Err(Error::NotTransitive)));
}

#[test]
fn screening_matches_definition() {
    let h = HandlebodyMap::default();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let words = prop::collection::vec(surface_word(6), 1..5);
    for trial in 0..100u64 {
        let rep = sample_rep(2 + (trial % 7) as usize, trial);
        let ws = words.new_tree(&mut runner).unwrap().current();
        let classes: Vec<ScreenClass> = ws
            .iter()
            .map(|w| ScreenClass::new(&h, w.clone()).unwrap())
            .collect();
        let flagged = screen_short_geodesics(&rep, &classes).unwrap().flagged;
        let brute: Vec<usize> = ws
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                let q = h.apply(w).unwrap();
                let fixes = compose_action(&h, &rep, w).unwrap().apply(0) == 0;
                !q.is_empty() && fixes
            })
            .map(|(i, _)| i)
            .collect();
        assert_eq!(flagged, brute);
    }
}

#[test]
fn sample_dump_format() {
    let rep = sample_rep(5, 12);
    let h = HandlebodyMap::default();
    let classes = vec![ScreenClass::new(&h, Word::gen(0)).unwrap()];
    let report = screen_short_geodesics(&rep, &classes).unwrap();
    let summary = ScreeningSummary::new(3.5, &report, &["a1".to_string()]);
    let k = schreier(&rep).ok().map(|s| s.rank());
    let v = serde_json::to_value(SampleDump::new(&rep, k, Some(summary))).unwrap();
    for key in [
        "n",
        "seed",
        "sigma_X",
        "sigma_Y",
        "transitive",
        "k",
        "screening",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["n"], 5);
    assert_eq!(v["seed"], 12);
    assert_eq!(v["sigma_X"].as_array().unwrap().len(), 5);
    assert!(v["screening"]["L"].is_number());
}

#[test]
fn cover_connectivity() {
    assert!(!cover_connected(&TwoCoverVector::zeros(4)));
    assert!(cover_connected(
        &switch(&TwoCoverVector::zeros(4), 2).unwrap()
    ));
    assert!(cover_connected(&TwoCoverVector::ones(4)));
}

#[test]
fn hypercube_diameter() {
    let k = 7;
    let zero = TwoCoverVector::zeros(k);
    let walk = switch_walk(&zero, &TwoCoverVector::ones(k)).unwrap();
    assert_eq!(walk.len(), k + 1);
    for w in walk.windows(2) {
        assert_eq!(hamming(&w[0], &w[1]).unwrap(), 1);
    }
    assert_eq!(hamming(&zero, &TwoCoverVector::ones(k)).unwrap(), k);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn composite_is_a_homomorphism(a in surface_word(10), b in surface_word(10), seed in any::<u64>(), n in 1usize..12) {
        let h = HandlebodyMap::default();
        let rep = sample_rep(n, seed);
        let lhs = compose_action(&h, &rep, &a.concat(&b)).unwrap();
        let rhs = compose_action(&h, &rep, &a).unwrap().then(&compose_action(&h, &rep, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schreier_generators_stabilize_base_point(seed in any::<u64>(), n in 1usize..30) {
        let rep = sample_rep(n, seed);
        if let Ok(s) = schreier(&rep) {
            for g in &s.generators {
                prop_assert_eq!(free_word_image(&rep, g).unwrap().apply(0), 0);
            }
        }
    }

    #[test]
    fn hamming_is_a_metric(a in bits(9), b in bits(9), c in bits(9)) {
        let d = |x: &TwoCoverVector, y: &TwoCoverVector| hamming(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        prop_assert_eq!(d(&a, &b) == 0, a == b);
    }

    #[test]
    fn switch_is_an_involution(v in bits(6), i in 1usize..=6) {
        let s = switch(&v, i).unwrap();
        prop_assert_eq!(hamming(&v, &s).unwrap(), 1);
        prop_assert_eq!(switch(&s, i).unwrap(), v);
    }

    #[test]
    fn every_vector_is_reached_in_weight_switches(v in bits(8)) {
        let walk = switch_walk(&TwoCoverVector::zeros(8), &v).unwrap();
        prop_assert_eq!(walk.len(), v.weight() + 1);
        prop_assert_eq!(walk.last().unwrap(), &v);
    }

    #[test]
    fn powers_without_dividing_cycles_have_no_fixed_points(u in free_word(6), k in 1i64..7, seed in any::<u64>(), n in 1usize..15) {
        let rep = sample_rep(n, seed);
        let img = free_word_image(&rep, &u).unwrap();
        let dividing = img.cycle_lengths().iter().any(|&c| k % c as i64 == 0);
        if !dividing {
            prop_assert_eq!(free_word_image(&rep, &u.pow(k)).unwrap().fixed_points(), 0);
        }
    }
}
