//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gapcert_core::bounds::{collar_width, cycle_stats, ledger_solve, planar_lambda1, LedgerParams};
use gapcert_core::coverlab::{
    compose_action, cover_connected, hamming, sample_rep, schreier, screen_short_geodesics, switch,
    switch_walk, HandlebodyMap, ScreenClass, TwoCoverVector,
};
use gapcert_core::enclosure::Enclosure;
use gapcert_core::error::Error;
use gapcert_core::fuchsia::{
    elliptic_classes, enumerate_hyperbolic, stability_check, word_matrix, ClassKind,
};
use gapcert_core::groupkit::{
    conjugacy_classes, coset_enumerate, CharacterTable, Presentation, Word,
};
use gapcert_core::selberg::{
    certify_exclusion, certify_gap, fhat_at_lambda, ClassInput, DeckGroup, Normalization,
    SpectralArg, Status, TestFn, TraceData,
};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err(e: Error) -> String {
    e.to_string()
}

fn irwin_hall4(d: f64, x: f64) -> f64 {
    let t = (x + 4.0 * d) / (2.0 * d);
    if !(0.0..=4.0).contains(&t) {
        return 0.0;
    }
    let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
    let mut s = 0.0;
    for k in 0..=(t.floor() as usize).min(4) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * binom[k] * (t - k as f64).powi(3);
    }
    s / 6.0 / (2.0 * d)
}

const GL5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

fn gauss<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| {
            let m = a + h * (i as f64 + 0.5);
            GL5.iter().map(|(x, w)| w * f(m + 0.5 * h * x)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

fn triangle(d: f64, x: f64) -> f64 {
    ((2.0 * d - x.abs()) / (4.0 * d * d)).max(0.0)
}

fn convolve_triangles(d: f64, x: f64) -> f64 {
    let mut cuts = vec![-2.0 * d, 0.0, 2.0 * d, x - 2.0 * d, x, x + 2.0 * d];
    cuts.retain(|c| (-2.0 * d..=2.0 * d).contains(c));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    cuts.windows(2)
        .map(|w| gauss(|y| triangle(d, y) * triangle(d, x - y), w[0], w[1], 1))
        .sum()
}

fn derangement_ratio(n: usize) -> f64 {
    let mut term = 1.0;
    let mut s = 1.0;
    for k in 1..=n {
        term *= -1.0 / k as f64;
        s += term;
    }
    s
}

fn certificate() -> Outcome {
    let start = Instant::now();
    let cert = certify_gap(Ratio::new(2501, 10000), Ratio::new(3, 4)).map_err(err)?;
    let elapsed = start.elapsed();
    let excluded = cert
        .characters
        .iter()
        .filter(|c| c.status == Status::Excluded)
        .count();
    let min_margin = cert
        .characters
        .iter()
        .map(|c| c.margin_lower_bound)
        .fold(f64::INFINITY, f64::min);
    ensure!(cert.group_order == 768, "group order {}", cert.group_order);
    ensure!(
        cert.certified,
        "{excluded}/{} characters excluded",
        cert.characters.len()
    );
    ensure!(
        cert.precision_bits == 128,
        "needed {} bits",
        cert.precision_bits
    );
    ensure!(elapsed <= Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!(
        "{excluded}/{} real characters excluded at λ=0.2501, min margin {min_margin:.5}, {:.1}s",
        cert.characters.len(),
        elapsed.as_secs_f64()
    ))
}

fn group_arithmetic() -> Outcome {
    let t = coset_enumerate(&Presentation::genus17_deck_group(), &[], 1_000_000).map_err(err)?;
    let g = conjugacy_classes(&t).map_err(err)?;
    let ct = CharacterTable::compute(&g).map_err(err)?;
    let sq: u64 = ct.characters.iter().map(|c| c.degree * c.degree).sum();
    let resid = ct.orthogonality_residual(&g, 128);
    ensure!(t.index() == 768 && g.order() == 768, "order {}", g.order());
    ensure!(sq == 768, "Σd² = {sq}");
    ensure!(resid <= 1e-20, "orthogonality residual {resid:e}");
    Ok(format!(
        "|G| = 768, Σd² = {sq}, {} classes, residual {resid:.1e}",
        g.num_classes()
    ))
}

fn test_function() -> Outcome {
    let f = TestFn::new(Ratio::new(3, 4)).map_err(err)?;
    let mut conv: f64 = 0.0;
    for i in 0..100 {
        let x = -3.2 + 6.4 * i as f64 / 99.0;
        let v = f.eval_f(&Enclosure::from_f64(128, x)).mid_f64();
        conv = conv.max((v - convolve_triangles(0.75, x)).abs());
    }
    ensure!(conv <= 1e-9, "convolution deviation {conv:e}");
    let mut four: f64 = 0.0;
    for i in 0..20 {
        let y = 0.37 + 0.5 * i as f64;
        let g = |x: f64| irwin_hall4(0.75, x) * (x * y).cos();
        let direct = 2.0 * (gauss(g, 0.0, 1.5, 200) + gauss(g, 1.5, 3.0, 200));
        let fhat = f
            .eval_f_hat(&SpectralArg::Real(Enclosure::from_f64(128, y)))
            .mid_f64();
        four = four.max((direct - fhat).abs());
    }
    ensure!(four <= 1e-8, "Fourier deviation {four:e}");
    let p = 128;
    ensure!(
        f.eval_f(&Enclosure::zero(p))
            .contains(&Enclosure::from_ratio(p, 4, 9)),
        "f(0) ≠ 4/9"
    );
    ensure!(
        f.eval_f_hat(&SpectralArg::Real(Enclosure::zero(p)))
            .contains_f64(1.0),
        "f̂(0) ≠ 1"
    );
    ensure!(
        f.eval_f(&Enclosure::from_i64(p, 3)).contains_f64(0.0),
        "f(4d) ≠ 0"
    );
    Ok(format!(
        "convolution {conv:.1e}, Fourier {four:.1e}, f(0)=4/9, f̂(0)=1, f(4d)=0"
    ))
}

fn criterion_sanity() -> Outcome {
    let f = TestFn::new(Ratio::new(3, 4)).map_err(err)?;
    let deck = DeckGroup::compute().map_err(err)?;
    let c = ClassInput::enumerate(3.0, 64).map_err(err)?;
    let data = TraceData::prepare(
        &f,
        &c.elliptic,
        &c.hyperbolic,
        &deck.group,
        Normalization::Standard,
        128,
    )
    .map_err(err)?;
    let chars = deck.table.real_characters(128);
    let triv = chars
        .iter()
        .find(|c| c.is_trivial)
        .ok_or("no trivial character")?;
    let report = data.geometric_side(triv).map_err(err)?;
    for lam in [Ratio::new(0, 1), Ratio::new(-1, 10)] {
        ensure!(
            certify_exclusion(&report, triv, &lam, &f).status == Status::Inconclusive,
            "λ={lam} excluded"
        );
    }
    let mut unsubtracted = triv.clone();
    unsubtracted.is_trivial = false;
    for k in 1..=8 {
        let lam = Ratio::new(1, 10i64.pow(k));
        let ex = certify_exclusion(&report, &unsubtracted, &lam, &f);
        ensure!(
            ex.margin.is_negative(),
            "constant eigenfunction excluded at λ={lam}"
        );
    }
    let grid: Vec<Ratio<i64>> = (1..=40).map(|i| Ratio::new(i, 160)).collect();
    for w in grid.windows(2) {
        ensure!(
            fhat_at_lambda(&f, &w[0], 128).certainly_gt(&fhat_at_lambda(&f, &w[1], 128)),
            "f̂ not decreasing at λ={}",
            w[0]
        );
    }
    for ch in &chars {
        let r = data.geometric_side(ch).map_err(err)?;
        let mut above = false;
        for lam in grid.iter().rev() {
            let st = certify_exclusion(&r, ch, lam, &f).status;
            ensure!(
                !above || st == Status::Excluded,
                "exclusion not monotone at λ={lam}"
            );
            above |= st == Status::Excluded;
        }
    }
    Ok(format!(
        "guard holds for λ ≤ 0 and λ = 10⁻¹..10⁻⁸, monotone over {} characters × 40 λ",
        chars.len()
    ))
}

fn enumeration_stability() -> Outcome {
    let h = enumerate_hyperbolic(3.0, 64).map_err(err)?;
    let s = stability_check(&h, 2).map_err(err)?;
    ensure!(
        s.identical,
        "b={} and b+2 disagree: {s:?}",
        s.word_length_bound
    );
    let mut roots = 0;
    for c in &h.classes {
        let ClassKind::Hyperbolic {
            primitive: false,
            root,
            length,
        } = &c.kind
        else {
            continue;
        };
        let (idx, k) = root.ok_or("non-primitive class without root")?;
        let delta = h.classes.get(idx).ok_or("root missing")?;
        ensure!(delta.is_primitive(), "root is not primitive");
        let power = word_matrix(&delta.representative.pow(k as i64)).map_err(err)?;
        ensure!(
            power.field_trace().map_err(err)?.abs() == c.trace,
            "root trace mismatch"
        );
        let dl = delta.length().ok_or("root has no length")?;
        ensure!(dl.mul_i64(k as i64).overlaps(length), "length ratio ≠ {k}");
        roots += 1;
    }
    let p = Presentation::triangle(2, 3, 8);
    let reps: Vec<String> = elliptic_classes()
        .map_err(err)?
        .iter()
        .map(|c| p.format_word(&c.representative))
        .collect();
    let mut expected = vec!["x".to_string(), "y".into(), "y^2".into(), "z".into()];
    expected.extend((2..8).map(|k| format!("z^{k}")));
    ensure!(reps == expected, "elliptic list {reps:?}");
    Ok(format!(
        "{} classes identical at b={} and b+2, {roots} root(s) exact, {} elliptic classes",
        h.classes.len(),
        s.word_length_bound,
        reps.len()
    ))
}

fn random_surface_word(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..7);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=4);
            if rng.gen() {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::from_letters(&letters)
}

fn cover_model() -> Outcome {
    let mut transitive = 0;
    for trial in 0..1000u64 {
        let n = 2 + (trial % 49) as usize;
        let rep = sample_rep(n, trial);
        match schreier(&rep) {
            Ok(s) => {
                ensure!(s.rank() == n + 1, "n={n}: k={}", s.rank());
                transitive += 1;
            }
            Err(Error::NotTransitive) => ensure!(!rep.is_transitive(), "transitive rep refused"),
            Err(e) => return Err(err(e)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let k = rng.gen_range(1..12);
        let v = TwoCoverVector {
            bits: (0..k).map(|_| rng.gen()).collect(),
        };
        let i = rng.gen_range(1..=k);
        let s = switch(&v, i).map_err(err)?;
        ensure!(switch(&s, i).map_err(err)? == v, "switch not an involution");
        ensure!(
            hamming(&v, &s).map_err(err)? == 1,
            "switch moved more than one coordinate"
        );
        let u = TwoCoverVector {
            bits: (0..k).map(|_| rng.gen()).collect(),
        };
        let walk = switch_walk(&v, &u).map_err(err)?;
        ensure!(
            walk.len() == hamming(&v, &u).map_err(err)? + 1 && walk.len() <= k + 1,
            "walk length"
        );
        ensure!(
            walk.windows(2).all(|w| hamming(&w[0], &w[1]).unwrap() == 1),
            "walk jumps"
        );
    }
    ensure!(
        !cover_connected(&TwoCoverVector::zeros(3)),
        "trivial cover connected"
    );
    let h = HandlebodyMap::default();
    let mut flagged = 0;
    for pair in 0..100u64 {
        let rep = sample_rep(rng.gen_range(2..9), pair);
        let w = random_surface_word(&mut rng);
        let class = ScreenClass::new(&h, w.clone()).map_err(err)?;
        let got = !screen_short_geodesics(&rep, &[class])
            .map_err(err)?
            .flagged
            .is_empty();
        let q = h.apply(&w).map_err(err)?;
        let brute = !q.is_empty() && compose_action(&h, &rep, &w).map_err(err)?.apply(0) == 0;
        ensure!(got == brute, "screening disagrees on {w:?}");
        flagged += brute as usize;
    }
    Ok(format!("k = n+1 on {transitive}/1000 transitive trials, 200 switch checks, 100 screening pairs ({flagged} flagged)"))
}

fn poisson_limit() -> Outcome {
    let start = Instant::now();
    let w = Word::gen(0);
    let fixed = cycle_stats(&w, 1, 500, 5000, 0).map_err(err)?;
    let d = derangement_ratio(500);
    let p0 = fixed.empirical.first().copied().unwrap_or(0.0);
    ensure!(
        fixed.tv_distance <= 0.02,
        "fixed-point TV {}",
        fixed.tv_distance
    );
    ensure!((d - (-1f64).exp()).abs() < 1e-12, "derangement ratio {d}");
    ensure!((p0 - d).abs() <= 0.02, "P(0) = {p0}, D_n/n! = {d}");
    let two = cycle_stats(&w, 2, 500, 5000, 0).map_err(err)?;
    ensure!(two.tv_distance <= 0.02, "2-cycle TV {}", two.tv_distance);
    let elapsed = start.elapsed();
    ensure!(elapsed <= Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "TV fixed points {:.4}, 2-cycles {:.4}, P(0) {p0:.4} vs {d:.4}, {:.1}s",
        fixed.tv_distance,
        two.tv_distance,
        elapsed.as_secs_f64()
    ))
}

fn bound_calculators() -> Outcome {
    let l = planar_lambda1(2.0 * PI).map_err(err)?;
    ensure!(l == 1.0 / 16.0, "planar_lambda1(2π) = {l}");
    let fixed = 2.0 * 1f64.asinh();
    let w = collar_width(fixed).map_err(err)?;
    ensure!((w - 1f64.asinh()).abs() < 1e-15, "collar width {w}");
    let ledger = ledger_solve(LedgerParams::new(0.1, 0.5)).map_err(err)?;
    let eta: f64 = 0.1;
    let pred = |l: f64| {
        let h = 1.0 - 2.0 * PI / (l + 2.0 * PI);
        0.25 * h * h > 0.25 - eta / 2.0
    };
    let (mut lo, mut hi) = (0.0f64, 1000.0f64);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if pred(m) {
            hi = m;
        } else {
            lo = m;
        }
    }
    let dev = (ledger.density_threshold - hi).abs();
    ensure!(
        dev <= 1e-6,
        "threshold {} vs oracle {hi}",
        ledger.density_threshold
    );
    Ok(format!(
        "λ₁(2π)=1/16, collar fixed point, threshold {:.8} (oracle deviation {dev:.1e})",
        ledger.density_threshold
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("certificate reproduction", certificate),
        ("group arithmetic", group_arithmetic),
        ("test-function identities", test_function),
        ("criterion sanity", criterion_sanity),
        ("class enumeration stability", enumeration_stability),
        ("cover model properties", cover_model),
        ("Poisson limit", poisson_limit),
        ("bound calculators", bound_calculators),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
