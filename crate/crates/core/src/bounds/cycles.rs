use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coverlab::free_word_image;
use crate::coverlab::rep::sample_with;
use crate::error::{Error, Result};
use crate::groupkit::Word;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleStatReport {
    pub word: String,
    pub cycle_length: usize,
    pub samples: usize,
    pub degree: usize,
    pub master_seed: u64,
    /// `empirical[j]` is the fraction of samples with exactly `j` cycles.
    pub empirical: Vec<f64>,
    pub poisson: Vec<f64>,
    pub mean: f64,
    pub tv_distance: f64,
}

/// Number of `c`-cycles of the word's image in each sample `i ∈ range`.
/// Sample `i` uses stream `i` of the ChaCha generator keyed by `master_seed`,
/// so disjoint ranges are independent and results do not depend on threads.
pub fn cycle_counts(
    word: &Word,
    c: usize,
    n: usize,
    range: std::ops::Range<u64>,
    master_seed: u64,
) -> Result<Vec<usize>> {
    if c == 0 || n == 0 {
        return Err(Error::OutOfRange(
            "cycle length and degree must be positive".into(),
        ));
    }
    word.check_generators(2)?;
    range
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(i);
            let rep = sample_with(n, master_seed, &mut rng);
            Ok(free_word_image(&rep, word)?.count_cycles_of_length(c))
        })
        .collect()
}

/// `P(Poisson(μ) = j)` for `j < len`.
pub fn poisson_pmf(mu: f64, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut q = (-mu).exp();
    for j in 0..len {
        if j > 0 {
            q *= mu / j as f64;
        }
        out.push(q);
    }
    out
}

/// Total variation distance between two pmfs on `0, 1, 2, ..`; mass missing
/// from either vector is treated as lying beyond its support.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let at = |v: &[f64], j: usize| v.get(j).copied().unwrap_or(0.0);
    let body: f64 = (0..len).map(|j| (at(p, j) - at(q, j)).abs()).sum();
    let tail_p = (1.0 - p.iter().sum::<f64>()).max(0.0);
    let tail_q = (1.0 - q.iter().sum::<f64>()).max(0.0);
    0.5 * (body + tail_p + tail_q)
}

pub fn empirical_pmf(counts: &[usize]) -> Vec<f64> {
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0usize; max + 1];
    for &k in counts {
        hist[k] += 1;
    }
    hist.iter()
        .map(|&h| h as f64 / counts.len() as f64)
        .collect()
}

/// Empirical law of the number of `c`-cycles over `samples` uniform
/// representations of degree `n`, against `Poisson(1/c)`.
pub fn cycle_stats(
    word: &Word,
    c: usize,
    n: usize,
    samples: usize,
    master_seed: u64,
) -> Result<CycleStatReport> {
    if samples == 0 {
        return Err(Error::OutOfRange("need at least one sample".into()));
    }
    let counts = cycle_counts(word, c, n, 0..samples as u64, master_seed)?;
    let empirical = empirical_pmf(&counts);
    let poisson = poisson_pmf(1.0 / c as f64, empirical.len());
    let mean = counts.iter().sum::<usize>() as f64 / samples as f64;
    Ok(CycleStatReport {
        word: word.format(&["X", "Y"]),
        cycle_length: c,
        samples,
        degree: n,
        master_seed,
        tv_distance: total_variation(&empirical, &poisson),
        empirical,
        poisson,
        mean,
    })
}
