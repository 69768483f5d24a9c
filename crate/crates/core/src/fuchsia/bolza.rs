//! Generators of the Bolza surface group as a normal subgroup of index 48.

use serde::{Deserialize, Serialize};

use super::classes::DEFAULT_MAX_WORD_LENGTH;
use super::mobius::{word_matrix, Classification, Mobius};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::groupkit::{coset_enumerate, CosetTable, Presentation, Word};

/// Words for `g₁, …, g₄` with `[g₁,g₂][g₃,g₄] = 1`, in `x, y, z`.
pub const BOLZA_GENERATORS: [&str; 4] = [
    "z^3*x*z^4*x*z*x*z^4*x*z^4",
    "z^-3*x^-1*z^-4*x^-1*z*x*z^4*x*z*x^-1*z^-4*x^-1*z^-3",
    "z^-3*x^-1*z^-4*x^-1*z^-1",
    "z^2*x*z^4*x*z^2",
];

/// `a_k = z^k (x z⁴ x z⁴) z^{-k}`; the side pairings of the regular octagon.
pub fn octagon_pairing(k: i64) -> Word {
    let z = Word::gen(2);
    let x = Word::gen(0);
    let g0 = x.concat(&z.pow(4)).concat(&x).concat(&z.pow(4));
    z.pow(k).concat(&g0).concat(&z.pow(-k)).free_reduce()
}

pub fn bolza_generators() -> Vec<Word> {
    let p = Presentation::triangle(2, 3, 8);
    BOLZA_GENERATORS
        .iter()
        .map(|s| p.parse_word(s).expect("shipped words parse"))
        .collect()
}

pub fn surface_relator(g: &[Word]) -> Word {
    Word::commutator(&g[0], &g[1])
        .concat(&Word::commutator(&g[2], &g[3]))
        .free_reduce()
}

#[derive(Clone, Debug)]
pub struct BolzaVerification {
    pub generators: Vec<Word>,
    /// Coset table of `Γ_B` in the triangle group.
    pub quotient: CosetTable,
    pub generator_lengths: Vec<Enclosure>,
}

/// Checks the shipped words: exact surface relator, index 48 with trivial
/// action on the cosets (so the subgroup is the kernel, hence normal),
/// hyperbolic generators, and agreement with the octagon side pairings.
pub fn verify_bolza(prec: u32) -> Result<BolzaVerification> {
    let g = bolza_generators();
    if !word_matrix(&surface_relator(&g))?.is_identity() {
        return Err(Error::VerificationFailed(
            "surface relator is not the identity".into(),
        ));
    }
    let a: Vec<Word> = (0..4).map(octagon_pairing).collect();
    let expected = [
        a[3].concat(&a[0]),
        a[1].inverse().concat(&a[2]).concat(&a[3].inverse()),
        a[1].inverse(),
        a[2].clone(),
    ];
    for (w, e) in g.iter().zip(&expected) {
        if !word_matrix(w)?.proj_eq(&word_matrix(e)?) {
            return Err(Error::VerificationFailed(format!(
                "{w:?} differs from its octagon form"
            )));
        }
    }
    let octagon = a[0]
        .concat(&a[1].inverse())
        .concat(&a[2])
        .concat(&a[3].inverse())
        .concat(&a[0].inverse())
        .concat(&a[1])
        .concat(&a[2].inverse())
        .concat(&a[3]);
    if !word_matrix(&octagon)?.is_identity() {
        return Err(Error::VerificationFailed("octagon relation fails".into()));
    }
    let quotient = coset_enumerate(&Presentation::triangle(2, 3, 8), &g, 10_000)?;
    if quotient.index() != 48 {
        return Err(Error::VerificationFailed(format!(
            "index {} instead of 48",
            quotient.index()
        )));
    }
    for w in &g {
        if !quotient.word_image(w)?.is_identity() {
            return Err(Error::VerificationFailed(format!(
                "{w:?} acts nontrivially on cosets"
            )));
        }
    }
    let mut generator_lengths = Vec::new();
    for w in &g {
        match word_matrix(w)?.classify(prec) {
            Classification::Hyperbolic { length } => generator_lengths.push(length),
            other => {
                return Err(Error::VerificationFailed(format!(
                    "{w:?} is not hyperbolic: {other:?}"
                )))
            }
        }
    }
    Ok(BolzaVerification {
        generators: g,
        quotient,
        generator_lengths,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystoleSearch {
    pub word: Word,
    pub length: f64,
    pub words_checked: usize,
}

/// Freely reduced words of length `1..=max_len` in the Bolza generators
/// (letters `±1..±4`) with their matrices.
fn reduced_words(max_len: usize) -> Result<Vec<(Mobius, Vec<i32>)>> {
    let g = bolza_generators();
    let mats: Vec<Mobius> = g.iter().map(word_matrix).collect::<Result<_>>()?;
    let letters: Vec<(Mobius, i32)> = (0..4)
        .flat_map(|i| {
            [
                (mats[i].clone(), i as i32 + 1),
                (mats[i].inverse(), -(i as i32 + 1)),
            ]
        })
        .collect();
    let mut out = Vec::new();
    let mut frontier: Vec<(Mobius, Vec<i32>)> = vec![(Mobius::identity(), Vec::new())];
    for _ in 0..max_len.min(DEFAULT_MAX_WORD_LENGTH as usize) {
        let mut next = Vec::new();
        for (m, w) in &frontier {
            for (gm, l) in &letters {
                if w.last() == Some(&-*l) {
                    continue;
                }
                let mut nw = w.clone();
                nw.push(*l);
                next.push((m * gm, nw));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

/// Rewrites a word in `g1..g4` as a word in `x, y, z`.
pub fn surface_to_triangle(w: &Word) -> Result<Word> {
    w.check_generators(4)?;
    let g = bolza_generators();
    let mut out = Word::empty();
    for &l in w.letters() {
        let gi = &g[l.unsigned_abs() as usize - 1];
        out = out.concat(&if l > 0 { gi.clone() } else { gi.inverse() });
    }
    Ok(out.free_reduce())
}

/// Shortest translation length among reduced words of length `≤ max_len` in
/// the Bolza generators; words are reported in `x, y, z`.
pub fn bolza_systole(max_len: usize, prec: u32) -> Result<(Enclosure, SystoleSearch)> {
    let words = reduced_words(max_len)?;
    let mut best: Option<(Enclosure, Vec<i32>)> = None;
    for (m, w) in &words {
        if let Classification::Hyperbolic { length } = m.classify(prec) {
            let better = match &best {
                None => true,
                Some((b, _)) => length.upper() < b.lower(),
            };
            if better {
                best = Some((length, w.clone()));
            }
        }
    }
    let (length, word) =
        best.ok_or_else(|| Error::VerificationFailed("no hyperbolic element found".into()))?;
    let summary = SystoleSearch {
        word: surface_to_triangle(&Word::from_letters(&word))?,
        length: length.mid_f64(),
        words_checked: words.len(),
    };
    Ok((length, summary))
}

/// A closed geodesic of the Bolza surface given by a word in `a1, b1, a2, b2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceGeodesic {
    pub word: Word,
    pub length: f64,
}

/// Cyclically reduced words of length `≤ max_len` in the surface generators
/// with translation length `≤ length_bound`, one per cyclic rotation class
/// up to inversion, sorted by length. Conjugacy beyond rotations is not
/// detected, so a class may appear more than once.
pub fn short_surface_words(
    max_len: usize,
    length_bound: f64,
    prec: u32,
) -> Result<Vec<SurfaceGeodesic>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (m, w) in reduced_words(max_len)? {
        if w.len() > 1 && w[0] == -w[w.len() - 1] {
            continue;
        }
        let Classification::Hyperbolic { length } = m.classify(prec) else {
            continue;
        };
        if length.mid_f64() > length_bound {
            continue;
        }
        let inv: Vec<i32> = w.iter().rev().map(|l| -l).collect();
        let key = (0..w.len())
            .flat_map(|r| {
                let mut a = w.clone();
                a.rotate_left(r);
                let mut b = inv.clone();
                b.rotate_left(r);
                [a, b]
            })
            .min()
            .expect("nonempty word");
        if seen.insert(key) {
            out.push(SurfaceGeodesic {
                word: Word::from_letters(&w),
                length: length.mid_f64(),
            });
        }
    }
    out.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then_with(|| a.word.letters().cmp(b.word.letters()))
    });
    Ok(out)
}
