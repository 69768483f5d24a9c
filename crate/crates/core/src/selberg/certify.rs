//! The exclusion criterion and the full spectral-gap certificate.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::terms::{GeometricSideReport, Normalization, TraceData};
use super::testfn::{SpectralArg, TestFn};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::fuchsia::{
    elliptic_classes, enumerate_hyperbolic, CompletenessCertificate, GeodesicClass,
    MAX_LENGTH_BOUND,
};
use crate::groupkit::{
    conjugacy_classes, coset_enumerate, Character, CharacterTable, FiniteGroupData, Presentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Excluded,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct Exclusion {
    pub status: Status,
    /// `f̂_d(√(λ − 1/4))`
    pub lhs: Enclosure,
    /// `𝒢_d(ρ)`, minus `f̂_d(i/2)` for the trivial character.
    pub rhs: Enclosure,
    pub margin: Enclosure,
    pub reason: Option<String>,
}

/// `f̂_d(√(λ − 1/4))` on the real or imaginary axis.
pub fn fhat_at_lambda(tf: &TestFn, lambda: &Ratio<i64>, prec: u32) -> Enclosure {
    tf.eval_f_hat(&TestFn::spectral_arg(lambda, prec))
}

/// Excluded iff the lower bound of `f̂_d(√(λ−1/4))` exceeds the upper bound
/// of the right-hand side. `λ ≤ 0` is never excluded: the constants are
/// eigenfunctions of the trivial sector.
pub fn certify_exclusion(
    report: &GeometricSideReport,
    chi: &Character,
    lambda: &Ratio<i64>,
    tf: &TestFn,
) -> Exclusion {
    let prec = report.total.prec();
    let lhs = fhat_at_lambda(tf, lambda, prec);
    let rhs = if chi.is_trivial {
        let half = Enclosure::from_ratio(prec, 1, 2);
        &report.total - &tf.eval_f_hat(&SpectralArg::Imaginary(half))
    } else {
        report.total.clone()
    };
    let margin = &lhs - &rhs;
    let (status, reason) = if *lambda <= Ratio::from_integer(0) {
        (
            Status::Inconclusive,
            Some("criterion requires λ > 0".to_string()),
        )
    } else if margin.is_positive() {
        (Status::Excluded, None)
    } else if margin.is_negative() {
        (
            Status::Inconclusive,
            Some("geometric side exceeds the transform".to_string()),
        )
    } else {
        (Status::Inconclusive, Some("enclosures overlap".to_string()))
    };
    Exclusion {
        status,
        lhs,
        rhs,
        margin,
        reason,
    }
}

/// Class lists for the geometric side, with the completeness data of the
/// hyperbolic enumeration.
#[derive(Clone, Debug)]
pub struct ClassInput {
    pub elliptic: Vec<GeodesicClass>,
    pub hyperbolic: Vec<GeodesicClass>,
    pub certificate: Option<CompletenessCertificate>,
}

impl ClassInput {
    pub fn enumerate(length_bound: f64, max_word_length: u32) -> Result<Self> {
        let h = enumerate_hyperbolic(length_bound, max_word_length)?;
        Ok(ClassInput {
            elliptic: elliptic_classes()?,
            hyperbolic: h.classes,
            certificate: Some(h.certificate),
        })
    }

    /// Refuses lists that are not certified complete up to `4d`.
    pub fn validate(&self, tf: &TestFn) -> Result<()> {
        let cert = self.certificate.as_ref().ok_or_else(|| {
            Error::IncompleteInput("hyperbolic list has no completeness certificate".into())
        })?;
        let need = tf.support_radius();
        let need_f = *need.numer() as f64 / *need.denom() as f64;
        if cert.length_bound < need_f {
            return Err(Error::IncompleteInput(format!(
                "classes certified up to {} but the support needs {}",
                cert.length_bound, need
            )));
        }
        if cert.classes != self.hyperbolic.len() {
            return Err(Error::IncompleteInput(format!(
                "{} hyperbolic classes supplied, certificate lists {}",
                self.hyperbolic.len(),
                cert.classes
            )));
        }
        let expected_elliptic = elliptic_classes()?.len();
        if self.elliptic.len() != expected_elliptic {
            return Err(Error::IncompleteInput(format!(
                "{} elliptic classes supplied, expected {expected_elliptic}",
                self.elliptic.len()
            )));
        }
        Ok(())
    }
}

/// The deck group `G` of order 768 with its character table.
#[derive(Clone, Debug)]
pub struct DeckGroup {
    pub group: FiniteGroupData,
    pub table: CharacterTable,
}

impl DeckGroup {
    pub fn compute() -> Result<Self> {
        let p = Presentation::genus17_deck_group();
        let group = conjugacy_classes(&coset_enumerate(&p, &[], 1_000_000)?)?;
        let table = CharacterTable::compute(&group)?;
        Ok(DeckGroup { group, table })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub normalization: Normalization,
    pub precision: u32,
    pub max_precision: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            normalization: Normalization::Standard,
            precision: 128,
            max_precision: 512,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterResult {
    pub index: usize,
    pub degree: u64,
    pub trivial: bool,
    pub margin_lower_bound: f64,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassesUsed {
    pub elliptic: usize,
    pub hyperbolic: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapCertificate {
    pub d: String,
    pub lambda_max: String,
    pub group_order: usize,
    pub characters: Vec<CharacterResult>,
    pub classes_used: ClassesUsed,
    pub precision_bits: u32,
    pub normalization: Normalization,
    /// All characters excluded, hence `λ₁ ≥ lambda_max`.
    pub certified: bool,
}

/// Runs the criterion for every real irreducible character at `lambda_max`;
/// smaller `λ > 0` follow by monotonicity of `f̂_d(i·s)` in `s`.
pub fn certify_gap(lambda_max: Ratio<i64>, d: Ratio<i64>) -> Result<GapCertificate> {
    certify_gap_with_options(lambda_max, d, &CertifyOptions::default())
}

pub fn certify_gap_with_options(
    lambda_max: Ratio<i64>,
    d: Ratio<i64>,
    opts: &CertifyOptions,
) -> Result<GapCertificate> {
    let tf = TestFn::new(d)?;
    let support = tf.support_radius();
    let l = *support.numer() as f64 / *support.denom() as f64;
    if l > MAX_LENGTH_BOUND {
        return Err(Error::OutOfRange(format!(
            "4d = {support} exceeds the enumeration cap"
        )));
    }
    let deck = DeckGroup::compute()?;
    let classes = ClassInput::enumerate(l, crate::fuchsia::classes::DEFAULT_MAX_WORD_LENGTH)?;
    certify_gap_with(lambda_max, &tf, &deck, &classes, opts)
}

/// Certificate from precomputed inputs; precision doubles while some margin
/// is undecided, up to `opts.max_precision`.
pub fn certify_gap_with(
    lambda_max: Ratio<i64>,
    tf: &TestFn,
    deck: &DeckGroup,
    classes: &ClassInput,
    opts: &CertifyOptions,
) -> Result<GapCertificate> {
    classes.validate(tf)?;
    let mut prec = opts.precision;
    loop {
        match certify_at(lambda_max, tf, deck, classes, opts.normalization, prec) {
            Ok((cert, undecided)) => {
                if cert.certified || !undecided || prec * 2 > opts.max_precision {
                    return Ok(cert);
                }
            }
            Err(Error::PrecisionFail(msg)) => {
                if prec * 2 > opts.max_precision {
                    return Err(Error::PrecisionFail(msg));
                }
            }
            Err(e) => return Err(e),
        }
        prec *= 2;
    }
}

fn certify_at(
    lambda_max: Ratio<i64>,
    tf: &TestFn,
    deck: &DeckGroup,
    classes: &ClassInput,
    normalization: Normalization,
    prec: u32,
) -> Result<(GapCertificate, bool)> {
    let data = TraceData::prepare(
        tf,
        &classes.elliptic,
        &classes.hyperbolic,
        &deck.group,
        normalization,
        prec,
    )?;
    let chars = deck.table.real_characters(prec);
    let results: Vec<(CharacterResult, bool)> = chars
        .par_iter()
        .enumerate()
        .map(|(index, chi)| {
            let report = data.geometric_side(chi)?;
            let ex = certify_exclusion(&report, chi, &lambda_max, tf);
            let undecided = ex.status == Status::Inconclusive && !ex.margin.is_negative();
            Ok((
                CharacterResult {
                    index,
                    degree: chi.degree,
                    trivial: chi.is_trivial,
                    margin_lower_bound: ex.margin.lower_f64(),
                    status: ex.status,
                },
                undecided,
            ))
        })
        .collect::<Result<_>>()?;
    let undecided = results.iter().any(|(_, u)| *u);
    let characters: Vec<CharacterResult> = results.into_iter().map(|(r, _)| r).collect();
    let certified = characters.iter().all(|c| c.status == Status::Excluded);
    let cert = GapCertificate {
        d: tf.d().to_string(),
        lambda_max: lambda_max.to_string(),
        group_order: deck.group.order(),
        characters,
        classes_used: ClassesUsed {
            elliptic: classes.elliptic.len(),
            hyperbolic: classes.hyperbolic.len(),
        },
        precision_bits: prec,
        normalization,
        certified,
    };
    Ok((cert, undecided))
}
