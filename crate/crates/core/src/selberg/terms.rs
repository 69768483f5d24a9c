//! The three terms of the geometric side for a character of the deck group.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jet::Jet;
use super::quadrature::{integrate, QuadratureConfig};
use super::testfn::{Piece, TestFn};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::fuchsia::{word_matrix, ClassKind, GeodesicClass};
use crate::groupkit::{Character, FiniteGroupData, Word};

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Constants of the identity and elliptic terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Identity coefficient `dim/48` (orbifold area π/12) and elliptic weight
    /// `1/|centralizer|`.
    #[default]
    Standard,
    /// Identity coefficient `dim/96` and elliptic weight `1/order(γ)`.
    AsPrinted,
}

impl Normalization {
    fn identity_denominator(self) -> i64 {
        match self {
            Normalization::Standard => 48,
            Normalization::AsPrinted => 96,
        }
    }
}

/// `∫_ℝ f_d′(x)/sinh(x/2) dx`, computed as twice the integral over `(0, 4d]`.
/// On the inner piece the integrand is `(f_d′(x)/x)·2/sinhc(x/2)`, smooth at 0.
pub fn identity_integral(tf: &TestFn, prec: u32) -> Result<Enclosure> {
    let cfg = QuadratureConfig::for_precision(prec);
    let half = Enclosure::from_ratio(prec, 1, 2);
    let inner = |x: &Enclosure, n: usize| {
        let p = tf.inner_derivative_over_x_jet(x, n);
        let s = Jet::sinhc_scaled(x, &half, n);
        p.div(&s).scale(&Enclosure::from_i64(prec, 2))
    };
    let outer = |x: &Enclosure, n: usize| {
        let p = tf.outer_derivative_jet(x, n);
        let (_, sh) = Jet::var(x, n).scale(&half).cosh_sinh();
        p.div(&sh)
    };
    let zero = Enclosure::zero(prec);
    let two_d = Enclosure::from_rational(prec, &(tf.d() * 2));
    let four_d = Enclosure::from_rational(prec, &(tf.d() * 4));
    let a = integrate(&inner, &zero, &two_d, &cfg)?;
    let b = integrate(&outer, &two_d, &four_d, &cfg)?;
    Ok((&a + &b).mul_i64(2))
}

/// `−(degree/48)·∫ f_d′(x)/sinh(x/2) dx` (or `/96` as printed).
pub fn identity_term(
    tf: &TestFn,
    degree: u64,
    norm: Normalization,
    prec: u32,
) -> Result<Enclosure> {
    let i = identity_integral(tf, prec)?;
    Ok(-&i
        .mul_i64(degree as i64)
        .div_i64(norm.identity_denominator()))
}

/// `∫_0^∞ cosh(x/2)/(cosh x − 1 + 2 sin²θ)·f_d(x) dx`.
pub fn elliptic_integral(tf: &TestFn, sin2: &Enclosure, prec: u32) -> Result<Enclosure> {
    let cfg = QuadratureConfig::for_precision(prec);
    let half = Enclosure::from_ratio(prec, 1, 2);
    let shift = &sin2.mul_i64(2) - &Enclosure::one(prec);
    let kernel = |x: &Enclosure, n: usize| {
        let (ch, _) = Jet::var(x, n).scale(&half).cosh_sinh();
        let (c1, _) = Jet::var(x, n).cosh_sinh();
        ch.div(&c1.add_const(&shift))
    };
    let zero = Enclosure::zero(prec);
    let two_d = Enclosure::from_rational(prec, &(tf.d() * 2));
    let four_d = Enclosure::from_rational(prec, &(tf.d() * 4));
    let inner = |x: &Enclosure, n: usize| &kernel(x, n) * &tf.piece_jet(Piece::Inner, x, n);
    let outer = |x: &Enclosure, n: usize| &kernel(x, n) * &tf.piece_jet(Piece::Outer, x, n);
    Ok(&integrate(&inner, &zero, &two_d, &cfg)? + &integrate(&outer, &two_d, &four_d, &cfg)?)
}

/// Character-independent data for one elliptic class.
#[derive(Clone, Debug)]
pub struct EllipticEntry {
    pub word: Word,
    pub group_class: usize,
    pub weight: u32,
    pub integral: Enclosure,
}

/// One summand `ℓ(γ)·f_d(nℓ)/(2 sinh(nℓ/2))` of a primitive class `γ`.
#[derive(Clone, Debug)]
pub struct HyperbolicEntry {
    pub word: Word,
    pub power: u32,
    pub group_class: usize,
    pub coefficient: Enclosure,
}

/// Everything in the geometric side except the character values.
#[derive(Clone, Debug)]
pub struct TraceData {
    pub tf: TestFn,
    pub normalization: Normalization,
    pub prec: u32,
    pub identity_integral: Enclosure,
    pub elliptic: Vec<EllipticEntry>,
    pub hyperbolic: Vec<HyperbolicEntry>,
}

#[derive(Clone, Debug)]
pub struct ClassContribution {
    pub label: String,
    pub power: u32,
    pub value: Enclosure,
}

#[derive(Clone, Debug)]
pub struct GeometricSideReport {
    pub identity_term: Enclosure,
    pub elliptic_term: Enclosure,
    pub hyperbolic_term: Enclosure,
    pub total: Enclosure,
    pub contributions: Vec<ClassContribution>,
}

fn sin2_from_class(c: &GeodesicClass, prec: u32) -> Result<Enclosure> {
    let tr = word_matrix(&c.representative)?.field_trace()?.enclose(prec);
    Ok(&Enclosure::one(prec) - &tr.div_i64(2).sqr())
}

impl TraceData {
    /// Integrals for every class, computed once. `hyperbolics` must contain
    /// every primitive class of length up to `4d`.
    pub fn prepare(
        tf: &TestFn,
        elliptics: &[GeodesicClass],
        hyperbolics: &[GeodesicClass],
        group: &FiniteGroupData,
        normalization: Normalization,
        prec: u32,
    ) -> Result<Self> {
        Ok(TraceData {
            tf: tf.clone(),
            normalization,
            prec,
            identity_integral: identity_integral(tf, prec)?,
            elliptic: prepare_elliptic(tf, elliptics, group, normalization, prec)?,
            hyperbolic: prepare_hyperbolic(tf, hyperbolics, group, prec)?,
        })
    }

    pub fn identity_term(&self, degree: u64) -> Enclosure {
        -&self
            .identity_integral
            .mul_i64(degree as i64)
            .div_i64(self.normalization.identity_denominator())
    }

    pub fn geometric_side(&self, chi: &Character) -> Result<GeometricSideReport> {
        let prec = self.prec;
        let value = |c: usize| -> Result<Enclosure> {
            chi.values
                .get(c)
                .map(|v| v.with_prec(prec))
                .ok_or_else(|| Error::ClassMismatch(format!("character has no value at class {c}")))
        };
        let mut contributions = Vec::new();
        let mut elliptic_term = Enclosure::zero(prec);
        for e in &self.elliptic {
            let v = (&value(e.group_class)? * &e.integral).div_i64(e.weight as i64);
            contributions.push(ClassContribution {
                label: format!("elliptic {}", e.word.format(&NAMES)),
                power: 1,
                value: v.clone(),
            });
            elliptic_term = &elliptic_term + &v;
        }
        let mut hyperbolic_term = Enclosure::zero(prec);
        for h in &self.hyperbolic {
            let v = &value(h.group_class)? * &h.coefficient;
            contributions.push(ClassContribution {
                label: format!("hyperbolic {}", h.word.format(&NAMES)),
                power: h.power,
                value: v.clone(),
            });
            hyperbolic_term = &hyperbolic_term + &v;
        }
        let identity_term = self.identity_term(chi.degree);
        let total = &(&identity_term + &elliptic_term) + &hyperbolic_term;
        Ok(GeometricSideReport {
            identity_term,
            elliptic_term,
            hyperbolic_term,
            total,
            contributions,
        })
    }
}

fn prepare_elliptic(
    tf: &TestFn,
    elliptics: &[GeodesicClass],
    group: &FiniteGroupData,
    normalization: Normalization,
    prec: u32,
) -> Result<Vec<EllipticEntry>> {
    elliptics
        .par_iter()
        .map(|c| {
            let ClassKind::Elliptic {
                order,
                centralizer_order,
                ..
            } = c.kind
            else {
                return Err(Error::ClassMismatch(format!(
                    "{:?} is not elliptic",
                    c.representative
                )));
            };
            let weight = match normalization {
                Normalization::Standard => centralizer_order,
                Normalization::AsPrinted => order,
            };
            let sin2 = sin2_from_class(c, prec)?;
            Ok(EllipticEntry {
                word: c.representative.clone(),
                group_class: class_in_group(group, &c.representative)?,
                weight,
                integral: elliptic_integral(tf, &sin2, prec)?,
            })
        })
        .collect()
}

fn prepare_hyperbolic(
    tf: &TestFn,
    hyperbolics: &[GeodesicClass],
    group: &FiniteGroupData,
    prec: u32,
) -> Result<Vec<HyperbolicEntry>> {
    let four_d = Enclosure::from_rational(prec, &tf.support_radius());
    let mut hyperbolic = Vec::new();
    for c in hyperbolics {
        let ClassKind::Hyperbolic { primitive, .. } = &c.kind else {
            return Err(Error::ClassMismatch(format!(
                "{:?} is not hyperbolic",
                c.representative
            )));
        };
        if !primitive {
            continue;
        }
        let tr = word_matrix(&c.representative)?
            .field_trace()?
            .abs()
            .enclose(prec);
        let len = tr.div_i64(2).acosh().mul_i64(2);
        for n in 1u32.. {
            let nl = len.mul_i64(n as i64);
            if nl.certainly_gt(&four_d) {
                break;
            }
            let w = c.representative.pow(n as i64);
            let coefficient = &(&len * &tf.eval_f(&nl)) / &nl.div_i64(2).sinh().mul_i64(2);
            hyperbolic.push(HyperbolicEntry {
                group_class: class_in_group(group, &w)?,
                word: c.representative.clone(),
                power: n,
                coefficient,
            });
        }
    }
    Ok(hyperbolic)
}

/// Conjugacy class in `G` of the image of a word in `x, y, z`.
pub fn class_in_group(group: &FiniteGroupData, w: &Word) -> Result<usize> {
    group.class_of_word(w).map_err(|e| {
        Error::ClassMismatch(format!(
            "cannot map {:?} into the deck group: {e}",
            w.letters()
        ))
    })
}

/// Elliptic term alone: `Σ tr ρ̃(γ)/m(γ)·∫…`.
pub fn elliptic_term(
    tf: &TestFn,
    chi: &Character,
    classes: &[GeodesicClass],
    group: &FiniteGroupData,
    norm: Normalization,
    prec: u32,
) -> Result<Enclosure> {
    let mut acc = Enclosure::zero(prec);
    for e in prepare_elliptic(tf, classes, group, norm, prec)? {
        let v = chi.values.get(e.group_class).ok_or_else(|| {
            Error::ClassMismatch(format!("character has no value at class {}", e.group_class))
        })?;
        acc = &acc + &(&v.with_prec(prec) * &e.integral).div_i64(e.weight as i64);
    }
    Ok(acc)
}

/// Hyperbolic term alone: `Σ ℓ(γ) Σ_n tr ρ̃(γⁿ) f_d(nℓ)/(2 sinh(nℓ/2))`.
pub fn hyperbolic_term(
    tf: &TestFn,
    chi: &Character,
    classes: &[GeodesicClass],
    group: &FiniteGroupData,
    prec: u32,
) -> Result<Enclosure> {
    let mut acc = Enclosure::zero(prec);
    for h in prepare_hyperbolic(tf, classes, group, prec)? {
        let v = chi.values.get(h.group_class).ok_or_else(|| {
            Error::ClassMismatch(format!("character has no value at class {}", h.group_class))
        })?;
        acc = &acc + &(&v.with_prec(prec) * &h.coefficient);
    }
    Ok(acc)
}

/// All three terms for one character.
pub fn geometric_side(
    tf: &TestFn,
    chi: &Character,
    elliptics: &[GeodesicClass],
    hyperbolics: &[GeodesicClass],
    group: &FiniteGroupData,
    norm: Normalization,
    prec: u32,
) -> Result<GeometricSideReport> {
    TraceData::prepare(tf, elliptics, hyperbolics, group, norm, prec)?.geometric_side(chi)
}
