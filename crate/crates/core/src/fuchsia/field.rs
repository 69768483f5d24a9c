//! Exact arithmetic in `K = Q(α)`, `α = 2cos(π/8)`, `α⁴ = 4α² − 2`, and in
//! the quadratic extension `K(t)`, `t = 2^{1/4}`, `t² = α² − 2`.
//!
//! Every matrix entry of the triangle group lies in `Z[1/2][α, t]`, so
//! coordinates are kept as integers over a power-of-two denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

/// `(num[0] + num[1]α + num[2]α² + num[3]α³) / 2^shift`, normalized so that
/// `shift` is minimal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem {
    num: [i128; 4],
    shift: u32,
}

fn normalize4(mut num: [i128; 4], mut shift: u32) -> ([i128; 4], u32) {
    if num.iter().all(|&c| c == 0) {
        return ([0; 4], 0);
    }
    let tz = num
        .iter()
        .filter(|&&c| c != 0)
        .map(|c| c.trailing_zeros())
        .min()
        .unwrap_or(0);
    let k = tz.min(shift);
    if k > 0 {
        for c in num.iter_mut() {
            *c >>= k;
        }
        shift -= k;
    }
    (num, shift)
}

impl FieldElem {
    pub fn new(num: [i128; 4], shift: u32) -> Self {
        let (num, shift) = normalize4(num, shift);
        FieldElem { num, shift }
    }

    pub fn from_int(n: i128) -> Self {
        FieldElem::new([n, 0, 0, 0], 0)
    }

    pub fn zero() -> Self {
        FieldElem::from_int(0)
    }

    pub fn one() -> Self {
        FieldElem::from_int(1)
    }

    /// `α = 2cos(π/8)`
    pub fn alpha() -> Self {
        FieldElem::new([0, 1, 0, 0], 0)
    }

    /// `1/α = (4α − α³)/2`
    pub fn alpha_inv() -> Self {
        FieldElem::new([0, 4, 0, -1], 1)
    }

    /// From rational coordinates; denominators must be powers of two.
    pub fn from_rationals(coords: [Ratio<i64>; 4]) -> Result<Self> {
        let max_den = coords.iter().map(|c| *c.denom()).max().unwrap_or(1);
        if coords.iter().any(|c| !(c.denom().count_ones() == 1)) {
            return Err(Error::OutOfRange(
                "coordinate denominators must be powers of two".into(),
            ));
        }
        let shift = max_den.trailing_zeros();
        let mut num = [0i128; 4];
        for (i, c) in coords.iter().enumerate() {
            num[i] = *c.numer() as i128 * (max_den / c.denom()) as i128;
        }
        Ok(FieldElem::new(num, shift))
    }

    /// Coordinates in the basis `1, α, α², α³`.
    pub fn coords(&self) -> [Ratio<i128>; 4] {
        let den = 1i128 << self.shift;
        self.num.map(|c| Ratio::new(c, den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    fn aligned(&self, shift: u32) -> [i128; 4] {
        let k = shift - self.shift;
        self.num.map(|c| c << k)
    }

    pub fn half(&self) -> Self {
        FieldElem::new(self.num, self.shift + 1)
    }

    pub fn scale(&self, k: i128) -> Self {
        FieldElem::new(self.num.map(|c| c * k), self.shift)
    }

    /// Enclosure of the real value under `α ↦ 2cos(π/8)`.
    pub fn enclose(&self, prec: u32) -> Enclosure {
        let a = alpha_enclosure(prec);
        let mut acc = Enclosure::zero(prec);
        for &c in self.num.iter().rev() {
            acc = &(&acc * &a) + &Enclosure::from_i128(prec, c);
        }
        scale_pow2(&acc, self.shift)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).mid_f64()
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut prec = 64;
        loop {
            let e = self.enclose(prec);
            if e.is_positive() {
                return 1;
            }
            if e.is_negative() {
                return -1;
            }
            prec *= 2;
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }
}

pub(crate) fn scale_pow2(e: &Enclosure, shift: u32) -> Enclosure {
    if shift == 0 {
        return e.clone();
    }
    let prec = e.prec();
    let den = Enclosure::from_i64(prec, 1i64 << shift.min(62));
    let mut out = e / &den;
    let mut rest = shift.saturating_sub(62);
    while rest > 0 {
        let k = rest.min(62);
        out = &out / &Enclosure::from_i64(prec, 1i64 << k);
        rest -= k;
    }
    out
}

/// `2cos(π/8) = sqrt(2 + sqrt 2)`
pub fn alpha_enclosure(prec: u32) -> Enclosure {
    let two = Enclosure::from_i64(prec, 2);
    (&two + &two.sqrt()).sqrt()
}

/// `2^{1/4}`
pub fn t_enclosure(prec: u32) -> Enclosure {
    Enclosure::from_i64(prec, 2).sqrt().sqrt()
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let s = self.shift.max(rhs.shift);
        let (a, b) = (self.aligned(s), rhs.aligned(s));
        FieldElem::new([a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]], s)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            num: self.num.map(|c| -c),
            shift: self.shift,
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let mut r = [0i128; 7];
        for i in 0..4 {
            if self.num[i] == 0 {
                continue;
            }
            for j in 0..4 {
                r[i + j] += self.num[i] * rhs.num[j];
            }
        }
        for k in [6, 5, 4] {
            let c = r[k];
            r[k] = 0;
            r[k - 2] += 4 * c;
            r[k - 4] -= 2 * c;
        }
        FieldElem::new([r[0], r[1], r[2], r[3]], self.shift + rhs.shift)
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}

owned_ops!(FieldElem);

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `(c0 + c1*a + c2*a^2 + c3*a^3)/2^k`, with `a` standing for `α`.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num;
        if self.shift == 0 {
            write!(f, "{}", format_poly(&n, "a"))
        } else {
            write!(f, "({})/{}", format_poly(&n, "a"), 1u128 << self.shift)
        }
    }
}

fn format_poly(n: &[i128; 4], var: &str) -> String {
    let mut s = String::new();
    for (i, &c) in n.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let mag = c.unsigned_abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag == 1 {
            mono
        } else {
            format!("{mag}*{mono}")
        };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// `re + im·t` with `t = 2^{1/4}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExtElem {
    pub re: FieldElem,
    pub im: FieldElem,
}

impl ExtElem {
    pub fn from_field(re: FieldElem) -> Self {
        ExtElem {
            re,
            im: FieldElem::zero(),
        }
    }

    pub fn from_int(n: i128) -> Self {
        ExtElem::from_field(FieldElem::from_int(n))
    }

    pub fn zero() -> Self {
        ExtElem::from_int(0)
    }

    pub fn one() -> Self {
        ExtElem::from_int(1)
    }

    /// `t = 2^{1/4}`
    pub fn t() -> Self {
        ExtElem {
            re: FieldElem::zero(),
            im: FieldElem::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn half(&self) -> Self {
        ExtElem {
            re: self.re.half(),
            im: self.im.half(),
        }
    }

    /// The `K`-part when the `t`-part vanishes.
    pub fn as_field(&self) -> Option<&FieldElem> {
        self.im.is_zero().then_some(&self.re)
    }

    pub fn enclose(&self, prec: u32) -> Enclosure {
        &self.re.enclose(prec) + &(&self.im.enclose(prec) * &t_enclosure(prec))
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).mid_f64()
    }

    /// Sign of the first nonzero integer coordinate; used to pick a
    /// representative of `±M`.
    pub(crate) fn leading_sign(&self) -> i32 {
        self.re
            .num
            .iter()
            .chain(self.im.num.iter())
            .find(|&&c| c != 0)
            .map_or(0, |&c| if c > 0 { 1 } else { -1 })
    }
}

impl Add for &ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: &ExtElem) -> ExtElem {
        ExtElem {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ExtElem {
    type Output = ExtElem;
    fn sub(self, rhs: &ExtElem) -> ExtElem {
        ExtElem {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for &ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        ExtElem {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ExtElem {
    type Output = ExtElem;
    fn neg(self) -> ExtElem {
        -&self
    }
}

impl Mul for &ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: &ExtElem) -> ExtElem {
        // t² = α² − 2
        let t2 = FieldElem::new([-2, 0, 1, 0], 0);
        let re = &(&self.re * &rhs.re) + &(&(&self.im * &rhs.im) * &t2);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ExtElem { re, im }
    }
}

owned_ops!(ExtElem);

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + ({})*t", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_polynomial_holds() {
        let a = FieldElem::alpha();
        let a2 = &a * &a;
        let a4 = &a2 * &a2;
        let rhs = &a2.scale(4) - &FieldElem::from_int(2);
        assert_eq!(a4, rhs);
        assert_eq!(&a * &FieldElem::alpha_inv(), FieldElem::one());
    }

    #[test]
    fn extension_square() {
        let t = ExtElem::t();
        let t2 = &t * &t;
        let a = FieldElem::alpha();
        assert_eq!(
            t2.as_field().unwrap(),
            &(&(&a * &a) - &FieldElem::from_int(2))
        );
        let t4 = &t2 * &t2;
        assert_eq!(t4, ExtElem::from_int(2));
    }

    #[test]
    fn real_embedding() {
        let a = FieldElem::alpha().enclose(128);
        assert!((a.mid_f64() - 2.0 * (std::f64::consts::PI / 8.0).cos()).abs() < 1e-15);
        assert_eq!(FieldElem::new([-2, 0, 1, 0], 0).signum(), 1);
        assert_eq!(FieldElem::new([3, -2, 0, 0], 0).signum(), -1);
        assert!((ExtElem::t().to_f64() - 2f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn rational_coordinates() {
        let c = [
            Ratio::new(1, 2),
            Ratio::new(0, 1),
            Ratio::new(3, 4),
            Ratio::new(1, 1),
        ];
        let e = FieldElem::from_rationals(c).unwrap();
        assert_eq!(e.coords()[2], Ratio::new(3, 4));
        assert!(
            FieldElem::from_rationals([Ratio::new(1, 3), 0.into(), 0.into(), 0.into()]).is_err()
        );
    }
}
