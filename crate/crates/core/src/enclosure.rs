//! Outward-rounded real intervals on top of MPFR.
//!
//! Every operation rounds the lower endpoint toward −∞ and the upper endpoint
//! toward +∞, so the true value of any expression built from enclosures stays
//! inside the result. Elementary functions use MPFR's correctly rounded
//! directed modes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use rug::float::{Constant, Round, Special};
use rug::ops::PowAssignRound;
use rug::{Float, Rational};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, val: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: rug::Assign<T> + rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

fn fmin(a: Float, b: Float) -> Float {
    if a <= b {
        a
    } else {
        b
    }
}

fn fmax(a: Float, b: Float) -> Float {
    if a >= b {
        a
    } else {
        b
    }
}

macro_rules! monotone_increasing {
    ($name:ident, $round:ident) => {
        pub fn $name(&self) -> Enclosure {
            let mut lo = self.lo.clone();
            lo.$round(Round::Down);
            let mut hi = self.hi.clone();
            hi.$round(Round::Up);
            Enclosure::from_floats(lo, hi)
        }
    };
}

impl Enclosure {
    fn from_floats(lo: Float, hi: Float) -> Self {
        debug_assert!(lo.is_nan() || hi.is_nan() || lo <= hi, "inverted enclosure");
        Enclosure { lo, hi }
    }

    /// Interval `[lo, hi]`; the endpoints are rounded outward to `prec` bits.
    pub fn new(prec: u32, lo: &Float, hi: &Float) -> Self {
        assert!(lo <= hi, "lower endpoint exceeds upper endpoint");
        Enclosure::from_floats(down(prec, lo), up(prec, hi))
    }

    pub fn from_f64(prec: u32, x: f64) -> Self {
        Enclosure::from_floats(down(prec, x), up(prec, x))
    }

    pub fn from_i64(prec: u32, x: i64) -> Self {
        Enclosure::from_floats(down(prec, x), up(prec, x))
    }

    pub fn from_i128(prec: u32, x: i128) -> Self {
        Enclosure::from_floats(down(prec, x), up(prec, x))
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_i64(prec, 0)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(prec, 1)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(prec: u32, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let q = Rational::from((num, den));
        Enclosure::from_floats(down(prec, &q), up(prec, &q))
    }

    pub fn from_rational(prec: u32, q: &Ratio<i64>) -> Self {
        Self::from_ratio(prec, *q.numer(), *q.denom())
    }

    pub fn pi(prec: u32) -> Self {
        Enclosure::from_floats(down(prec, Constant::Pi), up(prec, Constant::Pi))
    }

    /// The whole real line; what division by an enclosure of zero returns.
    pub fn entire(prec: u32) -> Self {
        Enclosure::from_floats(
            Float::with_val(prec, Special::NegInfinity),
            Float::with_val(prec, Special::Infinity),
        )
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn lower(&self) -> &Float {
        &self.lo
    }

    pub fn upper(&self) -> &Float {
        &self.hi
    }

    pub fn lower_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn upper_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        let prec = self.prec() + 1;
        let m = Float::with_val(prec, &self.lo + &self.hi) / 2u32;
        m.to_f64()
    }

    /// Midpoint as a thin enclosure (exact in `prec + 1` bits).
    pub fn mid(&self) -> Enclosure {
        let prec = self.prec() + 1;
        let m = Float::with_val(prec, &self.lo + &self.hi) / 2u32;
        Enclosure::from_floats(m.clone(), m)
    }

    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_round(Round::Up)
    }

    /// Largest absolute value of any point of the enclosure.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.prec(), self.hi.abs_ref());
        fmax(a, b)
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_f64(0.0)
    }

    pub fn contains(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Every point of `self` is strictly greater than every point of `other`.
    pub fn certainly_gt(&self, other: &Enclosure) -> bool {
        self.lo > other.hi
    }

    pub fn certainly_lt(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec().max(other.prec());
        Enclosure::from_floats(
            fmin(down(prec, &self.lo), down(prec, &other.lo)),
            fmax(up(prec, &self.hi), up(prec, &other.hi)),
        )
    }

    /// Intersection; `None` when the enclosures are disjoint.
    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = fmax(self.lo.clone(), other.lo.clone());
        let hi = fmin(self.hi.clone(), other.hi.clone());
        (lo <= hi).then(|| Enclosure::from_floats(lo, hi))
    }

    /// Pointwise maximum of two enclosed reals.
    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure::from_floats(
            fmax(self.lo.clone(), other.lo.clone()),
            fmax(self.hi.clone(), other.hi.clone()),
        )
    }

    pub fn min(&self, other: &Enclosure) -> Enclosure {
        Enclosure::from_floats(
            fmin(self.lo.clone(), other.lo.clone()),
            fmin(self.hi.clone(), other.hi.clone()),
        )
    }

    /// Re-round to a different working precision.
    pub fn with_prec(&self, prec: u32) -> Enclosure {
        Enclosure::from_floats(down(prec, &self.lo), up(prec, &self.hi))
    }

    /// `self ± r` for a nonnegative radius `r`.
    pub fn inflate(&self, r: &Float) -> Enclosure {
        let prec = self.prec();
        Enclosure::from_floats(down(prec, &self.lo - r), up(prec, &self.hi + r))
    }

    /// Symmetric enclosure `[-r, r]`.
    pub fn symmetric(prec: u32, r: &Float) -> Enclosure {
        Enclosure::from_floats(down(prec, -r.clone()), up(prec, r))
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            let prec = self.prec();
            Enclosure::from_floats(Float::with_val(prec, 0), self.mag())
        }
    }

    pub fn sqr(&self) -> Enclosure {
        let a = self.abs();
        let prec = self.prec();
        Enclosure::from_floats(down(prec, a.lo.square_ref()), up(prec, a.hi.square_ref()))
    }

    pub fn powi(&self, n: u32) -> Enclosure {
        match n {
            0 => Enclosure::one(self.prec()),
            1 => self.clone(),
            _ if n.is_multiple_of(2) => {
                let h = self.sqr();
                h.pow_nonneg(n / 2)
            }
            _ => {
                let prec = self.prec();
                let mut lo = self.lo.clone();
                lo.pow_assign_round(n, Round::Down);
                let mut hi = self.hi.clone();
                hi.pow_assign_round(n, Round::Up);
                Enclosure::from_floats(down(prec, &lo), up(prec, &hi))
            }
        }
    }

    fn pow_nonneg(&self, n: u32) -> Enclosure {
        let mut lo = self.lo.clone();
        lo.pow_assign_round(n, Round::Down);
        let mut hi = self.hi.clone();
        hi.pow_assign_round(n, Round::Up);
        Enclosure::from_floats(lo, hi)
    }

    pub fn recip(&self) -> Enclosure {
        Enclosure::one(self.prec()) / self
    }

    pub fn mul_i64(&self, k: i64) -> Enclosure {
        self * &Enclosure::from_i64(self.prec(), k)
    }

    pub fn div_i64(&self, k: i64) -> Enclosure {
        self / &Enclosure::from_i64(self.prec(), k)
    }

    pub fn sqrt(&self) -> Enclosure {
        let prec = self.prec();
        let zero = Float::with_val(prec, 0);
        let mut lo = fmax(self.lo.clone(), zero.clone());
        lo.sqrt_round(Round::Down);
        let mut hi = fmax(self.hi.clone(), zero);
        hi.sqrt_round(Round::Up);
        Enclosure::from_floats(lo, hi)
    }

    monotone_increasing!(exp, exp_round);
    monotone_increasing!(sinh, sinh_round);
    monotone_increasing!(asinh, asinh_round);
    monotone_increasing!(atan, atan_round);
    monotone_increasing!(tanh, tanh_round);

    pub fn ln(&self) -> Enclosure {
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Enclosure::from_floats(lo, hi)
    }

    pub fn cosh(&self) -> Enclosure {
        let a = self.abs();
        let mut lo = a.lo.clone();
        lo.cosh_round(Round::Down);
        let mut hi = a.hi;
        hi.cosh_round(Round::Up);
        let one = Float::with_val(self.prec(), 1);
        Enclosure::from_floats(fmax(lo, one), hi)
    }

    /// `acosh` on `[1, ∞)`; the part of the enclosure below 1 is clipped.
    pub fn acosh(&self) -> Enclosure {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let mut lo = fmax(self.lo.clone(), one.clone());
        lo.acosh_round(Round::Down);
        let mut hi = fmax(self.hi.clone(), one);
        hi.acosh_round(Round::Up);
        Enclosure::from_floats(lo, hi)
    }

    /// `acos` on `[-1, 1]`; the part outside is clipped. Decreasing.
    pub fn acos(&self) -> Enclosure {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let m_one = Float::with_val(prec, -1);
        let clip = |x: &Float| fmin(fmax(x.clone(), m_one.clone()), one.clone());
        let mut lo = clip(&self.hi);
        lo.acos_round(Round::Down);
        let mut hi = clip(&self.lo);
        hi.acos_round(Round::Up);
        Enclosure::from_floats(lo, hi)
    }

    /// Whether some `offset + 2kπ` may lie in the enclosure (never a false negative).
    fn may_contain_periodic(&self, offset: &Enclosure) -> bool {
        let prec = self.prec();
        let two_pi = Enclosure::pi(prec).mul_i64(2);
        let lo = Enclosure::from_floats(self.lo.clone(), self.lo.clone());
        let hi = Enclosure::from_floats(self.hi.clone(), self.hi.clone());
        let q_lo = &(&lo - offset) / &two_pi;
        let q_hi = &(&hi - offset) / &two_pi;
        let k_min = q_lo.lo.clone().ceil();
        let k_max = q_hi.hi.clone().floor();
        k_min <= k_max
    }

    fn periodic(
        &self,
        f: fn(&mut Float, Round) -> Ordering,
        max_at: Enclosure,
        min_at: Enclosure,
    ) -> Enclosure {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        let m_one = Float::with_val(prec, -1);
        if !self.is_finite() || self.width() >= *Enclosure::pi(prec).mul_i64(2).lower() {
            return Enclosure::from_floats(m_one, one);
        }
        let eval = |x: &Float, r: Round| {
            let mut v = x.clone();
            f(&mut v, r);
            v
        };
        let mut lo = fmin(eval(&self.lo, Round::Down), eval(&self.hi, Round::Down));
        let mut hi = fmax(eval(&self.lo, Round::Up), eval(&self.hi, Round::Up));
        if self.may_contain_periodic(&max_at) {
            hi = one;
        }
        if self.may_contain_periodic(&min_at) {
            lo = m_one;
        }
        Enclosure::from_floats(lo, hi)
    }

    pub fn sin(&self) -> Enclosure {
        let prec = self.prec();
        let half_pi = Enclosure::pi(prec).div_i64(2);
        self.periodic(|x, r| x.sin_round(r), half_pi.clone(), -&half_pi)
    }

    pub fn cos(&self) -> Enclosure {
        let prec = self.prec();
        self.periodic(
            |x, r| x.cos_round(r),
            Enclosure::zero(prec),
            Enclosure::pi(prec),
        )
    }

    /// `sin(x)/x`, continuous at 0.
    pub fn sinc(&self) -> Enclosure {
        self.small_arg_ratio(false)
    }

    /// `sinh(x)/x`, continuous at 0.
    pub fn sinhc(&self) -> Enclosure {
        self.small_arg_ratio(true)
    }

    fn small_arg_ratio(&self, hyperbolic: bool) -> Enclosure {
        let prec = self.prec();
        let one = Float::with_val(prec, 1);
        if self.mag() > one {
            // Away from the removable singularity: plain quotient.
            let num = if hyperbolic { self.sinh() } else { self.sin() };
            return &num / self;
        }
        // |x| <= 1: truncated Taylor series in x² with a tail bound.
        let terms = series_terms(prec);
        let x2 = self.sqr();
        let mut acc = Enclosure::zero(prec);
        for k in (0..terms).rev() {
            let c = &Enclosure::one(prec) / &factorial(prec, 2 * k + 1);
            let signed = if !hyperbolic && k % 2 == 1 { -&c } else { c };
            acc = &(&acc * &x2) + &signed;
        }
        // Tail: sum_{k >= terms} |x|^{2k}/(2k+1)! <= |x|^{2 terms}/(2 terms + 1)! * cosh(1).
        let r = self.mag();
        let mut tail = Enclosure::from_floats(r.clone(), r).powi(2 * terms as u32);
        tail = &tail / &factorial(prec, 2 * terms + 1);
        tail = &tail * &Enclosure::one(prec).cosh();
        acc.inflate(tail.upper())
    }
}

/// Number of series terms for `|x| <= 1` so the tail is far below `2^-prec`.
pub(crate) fn series_terms(prec: u32) -> usize {
    let mut k = 4usize;
    let mut log2_fact = 0.0f64;
    let mut n = 1usize;
    loop {
        while n <= 2 * k + 1 {
            log2_fact += (n as f64).log2();
            n += 1;
        }
        if log2_fact > prec as f64 + 16.0 {
            return k;
        }
        k += 1;
    }
}

pub(crate) fn factorial(prec: u32, n: usize) -> Enclosure {
    let mut acc = Enclosure::one(prec);
    for i in 2..=n as i64 {
        acc = acc.mul_i64(i);
    }
    acc
}

impl Neg for &Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::from_floats(-self.hi.clone(), -self.lo.clone())
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        -&self
    }
}

impl Add for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec().max(rhs.prec());
        Enclosure::from_floats(down(prec, &self.lo + &rhs.lo), up(prec, &self.hi + &rhs.hi))
    }
}

impl Sub for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec().max(rhs.prec());
        Enclosure::from_floats(down(prec, &self.lo - &rhs.hi), up(prec, &self.hi - &rhs.lo))
    }
}

impl Mul for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec().max(rhs.prec());
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            // 0 * inf is taken as 0: the corresponding endpoint is finite in practice.
            let (l, h) = if (a.is_zero() && b.is_infinite()) || (b.is_zero() && a.is_infinite()) {
                (Float::with_val(prec, 0), Float::with_val(prec, 0))
            } else {
                (down(prec, a * b), up(prec, a * b))
            };
            lo = Some(match lo {
                None => l,
                Some(v) => fmin(v, l),
            });
            hi = Some(match hi {
                None => h,
                Some(v) => fmax(v, h),
            });
        }
        Enclosure::from_floats(lo.unwrap(), hi.unwrap())
    }
}

impl Div for &Enclosure {
    type Output = Enclosure;
    fn div(self, rhs: &Enclosure) -> Enclosure {
        let prec = self.prec().max(rhs.prec());
        if rhs.contains_zero() {
            return Enclosure::entire(prec);
        }
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let l = down(prec, a / b);
            let h = up(prec, a / b);
            lo = Some(match lo {
                None => l,
                Some(v) => fmin(v, l),
            });
            hi = Some(match hi {
                None => h,
                Some(v) => fmax(v, h),
            });
        }
        Enclosure::from_floats(lo.unwrap(), hi.unwrap())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: Enclosure) -> Enclosure {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Enclosure> for Enclosure {
            type Output = Enclosure;
            fn $m(self, rhs: &Enclosure) -> Enclosure {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl std::iter::Sum for Enclosure {
    fn sum<I: Iterator<Item = Enclosure>>(iter: I) -> Enclosure {
        let mut acc: Option<Enclosure> = None;
        for e in iter {
            acc = Some(match acc {
                None => e,
                Some(a) => &a + &e,
            });
        }
        acc.unwrap_or_else(|| Enclosure::zero(DEFAULT_PRECISION))
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(
            f,
            "[{}, {}]",
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up)
        )
    }
}

impl Enclosure {
    /// `midpoint±radius` in decimal, with the radius rounded up so the pair
    /// still certifies the enclosure.
    pub fn to_decimal_with_error(&self) -> String {
        let mid = self.mid_f64();
        let prec = self.prec();
        let m = Float::with_val(prec, mid);
        let r1 = up(prec, &self.hi - &m);
        let r2 = up(prec, &m - &self.lo);
        let r = fmax(r1, r2).to_f64_round(Round::Up);
        format!("{:.17}±{:.1e}", mid, r.max(0.0))
    }
}
