//! The test function `f_d = ((1/2d) χ_[−d,d])^{*4}` and its Fourier transform.

use num_rational::Ratio;

use super::jet::Jet;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestFn {
    d: Ratio<i64>,
}

/// Argument of `f̂_d`: real `y`, or `i·s` with `s` real.
#[derive(Clone, Debug)]
pub enum SpectralArg {
    Real(Enclosure),
    Imaginary(Enclosure),
}

/// Which cubic piece of `f_d` applies: `|x| ≤ 2d` or `2d ≤ |x| ≤ 4d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Inner,
    Outer,
}

impl TestFn {
    pub fn new(d: Ratio<i64>) -> Result<Self> {
        if d <= Ratio::from_integer(0) {
            return Err(Error::NonPositive("d"));
        }
        Ok(TestFn { d })
    }

    pub fn d(&self) -> Ratio<i64> {
        self.d
    }

    pub fn d_enclosure(&self, prec: u32) -> Enclosure {
        Enclosure::from_rational(prec, &self.d)
    }

    /// `4d`, the end of the support.
    pub fn support_radius(&self) -> Ratio<i64> {
        self.d * 4
    }

    /// The cubic of the given piece, valid for `x ≥ 0`.
    fn piece(&self, p: Piece, x: &Enclosure) -> Enclosure {
        let prec = x.prec();
        let d = self.d_enclosure(prec);
        let norm = d.mul_i64(12);
        match p {
            Piece::Inner => {
                // (4 − (3/2)(x/d)² + (3/8)(x/d)³) / 12d
                let u = x / &d;
                let u2 = u.sqr();
                let poly = &(&Enclosure::from_i64(prec, 4)
                    - &(&u2 * &Enclosure::from_ratio(prec, 3, 2)))
                    + &(&(&u2 * &u) * &Enclosure::from_ratio(prec, 3, 8));
                &poly / &norm
            }
            Piece::Outer => {
                let u = x / &d;
                let v = &Enclosure::from_i64(prec, 2) - &u.div_i64(2);
                &v.powi(3) / &norm
            }
        }
    }

    /// Jet of a piece in the variable `x` at `x0`.
    pub fn piece_jet(&self, p: Piece, x0: &Enclosure, n: usize) -> Jet {
        let prec = x0.prec();
        let d = self.d_enclosure(prec);
        let inv_norm = d.mul_i64(12).recip();
        let u = Jet::var(x0, n).scale(&d.recip());
        let out = match p {
            Piece::Inner => {
                let u2 = &u * &u;
                let u3 = &u2 * &u;
                let a = u2.scale(&Enclosure::from_ratio(prec, -3, 2));
                let b = u3.scale(&Enclosure::from_ratio(prec, 3, 8));
                (&a + &b).add_const(&Enclosure::from_i64(prec, 4))
            }
            Piece::Outer => {
                let v = u
                    .scale(&Enclosure::from_ratio(prec, -1, 2))
                    .add_const(&Enclosure::from_i64(prec, 2));
                &(&v * &v) * &v
            }
        };
        out.scale(&inv_norm)
    }

    /// `f_d′(x)/x` on the inner piece, `(−3/d² + (9/8)x/d³)/12d`, as a jet.
    pub fn inner_derivative_over_x_jet(&self, x0: &Enclosure, n: usize) -> Jet {
        let prec = x0.prec();
        let d = self.d_enclosure(prec);
        let d2 = d.sqr();
        let d3 = &d2 * &d;
        let norm = d.mul_i64(12);
        let a = &Enclosure::from_i64(prec, -3) / &(&d2 * &norm);
        let b = &Enclosure::from_ratio(prec, 9, 8) / &(&d3 * &norm);
        Jet::var(x0, n).scale(&b).add_const(&a)
    }

    /// `f_d′` on the outer piece, `−(3/2d)(2 − x/2d)²/12d`, as a jet.
    pub fn outer_derivative_jet(&self, x0: &Enclosure, n: usize) -> Jet {
        let prec = x0.prec();
        let d = self.d_enclosure(prec);
        let v = Jet::var(x0, n)
            .scale(&(&Enclosure::from_ratio(prec, -1, 2) / &d))
            .add_const(&Enclosure::from_i64(prec, 2));
        let coef = &Enclosure::from_ratio(prec, -3, 2) / &(&d * &d.mul_i64(12));
        (&v * &v).scale(&coef)
    }

    /// Enclosure of `f_d(x)`; wide arguments are split at the breakpoints.
    pub fn eval_f(&self, x: &Enclosure) -> Enclosure {
        let prec = x.prec();
        let a = x.abs();
        let two_d = Enclosure::from_rational(prec, &(self.d * 2));
        let four_d = Enclosure::from_rational(prec, &(self.d * 4));
        let zero = Enclosure::zero(prec);
        let mut out: Option<Enclosure> = None;
        let mut add = |v: Enclosure| {
            out = Some(match out.take() {
                None => v,
                Some(o) => o.hull(&v),
            })
        };
        if !a.certainly_gt(&two_d) {
            let part = a
                .intersect(&zero.hull(&two_d))
                .unwrap_or_else(|| two_d.clone());
            add(self.piece(Piece::Inner, &part));
        }
        if !a.certainly_lt(&two_d) && !a.certainly_gt(&four_d) {
            let part = a
                .intersect(&two_d.hull(&four_d))
                .unwrap_or_else(|| four_d.clone());
            add(self.piece(Piece::Outer, &part));
        }
        if !a.certainly_lt(&four_d) {
            add(zero);
        }
        out.expect("some branch applies")
    }

    /// Enclosure of `f_d′(x)`.
    pub fn eval_f_prime(&self, x: &Enclosure) -> Enclosure {
        let prec = x.prec();
        let two_d = Enclosure::from_rational(prec, &(self.d * 2));
        let four_d = Enclosure::from_rational(prec, &(self.d * 4));
        let a = x.abs();
        let sign = if x.is_negative() { -1 } else { 1 };
        if a.certainly_lt(&two_d) {
            let j = self.inner_derivative_over_x_jet(&a, 0);
            (&j.c[0] * &a).mul_i64(sign)
        } else if a.certainly_gt(&two_d) && a.certainly_lt(&four_d) {
            self.outer_derivative_jet(&a, 0).c[0].mul_i64(sign)
        } else if a.certainly_gt(&four_d) {
            Enclosure::zero(prec)
        } else {
            // Straddles a breakpoint: f′ is continuous, take the hull of both sides.
            let i = &self.inner_derivative_over_x_jet(&a, 0).c[0] * &a;
            let o = self.outer_derivative_jet(&a, 0).c[0].clone();
            i.hull(&o).hull(&Enclosure::zero(prec)).mul_i64(sign)
        }
    }

    /// `f̂_d(y) = (sin(dy)/(dy))⁴`, and `(sinh(ds)/(ds))⁴` at `y = i·s`.
    pub fn eval_f_hat(&self, y: &SpectralArg) -> Enclosure {
        match y {
            SpectralArg::Real(y) => {
                let dy = y * &self.d_enclosure(y.prec());
                dy.sinc().sqr().sqr()
            }
            SpectralArg::Imaginary(s) => {
                let ds = s * &self.d_enclosure(s.prec());
                ds.sinhc().sqr().sqr()
            }
        }
    }

    /// `√(λ − 1/4)`, real for `λ ≥ 1/4` and `i·√(1/4 − λ)` below.
    pub fn spectral_arg(lambda: &Ratio<i64>, prec: u32) -> SpectralArg {
        let q = *lambda - Ratio::new(1, 4);
        if q >= Ratio::from_integer(0) {
            SpectralArg::Real(Enclosure::from_rational(prec, &q).sqrt())
        } else {
            SpectralArg::Imaginary(Enclosure::from_rational(prec, &(-q)).sqrt())
        }
    }
}

/// Parses `"0.2501"`, `"3/4"` or `"2"` into a rational.
pub fn parse_rational(s: &str) -> Result<Ratio<i64>> {
    let s = s.trim();
    let bad = || Error::OutOfRange(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || frac.len() > 15 {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: i64 = digits.parse().map_err(|_| bad())?;
    let q = Ratio::new(n, 10i64.pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tf() -> TestFn {
        TestFn::new(Ratio::new(3, 4)).unwrap()
    }

    #[test]
    fn closed_form_values() {
        let prec = 128;
        assert!(tf()
            .eval_f(&Enclosure::zero(prec))
            .overlaps(&Enclosure::from_ratio(prec, 4, 9)));
        assert!(tf().eval_f(&Enclosure::from_i64(prec, 3)).contains_f64(0.0));
        assert!(tf()
            .eval_f(&Enclosure::from_ratio(prec, 3, 2))
            .overlaps(&Enclosure::from_ratio(prec, 1, 9)));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("0.2501").unwrap(), Ratio::new(2501, 10000));
        assert_eq!(parse_rational("3/4").unwrap(), Ratio::new(3, 4));
        assert_eq!(parse_rational("-2").unwrap(), Ratio::from_integer(-2));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let h = 1e-6;
        for &x in &[0.3, 1.2, 1.9, 2.7, -0.8] {
            let fd = |t: f64| tf().eval_f(&Enclosure::from_f64(128, t)).mid_f64();
            let num = (fd(x + h) - fd(x - h)) / (2.0 * h);
            let exact = tf().eval_f_prime(&Enclosure::from_f64(128, x)).mid_f64();
            assert!((num - exact).abs() < 1e-8, "{x}: {num} {exact}");
        }
    }
}
