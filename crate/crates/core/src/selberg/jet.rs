//! Truncated Taylor series with enclosure coefficients.
//!
//! `c[k]` encloses `g^(k)(x)/k!` for every `x` in the enclosure the jet was
//! seeded with, so a jet seeded on a whole panel bounds the Taylor remainder.

use std::ops::{Add, Mul, Neg, Sub};

use crate::enclosure::Enclosure;

#[derive(Clone, Debug)]
pub struct Jet {
    pub c: Vec<Enclosure>,
}

impl Jet {
    /// The identity function `x ↦ x` at `x`, to order `n` (n+1 coefficients).
    pub fn var(x: &Enclosure, n: usize) -> Jet {
        let prec = x.prec();
        let mut c = vec![Enclosure::zero(prec); n + 1];
        c[0] = x.clone();
        if n >= 1 {
            c[1] = Enclosure::one(prec);
        }
        Jet { c }
    }

    pub fn constant(v: &Enclosure, n: usize) -> Jet {
        let mut c = vec![Enclosure::zero(v.prec()); n + 1];
        c[0] = v.clone();
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> &Enclosure {
        &self.c[0]
    }

    pub fn scale(&self, s: &Enclosure) -> Jet {
        Jet {
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    pub fn add_const(&self, s: &Enclosure) -> Jet {
        let mut c = self.c.clone();
        c[0] = &c[0] + s;
        Jet { c }
    }

    pub fn exp(&self) -> Jet {
        let n = self.order();
        let mut w = Vec::with_capacity(n + 1);
        w.push(self.c[0].exp());
        for k in 1..=n {
            let mut acc = Enclosure::zero(self.c[0].prec());
            for j in 1..=k {
                acc = &acc + &(&self.c[j].mul_i64(j as i64) * &w[k - j]);
            }
            w.push(acc.div_i64(k as i64));
        }
        Jet { c: w }
    }

    /// `(cosh, sinh)` of the jet.
    pub fn cosh_sinh(&self) -> (Jet, Jet) {
        let e = self.exp();
        let f = (-self).exp();
        let two = Enclosure::from_i64(self.c[0].prec(), 2);
        let cosh = Jet {
            c: e.c.iter().zip(&f.c).map(|(a, b)| &(a + b) / &two).collect(),
        };
        let sinh = Jet {
            c: e.c.iter().zip(&f.c).map(|(a, b)| &(a - b) / &two).collect(),
        };
        (cosh, sinh)
    }

    pub fn recip(&self) -> Jet {
        let n = self.order();
        let b0 = &self.c[0];
        let mut q: Vec<Enclosure> = Vec::with_capacity(n + 1);
        q.push(b0.recip());
        for k in 1..=n {
            let mut acc = Enclosure::zero(b0.prec());
            for j in 1..=k {
                acc = &acc + &(&self.c[j] * &q[k - j]);
            }
            q.push(-&(&acc / b0));
        }
        Jet { c: q }
    }

    pub fn div(&self, other: &Jet) -> Jet {
        self * &other.recip()
    }

    /// Jet of `u ↦ sinh(u)/u` composed with `x ↦ s·x` (s > 0) on an
    /// enclosure of nonnegative points. Away from zero this is a quotient;
    /// on an enclosure touching zero it uses `sinhc⁽ᵏ⁾(u) = ∫₀¹ tᵏ cosh⁽ᵏ⁾(tu) dt`,
    /// which lies in `[0, cosh(u)/(k+1)]` for `u ≥ 0`.
    pub fn sinhc_scaled(x: &Enclosure, s: &Enclosure, n: usize) -> Jet {
        let prec = x.prec();
        if x.is_positive() {
            let u = Jet::var(x, n).scale(s);
            let (_, sh) = u.cosh_sinh();
            return sh.div(&u);
        }
        let u_max = &Enclosure::new(prec, x.upper(), x.upper()) * s;
        let bound = u_max.cosh();
        let mut c = Vec::with_capacity(n + 1);
        c.push((x * s).sinhc());
        let mut fact = Enclosure::one(prec);
        let mut s_pow = Enclosure::one(prec);
        for k in 1..=n {
            fact = fact.mul_i64(k as i64 + 1);
            s_pow = &s_pow * s;
            let hi = &(&bound / &fact) * &s_pow;
            c.push(Enclosure::zero(prec).hull(&hi));
        }
        Jet { c }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, r: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&r.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, r: &Jet) -> Jet {
        Jet {
            c: self.c.iter().zip(&r.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, r: &Jet) -> Jet {
        let n = self.order().min(r.order());
        let prec = self.c[0].prec();
        let c = (0..=n)
            .map(|k| {
                (0..=k).fold(Enclosure::zero(prec), |acc, j| {
                    &acc + &(&self.c[j] * &r.c[k - j])
                })
            })
            .collect();
        Jet { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_coefficients() {
        let j = Jet::var(&Enclosure::zero(128), 6).exp();
        for (k, c) in j.c.iter().enumerate() {
            let f: f64 = (1..=k).map(|i| i as f64).product();
            assert!((c.mid_f64() - 1.0 / f).abs() < 1e-15);
        }
    }

    #[test]
    fn sinhc_paths_agree() {
        let prec = 128;
        let half = Enclosure::from_ratio(prec, 1, 2);
        let x = Enclosure::from_ratio(prec, 1, 8);
        let direct = Jet::sinhc_scaled(&x, &half, 5);
        let wide = Jet::sinhc_scaled(&Enclosure::zero(prec).hull(&x), &half, 5);
        for (a, b) in direct.c.iter().zip(&wide.c) {
            assert!(b.contains(a) || b.overlaps(a), "{a} {b}");
        }
    }

    #[test]
    fn reciprocal() {
        let x = Jet::var(&Enclosure::from_i64(128, 2), 4);
        let r = x.recip();
        // 1/x at 2: coefficients (-1)^k / 2^(k+1)
        for (k, c) in r.c.iter().enumerate() {
            let expect = (-1f64).powi(k as i32) / 2f64.powi(k as i32 + 1);
            assert!((c.mid_f64() - expect).abs() < 1e-15);
        }
    }
}
