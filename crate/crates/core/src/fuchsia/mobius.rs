use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::field::{ExtElem, FieldElem};
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::groupkit::{letter_gen, Word};

/// A matrix `[[a, b], [c, d]]` of determinant one acting on the upper half
/// plane, identified with its negative.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mobius {
    pub a: ExtElem,
    pub b: ExtElem,
    pub c: ExtElem,
    pub d: ExtElem,
}

#[derive(Clone, Debug)]
pub enum Classification {
    Identity,
    /// `order` is the order in PSL(2,R) when finite (searched up to 64);
    /// `half_angle` is `θ ∈ (0, π/2]` with `|tr| = 2cos θ`.
    Elliptic {
        order: Option<u32>,
        half_angle: Enclosure,
    },
    Parabolic,
    /// `length = 2 arccosh(|tr|/2)`
    Hyperbolic {
        length: Enclosure,
    },
}

impl Mobius {
    pub fn new(a: ExtElem, b: ExtElem, c: ExtElem, d: ExtElem) -> Result<Self> {
        let m = Mobius { a, b, c, d };
        if m.det() != ExtElem::one() {
            return Err(Error::VerificationFailed("determinant is not one".into()));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius {
            a: ExtElem::one(),
            b: ExtElem::zero(),
            c: ExtElem::zero(),
            d: ExtElem::one(),
        }
    }

    pub fn det(&self) -> ExtElem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> ExtElem {
        &self.a + &self.d
    }

    /// The trace as an element of the trace field; errors if it has a
    /// nonzero `t`-component.
    pub fn field_trace(&self) -> Result<FieldElem> {
        self.trace()
            .as_field()
            .cloned()
            .ok_or_else(|| Error::VerificationFailed("trace outside Q(α)".into()))
    }

    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    pub fn neg(&self) -> Mobius {
        Mobius {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn pow(&self, k: i64) -> Mobius {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Mobius::identity();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Equality in PSL(2): all 2×2 minors of the pair of coefficient vectors
    /// vanish, i.e. the matrices are proportional.
    pub fn proj_eq(&self, other: &Mobius) -> bool {
        let u = [&self.a, &self.b, &self.c, &self.d];
        let v = [&other.a, &other.b, &other.c, &other.d];
        for i in 0..4 {
            for j in i + 1..4 {
                if &(u[i] * v[j]) - &(u[j] * v[i]) != ExtElem::zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(&self) -> bool {
        self.proj_eq(&Mobius::identity())
    }

    /// The representative of `±M` whose first nonzero coordinate is positive.
    pub fn canonical(&self) -> Mobius {
        let s = [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|e| e.leading_sign())
            .find(|&s| s != 0)
            .unwrap_or(1);
        if s < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `cosh d(i, M·i) = (a² + b² + c² + d²)/2`
    pub fn cosh_displacement(&self, prec: u32) -> Enclosure {
        let s = &(&(&self.a * &self.a) + &(&self.b * &self.b))
            + &(&(&self.c * &self.c) + &(&self.d * &self.d));
        s.half().enclose(prec).max(&Enclosure::one(prec))
    }

    pub fn displacement(&self, prec: u32) -> Enclosure {
        self.cosh_displacement(prec).acosh()
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.a.to_f64(),
            self.b.to_f64(),
            self.c.to_f64(),
            self.d.to_f64(),
        ]
    }

    /// Exact comparison of `|tr|` with 2 decides the type.
    pub fn classify(&self, prec: u32) -> Classification {
        let tr = self.trace();
        let t2 = &tr * &tr;
        let disc = &t2 - &ExtElem::from_int(4);
        if disc.is_zero() {
            return if self.is_identity() {
                Classification::Identity
            } else {
                Classification::Parabolic
            };
        }
        let sign = match disc.as_field() {
            Some(f) => f.signum(),
            None => {
                let e = disc.enclose(prec);
                if e.is_positive() {
                    1
                } else {
                    -1
                }
            }
        };
        let half_tr = tr.enclose(prec).abs().div_i64(2);
        if sign > 0 {
            Classification::Hyperbolic {
                length: half_tr.acosh().mul_i64(2),
            }
        } else {
            let order = (1..=64u32).find(|&n| self.pow(n as i64).is_identity());
            Classification::Elliptic {
                order,
                half_angle: half_tr.acos(),
            }
        }
    }

    pub fn translation_length(&self, prec: u32) -> Option<Enclosure> {
        match self.classify(prec) {
            Classification::Hyperbolic { length } => Some(length),
            _ => None,
        }
    }

    /// Rotation angle `φ ∈ (0, π)` of an elliptic element with `c` normalized
    /// negative (counterclockwise rotation by `2φ`); a conjugacy invariant in
    /// PSL(2,R).
    pub fn rotation_angle(&self, prec: u32) -> Option<Enclosure> {
        let c = self.c.enclose(prec);
        let sign = if c.is_negative() {
            1
        } else if c.is_positive() {
            -1
        } else {
            return None;
        };
        let half_tr = self.trace().enclose(prec).mul_i64(sign).div_i64(2);
        if half_tr.mag() >= 1 {
            return None;
        }
        Some(half_tr.acos())
    }

    /// `cosh` of the distance from `i` to the fixed point of an elliptic
    /// element.
    pub fn cosh_fixed_point_distance(&self, prec: u32) -> Option<Enclosure> {
        let c = self.c.enclose(prec);
        if c.contains_zero() {
            return None;
        }
        let tr = self.trace().enclose(prec);
        let four = Enclosure::from_i64(prec, 4);
        let disc = &four - &tr.sqr();
        if !disc.is_positive() {
            return None;
        }
        let two_c = c.mul_i64(2);
        let re = &(&self.a.enclose(prec) - &self.d.enclose(prec)) / &two_c;
        let im = &disc.sqrt() / &two_c.abs();
        let num = &(&Enclosure::one(prec) + &re.sqr()) + &im.sqr();
        Some(&num / &im.mul_i64(2))
    }
}

impl Mul for &Mobius {
    type Output = Mobius;
    fn mul(self, r: &Mobius) -> Mobius {
        Mobius {
            a: &(&self.a * &r.a) + &(&self.b * &r.c),
            b: &(&self.a * &r.b) + &(&self.b * &r.d),
            c: &(&self.c * &r.a) + &(&self.d * &r.c),
            d: &(&self.c * &r.b) + &(&self.d * &r.d),
        }
    }
}

impl Mul for Mobius {
    type Output = Mobius;
    fn mul(self, r: Mobius) -> Mobius {
        &self * &r
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Exact matrices for the generators `x, y, z` of the (2,3,8) triangle group:
/// rotations by `π`, `2π/3`, `π/4` about the vertices of a triangle with
/// angles `π/2, π/3, π/8`, normalized so that `x` fixes `i`.
pub fn generator_matrices() -> (Mobius, Mobius, Mobius) {
    let alpha = ExtElem::from_field(FieldElem::alpha());
    let t_over_alpha = ExtElem {
        re: FieldElem::zero(),
        im: FieldElem::alpha_inv(),
    };
    let one = ExtElem::one();
    let x = Mobius {
        a: ExtElem::zero(),
        b: one.clone(),
        c: -&one,
        d: ExtElem::zero(),
    };
    let z = Mobius {
        a: alpha.half(),
        b: (&one + &t_over_alpha).half(),
        c: -(&one - &t_over_alpha).half(),
        d: alpha.half(),
    };
    let y = &x.inverse() * &z.inverse();
    (x, y, z)
}

/// Matrix of a word in `x, y, z` (letters `±1, ±2, ±3`), multiplied left to
/// right.
pub fn word_matrix(w: &Word) -> Result<Mobius> {
    w.check_generators(3)?;
    let (x, y, z) = generator_matrices();
    let gens = [x, y, z];
    let invs: Vec<Mobius> = gens.iter().map(Mobius::inverse).collect();
    Ok(w.letters().iter().fold(Mobius::identity(), |acc, &l| {
        let g = letter_gen(l);
        if l > 0 {
            &acc * &gens[g]
        } else {
            &acc * &invs[g]
        }
    }))
}
