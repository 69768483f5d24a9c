//! Character tables by the Dixon–Schneider method.
//!
//! Central characters are found as common eigenvectors of the class matrices
//! over a prime field `F_p` with `p ≡ 1 (mod exponent)`. Each character value
//! is then lifted to characteristic zero as an exact multiset of `e`-th roots
//! of unity (the eigenvalues of the representing matrix), from which
//! enclosures are evaluated at any precision.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::finite::FiniteGroupData;
use super::modp::{is_prime, Fp};
use crate::enclosure::{Enclosure, DEFAULT_PRECISION};
use crate::error::{Error, Result};

/// A complex irreducible character. `multiplicities[c][m]` is how often
/// `exp(2πi m / e)` occurs as an eigenvalue on class `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexCharacter {
    pub degree: u64,
    pub exponent: u64,
    pub multiplicities: Vec<Vec<u32>>,
    /// Frobenius–Schur indicator: 1, 0 or −1.
    pub indicator: i8,
}

/// A real irreducible character: the character of an irreducible real
/// representation. Values are exact sums of roots of unity, kept as
/// multiplicities and evaluated as enclosures.
#[derive(Clone, Debug)]
pub struct Character {
    pub values: Vec<Enclosure>,
    pub degree: u64,
    pub is_trivial: bool,
    /// Indicator of the complex constituent.
    pub indicator: i8,
    pub multiplicities: Vec<Vec<u32>>,
    pub exponent: u64,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub prime: u64,
    pub exponent: u64,
    pub characters: Vec<ComplexCharacter>,
}

fn root_enclosures(e: u64, prec: u32) -> Vec<(Enclosure, Enclosure)> {
    let two_pi = Enclosure::pi(prec).mul_i64(2);
    (0..e as i64)
        .map(|m| {
            let a = two_pi.mul_i64(m).div_i64(e as i64);
            (a.cos(), a.sin())
        })
        .collect()
}

fn evaluate(mults: &[u32], roots: &[(Enclosure, Enclosure)], prec: u32) -> (Enclosure, Enclosure) {
    let mut re = Enclosure::zero(prec);
    let mut im = Enclosure::zero(prec);
    for (m, &k) in mults.iter().enumerate() {
        if k != 0 {
            re = &re + &roots[m].0.mul_i64(k as i64);
            im = &im + &roots[m].1.mul_i64(k as i64);
        }
    }
    (re, im)
}

impl ComplexCharacter {
    pub fn values(&self, prec: u32) -> Vec<(Enclosure, Enclosure)> {
        let roots = root_enclosures(self.exponent, prec);
        self.multiplicities
            .iter()
            .map(|m| evaluate(m, &roots, prec))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.multiplicities.iter().all(|m| m[0] == 1)
    }

    /// Multiplicities of the complex conjugate character.
    pub fn conjugate(&self) -> Vec<Vec<u32>> {
        let e = self.exponent as usize;
        self.multiplicities
            .iter()
            .map(|m| (0..e).map(|k| m[(e - k) % e]).collect())
            .collect()
    }
}

impl Character {
    /// Re-evaluates the values at a different precision.
    pub fn at_precision(&self, prec: u32) -> Character {
        let roots = root_enclosures(self.exponent, prec);
        Character {
            values: self
                .multiplicities
                .iter()
                .map(|m| evaluate(m, &roots, prec).0)
                .collect(),
            ..self.clone()
        }
    }

    /// Pointwise sum, for linearity checks on reducible characters.
    pub fn sum(&self, other: &Character) -> Character {
        let multiplicities = self
            .multiplicities
            .iter()
            .zip(&other.multiplicities)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
            is_trivial: false,
            indicator: 0,
            multiplicities,
            exponent: self.exponent,
        }
    }

    pub fn trivial(num_classes: usize, exponent: u64, prec: u32) -> Character {
        let mut m = vec![0u32; exponent as usize];
        m[0] = 1;
        Character {
            values: vec![Enclosure::one(prec); num_classes],
            degree: 1,
            is_trivial: true,
            indicator: 1,
            multiplicities: vec![m; num_classes],
            exponent,
        }
    }
}

/// Class structure constants `a[j][k][l] = #{x ∈ C_j : x⁻¹ g_l ∈ C_k}`.
fn class_coefficients(g: &FiniteGroupData) -> Vec<Vec<Vec<u64>>> {
    let k = g.num_classes();
    (0..k)
        .into_par_iter()
        .map(|j| {
            let mut a = vec![vec![0u64; k]; k];
            for l in 0..k {
                let gl = g.class_representative(l);
                let w = g.element_word(gl).clone();
                for x in g.class_members(j) {
                    let y = g.mul_word(g.inverse(x), &w);
                    a[g.class_of_element(y)][l] += 1;
                }
            }
            a
        })
        .collect()
}

fn split_spaces(f: Fp, mats: &[Vec<Vec<u64>>], k: usize) -> Option<Vec<Vec<u64>>> {
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    for m in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = f.rref(&mut basis);
            let dim = basis.len();
            // Images M v_a expressed in the basis through the pivot coordinates.
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|r| (0..k).fold(0u64, |acc, c| f.add(acc, f.mul(m[r][c], v[c]))))
                        .collect()
                })
                .collect();
            let a: Vec<Vec<u64>> = (0..dim)
                .map(|b| (0..dim).map(|col| images[col][pivots[b]]).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..f.p {
                let shifted: Vec<Vec<u64>> = (0..dim)
                    .map(|r| {
                        (0..dim)
                            .map(|c| {
                                if r == c {
                                    f.sub(a[r][c], lambda)
                                } else {
                                    a[r][c]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = f.kernel(&shifted, dim);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|i| {
                                (0..dim)
                                    .fold(0u64, |acc, a_| f.add(acc, f.mul(c[a_], basis[a_][i])))
                            })
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == dim {
                    break;
                }
            }
            if found != dim {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return None;
    }
    Some(spaces.into_iter().map(|mut s| s.remove(0)).collect())
}

fn candidate_primes(order: usize, exponent: u64) -> impl Iterator<Item = u64> {
    let bound = 2.0 * (order as f64).sqrt();
    (1u64..)
        .map(move |m| m * exponent + 1)
        .filter(move |&p| (p as f64) > bound && is_prime(p))
}

fn try_prime(
    g: &FiniteGroupData,
    coeffs: &[Vec<Vec<u64>>],
    p: u64,
) -> Option<Vec<ComplexCharacter>> {
    let f = Fp { p };
    let k = g.num_classes();
    let order = g.order() as u64;
    let e = g.exponent();
    let mats: Vec<Vec<Vec<u64>>> = coeffs
        .iter()
        .map(|a| {
            a.iter()
                .map(|row| row.iter().map(|&v| v % p).collect())
                .collect()
        })
        .collect();
    let omegas = split_spaces(f, &mats, k)?;
    let z = f.pow(f.primitive_root(), (p - 1) / e);
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size as u64).collect();
    let pow_class: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..e as i64).map(|j| g.power_class(c, j)).collect())
        .collect();
    let e_inv = f.inv(e % p);
    let order_inv = f.inv(order % p);
    let max_degree = (order as f64).sqrt().floor() as u64;

    let mut chars = Vec::with_capacity(k);
    for v in omegas {
        if v[0] == 0 {
            return None;
        }
        let s0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, s0)).collect();
        let norm = (0..k).fold(0u64, |acc, l| {
            let t = f.mul(
                f.mul(omega[l], omega[g.inverse_class(l)]),
                f.inv(sizes[l] % p),
            );
            f.add(acc, t)
        });
        if norm == 0 {
            return None;
        }
        let d2 = f.mul(order % p, f.inv(norm));
        let d = (1..=max_degree).find(|&d| f.mul(d, d) == d2)?;
        let chi: Vec<u64> = (0..k)
            .map(|l| f.mul(f.mul(d, omega[l]), f.inv(sizes[l] % p)))
            .collect();
        let mut mults = Vec::with_capacity(k);
        for l in 0..k {
            let mut row = Vec::with_capacity(e as usize);
            for m in 0..e {
                let mut acc = 0u64;
                for j in 0..e {
                    let root = f.pow(z, (e - (j * m) % e) % e);
                    acc = f.add(acc, f.mul(chi[pow_class[l][j as usize]], root));
                }
                let val = f.mul(acc, e_inv);
                if val > d {
                    return None;
                }
                row.push(val as u32);
            }
            if row.iter().map(|&x| x as u64).sum::<u64>() != d {
                return None;
            }
            mults.push(row);
        }
        let ind = (0..k).fold(0u64, |acc, l| {
            f.add(acc, f.mul(sizes[l] % p, chi[g.power_map()[l]]))
        });
        let ind = f.mul(ind, order_inv);
        let indicator = match ind {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            _ => return None,
        };
        chars.push(ComplexCharacter {
            degree: d,
            exponent: e,
            multiplicities: mults,
            indicator,
        });
    }
    chars.sort_by(|a, b| {
        (a.degree, !a.is_trivial(), &a.multiplicities).cmp(&(
            b.degree,
            !b.is_trivial(),
            &b.multiplicities,
        ))
    });
    let sum_sq: u64 = chars.iter().map(|c| c.degree * c.degree).sum();
    (sum_sq == order).then_some(chars)
}

impl CharacterTable {
    /// Complex irreducible characters of `g`.
    pub fn compute(g: &FiniteGroupData) -> Result<Self> {
        let coeffs = class_coefficients(g);
        let e = g.exponent();
        for p in candidate_primes(g.order(), e).take(20) {
            if let Some(characters) = try_prime(g, &coeffs, p) {
                return Ok(CharacterTable {
                    prime: p,
                    exponent: e,
                    characters,
                });
            }
        }
        Err(Error::CharFail(
            "no splitting prime found among the first 20 candidates".into(),
        ))
    }

    /// Real irreducible characters: indicator-1 characters as they are,
    /// `χ + χ̄` for indicator 0 (one per conjugate pair), and `2χ` for
    /// indicator −1.
    pub fn real_characters(&self, prec: u32) -> Vec<Character> {
        let roots = root_enclosures(self.exponent, prec);
        let mut out = Vec::new();
        let mut used = vec![false; self.characters.len()];
        for (i, chi) in self.characters.iter().enumerate() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let multiplicities: Vec<Vec<u32>> = match chi.indicator {
                1 => chi.multiplicities.clone(),
                -1 => chi
                    .multiplicities
                    .iter()
                    .map(|m| m.iter().map(|x| 2 * x).collect())
                    .collect(),
                _ => {
                    let conj = chi.conjugate();
                    if let Some(j) = self
                        .characters
                        .iter()
                        .position(|c| c.multiplicities == conj)
                    {
                        used[j] = true;
                    }
                    chi.multiplicities
                        .iter()
                        .zip(&conj)
                        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                        .collect()
                }
            };
            let degree = multiplicities[0].iter().map(|&x| x as u64).sum();
            let values = multiplicities
                .iter()
                .map(|m| evaluate(m, &roots, prec).0)
                .collect();
            out.push(Character {
                values,
                degree,
                is_trivial: chi.is_trivial(),
                indicator: chi.indicator,
                multiplicities,
                exponent: self.exponent,
            });
        }
        out
    }

    /// Largest deviation of `⟨χ_i, χ_j⟩` from `δ_ij` over all complex pairs,
    /// as a rigorous upper bound.
    pub fn orthogonality_residual(&self, g: &FiniteGroupData, prec: u32) -> f64 {
        let vals: Vec<Vec<(Enclosure, Enclosure)>> =
            self.characters.iter().map(|c| c.values(prec)).collect();
        let order = Enclosure::from_i64(prec, g.order() as i64);
        let sizes: Vec<Enclosure> = g
            .classes()
            .iter()
            .map(|c| Enclosure::from_i64(prec, c.size as i64))
            .collect();
        let mut worst = 0.0f64;
        for (i, a) in vals.iter().enumerate() {
            for (j, b) in vals.iter().enumerate() {
                let mut re = Enclosure::zero(prec);
                let mut im = Enclosure::zero(prec);
                for l in 0..sizes.len() {
                    let (ar, ai) = &a[l];
                    let (br, bi) = &b[l];
                    re = &re + &(&sizes[l] * &(&(ar * br) + &(ai * bi)));
                    im = &im + &(&sizes[l] * &(&(ai * br) - &(ar * bi)));
                }
                let delta = Enclosure::from_i64(prec, i64::from(i == j));
                let dr = (&(&re / &order) - &delta).abs().upper_f64();
                let di = (&im / &order).abs().upper_f64();
                worst = worst.max(dr).max(di);
            }
        }
        worst
    }
}

/// Real irreducible characters of `g` at the default precision.
pub fn character_table(g: &FiniteGroupData) -> Result<Vec<Character>> {
    Ok(CharacterTable::compute(g)?.real_characters(DEFAULT_PRECISION))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{conjugacy_classes, coset_enumerate, Presentation};

    fn table(gens: &[&str], rels: &[&str]) -> (FiniteGroupData, CharacterTable) {
        let p = Presentation::from_strs(gens, rels).unwrap();
        let g = conjugacy_classes(&coset_enumerate(&p, &[], 100_000).unwrap()).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        (g, t)
    }

    #[test]
    fn cyclic_two() {
        let (g, t) = table(&["x"], &["x^2"]);
        let real = t.real_characters(64);
        assert_eq!(real.len(), 2);
        assert!(real[0].is_trivial);
        assert!(real[1].values[1].contains_f64(-1.0));
        assert!(t.orthogonality_residual(&g, 128) < 1e-30);
    }

    #[test]
    fn symmetric_three() {
        let (_, t) = table(&["a", "b"], &["a^2", "b^3", "a*b*a*b"]);
        let degrees: Vec<u64> = t.characters.iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert!(t.characters.iter().all(|c| c.indicator == 1));
    }

    #[test]
    fn cyclic_three_pairs_up() {
        let (_, t) = table(&["x"], &["x^3"]);
        assert_eq!(t.characters.len(), 3);
        let real = t.real_characters(64);
        assert_eq!(real.len(), 2);
        assert_eq!(real[1].degree, 2);
        assert!(real[1].values[1].contains_f64(-1.0));
    }

    #[test]
    fn deck_group_table() {
        let p = Presentation::genus17_deck_group();
        let g = conjugacy_classes(&coset_enumerate(&p, &[], 1_000_000).unwrap()).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let sum: u64 = t.characters.iter().map(|c| c.degree * c.degree).sum();
        assert_eq!(sum, 768);
        assert!(t.orthogonality_residual(&g, 128) < 1e-20);
        let real = t.real_characters(128);
        assert_eq!(real.len(), 16);
        assert!(real[0].is_trivial);
        assert!(real[0].values.iter().all(|v| v.contains_f64(1.0)));
    }

    #[test]
    fn quaternion_group_has_a_quaternionic_character() {
        let (_, t) = table(&["i", "j"], &["i^4", "i^2*j^-2", "j^-1*i*j*i"]);
        let q: Vec<_> = t.characters.iter().filter(|c| c.indicator == -1).collect();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].degree, 2);
        let real = t.real_characters(64);
        assert_eq!(real.last().unwrap().degree, 4);
    }
}
