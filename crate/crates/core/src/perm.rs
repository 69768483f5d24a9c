//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `p.then(&q)` applies `p` first: `i ↦ q(p(i))`. Words in generators are
//! evaluated left to right with this product, matching the right action of a
//! coset table.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::OutOfRange(format!("not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Same as [`Perm::from_images`] but with 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let v = images
            .iter()
            .map(|&i| {
                if i == 0 {
                    Err(Error::OutOfRange("one-line notation is 1-based".into()))
                } else {
                    Ok((i - 1) as u32)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(v)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 == j)
            .count()
    }

    /// Cycle lengths, one entry per cycle (fixed points included), in order of
    /// smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn count_cycles_of_length(&self, c: usize) -> usize {
        self.cycle_lengths().into_iter().filter(|&l| l == c).count()
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    /// Whether the group generated by `gens` acts transitively.
    pub fn transitive(gens: &[Perm]) -> bool {
        let Some(first) = gens.first() else {
            return true;
        };
        let n = first.degree();
        if n == 0 {
            return true;
        }
        let invs: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for (g, gi) in gens.iter().zip(&invs) {
                for j in [g.apply(i), gi.apply(i)] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        stack.push(j);
                    }
                }
            }
        }
        count == n
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cycle notation, 1-based, fixed points omitted.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}
