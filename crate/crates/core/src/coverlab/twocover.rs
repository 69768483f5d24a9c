use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `(Z/2)^k`: a homomorphism from the stabilizer to `Z/2`,
/// i.e. a degree-two cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoCoverVector {
    pub bits: Vec<bool>,
}

impl TwoCoverVector {
    pub fn zeros(k: usize) -> Self {
        TwoCoverVector {
            bits: vec![false; k],
        }
    }

    pub fn ones(k: usize) -> Self {
        TwoCoverVector {
            bits: vec![true; k],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Flips coordinate `i` (1-based).
pub fn switch(v: &TwoCoverVector, i: usize) -> Result<TwoCoverVector> {
    if i == 0 || i > v.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: v.len(),
        });
    }
    let mut out = v.clone();
    out.bits[i - 1] = !out.bits[i - 1];
    Ok(out)
}

pub fn hamming(a: &TwoCoverVector, b: &TwoCoverVector) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.bits.iter().zip(&b.bits).filter(|(x, y)| x != y).count())
}

/// The degree-two cover is connected iff the homomorphism is nontrivial.
pub fn cover_connected(v: &TwoCoverVector) -> bool {
    v.bits.iter().any(|&b| b)
}

/// Geodesic in the hypercube from `from` to `to`, switching differing
/// coordinates in increasing order; includes both endpoints.
pub fn switch_walk(from: &TwoCoverVector, to: &TwoCoverVector) -> Result<Vec<TwoCoverVector>> {
    hamming(from, to)?;
    let mut walk = vec![from.clone()];
    let mut cur = from.clone();
    for i in 0..from.len() {
        if from.bits[i] != to.bits[i] {
            cur = switch(&cur, i + 1)?;
            walk.push(cur.clone());
        }
    }
    Ok(walk)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switching() {
        let z = TwoCoverVector::zeros(5);
        assert_eq!(switch(&z, 3).unwrap().weight(), 1);
        assert_eq!(switch(&switch(&z, 3).unwrap(), 3).unwrap(), z);
        assert!(switch(&z, 0).is_err() && switch(&z, 6).is_err());
        assert_eq!(hamming(&z, &TwoCoverVector::ones(5)).unwrap(), 5);
        assert!(hamming(&z, &TwoCoverVector::zeros(4)).is_err());
        assert!(!cover_connected(&z));
        assert_eq!(switch_walk(&z, &TwoCoverVector::ones(5)).unwrap().len(), 6);
    }
}
