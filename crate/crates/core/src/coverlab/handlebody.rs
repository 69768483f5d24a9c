use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupkit::Word;

/// Names of the surface group generators, in the order of the relator
/// `[a1,b1][a2,b2]`.
pub const SURFACE_GENERATORS: [&str; 4] = ["a1", "b1", "a2", "b2"];

/// Names of the free group generators.
pub const FREE_GENERATORS: [&str; 2] = ["X", "Y"];

/// A homomorphism from the genus-2 surface group onto `F₂ = ⟨X, Y⟩`, given
/// by the images of `a1, b1, a2, b2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandlebodyMap {
    images: [Word; 4],
}

impl Default for HandlebodyMap {
    /// Meridians `b1, b2` bound disks: `a1 ↦ X, b1 ↦ e, a2 ↦ Y, b2 ↦ e`.
    fn default() -> Self {
        HandlebodyMap {
            images: [Word::gen(0), Word::empty(), Word::gen(1), Word::empty()],
        }
    }
}

impl HandlebodyMap {
    /// Checks that the relator maps to the identity and that the map is onto
    /// (abelianized images span `Z²`).
    pub fn new(images: [Word; 4]) -> Result<Self> {
        for w in &images {
            w.check_generators(2)?;
        }
        let h = HandlebodyMap {
            images: images.map(|w| w.free_reduce()),
        };
        if !h.apply(&Self::relator())?.is_empty() {
            return Err(Error::VerificationFailed(
                "surface relator does not map to the identity".into(),
            ));
        }
        let v: Vec<[i64; 2]> = h.images.iter().map(exponent_sums).collect();
        let mut g = 0i64;
        for i in 0..4 {
            for j in i + 1..4 {
                g = num_integer::gcd(g, v[i][0] * v[j][1] - v[i][1] * v[j][0]);
            }
        }
        if g != 1 {
            return Err(Error::VerificationFailed("map is not onto F2".into()));
        }
        Ok(h)
    }

    /// Parses four words in `X, Y`.
    pub fn parse(words: [&str; 4]) -> Result<Self> {
        let images = [
            Word::parse(words[0], &FREE_GENERATORS)?,
            Word::parse(words[1], &FREE_GENERATORS)?,
            Word::parse(words[2], &FREE_GENERATORS)?,
            Word::parse(words[3], &FREE_GENERATORS)?,
        ];
        Self::new(images)
    }

    pub fn images(&self) -> &[Word; 4] {
        &self.images
    }

    /// `[a1,b1][a2,b2]`
    pub fn relator() -> Word {
        let g = |i| Word::gen(i);
        Word::commutator(&g(0), &g(1)).concat(&Word::commutator(&g(2), &g(3)))
    }

    /// Image in `F₂` of a word in the surface generators, freely reduced.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.check_generators(4)?;
        let mut out = Vec::new();
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            let img = if l > 0 { img.clone() } else { img.inverse() };
            out.extend_from_slice(img.letters());
        }
        Ok(Word(out).free_reduce())
    }
}

fn exponent_sums(w: &Word) -> [i64; 2] {
    let mut s = [0i64; 2];
    for &l in w.letters() {
        s[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_map_is_valid() {
        let h = HandlebodyMap::default();
        let checked = HandlebodyMap::new(h.images().clone()).unwrap();
        assert_eq!(checked, h);
        assert!(h.apply(&HandlebodyMap::relator()).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_surjective_maps() {
        assert!(HandlebodyMap::parse(["X", "", "X", ""]).is_err());
        assert!(HandlebodyMap::parse(["X^2", "", "Y", ""]).is_err());
        assert!(HandlebodyMap::parse(["X", "Y", "Y", ""]).is_err());
    }
}
