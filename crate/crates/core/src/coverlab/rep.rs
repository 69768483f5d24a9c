use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::handlebody::HandlebodyMap;
use crate::error::Result;
use crate::groupkit::Word;
use crate::perm::Perm;

/// Images of `X` and `Y` in `Sym(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermRep {
    pub n: usize,
    pub sigma_x: Perm,
    pub sigma_y: Perm,
    pub seed: u64,
}

impl PermRep {
    pub fn new(sigma_x: Perm, sigma_y: Perm, seed: u64) -> Self {
        assert_eq!(sigma_x.degree(), sigma_y.degree(), "degree mismatch");
        PermRep {
            n: sigma_x.degree(),
            sigma_x,
            sigma_y,
            seed,
        }
    }

    pub fn is_transitive(&self) -> bool {
        Perm::transitive(&[self.sigma_x.clone(), self.sigma_y.clone()])
    }

    pub fn generators(&self) -> [&Perm; 2] {
        [&self.sigma_x, &self.sigma_y]
    }
}

/// Two independent uniform permutations of `{1..n}` from a ChaCha stream.
pub fn sample_rep(n: usize, seed: u64) -> PermRep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with(n, seed, &mut rng)
}

pub(crate) fn sample_with(n: usize, seed: u64, rng: &mut ChaCha8Rng) -> PermRep {
    let mut draw = || {
        let mut v: Vec<u32> = (0..n as u32).collect();
        v.shuffle(rng);
        Perm::from_images(v).expect("shuffle of 0..n")
    };
    let sigma_x = draw();
    let sigma_y = draw();
    PermRep::new(sigma_x, sigma_y, seed)
}

/// Seed of the `index`-th sample under `master` (SplitMix64 finalizer of the
/// pair), so samples of one run are independent of each other and of the
/// order in which they are drawn.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Image of a word in `X, Y` under the representation.
pub fn free_word_image(rep: &PermRep, w: &Word) -> Result<Perm> {
    w.check_generators(2)?;
    let inv = [rep.sigma_x.inverse(), rep.sigma_y.inverse()];
    let mut images: Vec<u32> = (0..rep.n as u32).collect();
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        let p = if l > 0 { rep.generators()[g] } else { &inv[g] };
        for v in images.iter_mut() {
            *v = p.apply(*v as usize) as u32;
        }
    }
    Ok(Perm::from_images(images).expect("composition of permutations"))
}

/// Image of a surface-group word under `rep ∘ h`.
pub fn compose_action(h: &HandlebodyMap, rep: &PermRep, w: &Word) -> Result<Perm> {
    free_word_image(rep, &h.apply(w)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_is_trivial() {
        let r = sample_rep(1, 7);
        assert!(r.sigma_x.is_identity() && r.sigma_y.is_identity());
        assert!(r.is_transitive());
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        assert_eq!(sample_rep(50, 3), sample_rep(50, 3));
        assert_ne!(sample_rep(50, 3), sample_rep(50, 4));
    }

    #[test]
    fn default_map_images() {
        let h = HandlebodyMap::default();
        let r = sample_rep(9, 1);
        assert!(compose_action(&h, &r, &Word::gen(1)).unwrap().is_identity());
        assert_eq!(compose_action(&h, &r, &Word::gen(0)).unwrap(), r.sigma_x);
        assert!(compose_action(&h, &r, &HandlebodyMap::relator())
            .unwrap()
            .is_identity());
    }
}
