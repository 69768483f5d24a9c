//! Todd–Coxeter coset enumeration, HLT strategy with lookahead.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::{letter_gen, Letter, Word};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Right action of a finitely presented group on the cosets of a subgroup.
/// Coset `0` is the subgroup itself; numbering is standardized (breadth first
/// from coset 0, generators in declaration order, each followed by its
/// inverse).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    names: Vec<String>,
    action: Vec<Perm>,
    inverse_action: Vec<Perm>,
    subgroup_gens: Vec<Word>,
}

impl CosetTable {
    /// Table from explicit generator permutations; checks transitivity only.
    pub fn from_perms(
        names: Vec<String>,
        action: Vec<Perm>,
        subgroup_gens: Vec<Word>,
    ) -> Result<Self> {
        if action.is_empty() || names.len() != action.len() {
            return Err(Error::LengthMismatch {
                left: names.len(),
                right: action.len(),
            });
        }
        let n = action[0].degree();
        if action.iter().any(|p| p.degree() != n) {
            return Err(Error::OutOfRange(
                "generator permutations differ in degree".into(),
            ));
        }
        if !Perm::transitive(&action) {
            return Err(Error::NotTransitive);
        }
        let inverse_action = action.iter().map(Perm::inverse).collect();
        Ok(CosetTable {
            names,
            action,
            inverse_action,
            subgroup_gens,
        })
    }

    pub fn index(&self) -> usize {
        self.action[0].degree()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_perms(&self) -> &[Perm] {
        &self.action
    }

    pub fn subgroup_gens(&self) -> &[Word] {
        &self.subgroup_gens
    }

    #[inline]
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        let g = letter_gen(l);
        if l > 0 {
            self.action[g].apply(coset)
        } else {
            self.inverse_action[g].apply(coset)
        }
    }

    /// Coset reached from `coset` by reading `w` left to right.
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Permutation induced by `w`.
    pub fn word_image(&self, w: &Word) -> Result<Perm> {
        w.check_generators(self.action.len())?;
        let images = (0..self.index()).map(|c| self.trace(c, w) as u32).collect();
        Ok(Perm::from_images_unchecked(images))
    }

    /// Whether every relator fixes every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        relators
            .iter()
            .all(|r| (0..self.index()).all(|c| self.trace(c, r) == c))
    }

    pub fn is_transitive(&self) -> bool {
        Perm::transitive(&self.action)
    }
}

const UNDEF: u32 = 0;

struct Full;

/// Working state. Cosets are numbered from 1; entry 0 means undefined.
struct Enumerator {
    ncols: usize,
    cap: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    queue: Vec<u32>,
    relators: Vec<Vec<usize>>,
}

#[inline]
fn col(l: Letter) -> usize {
    2 * letter_gen(l) + usize::from(l < 0)
}

impl Enumerator {
    fn new(ngens: usize, cap: usize, relators: Vec<Vec<usize>>) -> Self {
        let ncols = 2 * ngens;
        Enumerator {
            ncols,
            cap,
            table: vec![UNDEF; 2 * ncols],
            parent: vec![0, 1],
            live: 1,
            queue: Vec::new(),
            relators,
        }
    }

    /// Number of coset slots in use, live or dead.
    fn top(&self) -> usize {
        self.parent.len() - 1
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> std::result::Result<(), Full> {
        if self.top() >= self.cap {
            return Err(Full);
        }
        let n = self.parent.len() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.live += 1;
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (mu, nu) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[nu as usize] = mu;
            self.live -= 1;
            self.queue.push(nu);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let delta = self.get(gamma, x);
                if delta == UNDEF {
                    continue;
                }
                self.set(delta, x ^ 1, UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != UNDEF {
                        self.merge(mu, nx);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `w` from `alpha`, defining cosets as needed when `fill` is set.
    fn scan(&mut self, alpha: u32, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0isize, w.len() as isize - 1);
        loop {
            while i <= j {
                let nf = self.get(f, w[i as usize]);
                if nf == UNDEF {
                    break;
                }
                f = nf;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let nb = self.get(b, w[j as usize] ^ 1);
                if nb == UNDEF {
                    break;
                }
                b = nb;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i as usize];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i as usize])?;
        }
    }

    /// Renumbers live cosets consecutively in their current order. Returns the
    /// new number of the first live coset at or after `alpha`.
    fn compact(&mut self, alpha: u32) -> u32 {
        let top = self.top();
        let mut map = vec![UNDEF; top + 1];
        let mut next = 0u32;
        let mut new_alpha = None;
        for c in 1..=top as u32 {
            if self.is_live(c) {
                next += 1;
                map[c as usize] = next;
                if c >= alpha && new_alpha.is_none() {
                    new_alpha = Some(next);
                }
            }
        }
        let mut table = vec![UNDEF; (next as usize + 1) * self.ncols];
        for c in 1..=top as u32 {
            if !self.is_live(c) {
                continue;
            }
            let nc = map[c as usize] as usize;
            for x in 0..self.ncols {
                let v = self.get(c, x);
                if v != UNDEF {
                    let r = self.rep(v);
                    table[nc * self.ncols + x] = map[r as usize];
                }
            }
        }
        self.table = table;
        self.parent = (0..=next).collect();
        self.live = next as usize;
        new_alpha.unwrap_or(next + 1)
    }

    fn lookahead(&mut self) {
        let rels = std::mem::take(&mut self.relators);
        for c in 1..=self.top() as u32 {
            for r in &rels {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
        }
        self.relators = rels;
    }

    /// Frees slots; fails if the live count alone fills the table.
    fn make_room(&mut self, alpha: u32) -> Result<u32> {
        let mut a = self.compact(alpha);
        if self.top() < self.cap {
            return Ok(a);
        }
        self.lookahead();
        a = self.compact(a);
        if self.top() < self.cap {
            Ok(a)
        } else {
            Err(Error::EnumerationLimit { limit: self.cap })
        }
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<()> {
        for w in subgroup {
            loop {
                match self.scan(1, w, true) {
                    Ok(()) => break,
                    Err(Full) => {
                        self.make_room(1)?;
                    }
                }
            }
        }
        let mut alpha = 1u32;
        while (alpha as usize) <= self.top() {
            if !self.is_live(alpha) {
                alpha += 1;
                continue;
            }
            let mut outcome = Ok(());
            let rels = std::mem::take(&mut self.relators);
            for r in &rels {
                outcome = self.scan(alpha, r, true);
                if outcome.is_err() || !self.is_live(alpha) {
                    break;
                }
            }
            self.relators = rels;
            if outcome.is_ok() && self.is_live(alpha) {
                for x in 0..self.ncols {
                    if self.get(alpha, x) == UNDEF {
                        outcome = self.define(alpha, x);
                        if outcome.is_err() {
                            break;
                        }
                    }
                }
            }
            match outcome {
                Ok(()) => alpha += 1,
                Err(Full) => alpha = self.make_room(alpha)?,
            }
        }
        self.compact(1);
        Ok(())
    }

    /// Breadth-first renumbering from coset 1, as 0-based permutations.
    fn standardize(&self, ngens: usize) -> Result<Vec<Perm>> {
        let n = self.top();
        let mut order = Vec::with_capacity(n);
        let mut map = vec![u32::MAX; n + 1];
        let mut queue = VecDeque::new();
        map[1] = 0;
        let mut assigned = 1u32;
        queue.push_back(1u32);
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for x in 0..self.ncols {
                let v = self.get(c, x);
                if v == UNDEF {
                    return Err(Error::VerificationFailed("coset table not closed".into()));
                }
                if map[v as usize] == u32::MAX {
                    map[v as usize] = assigned;
                    assigned += 1;
                    queue.push_back(v);
                }
            }
        }
        if order.len() != n {
            return Err(Error::NotTransitive);
        }
        let mut perms = Vec::with_capacity(ngens);
        for g in 0..ngens {
            let mut images = vec![0u32; n];
            for &c in &order {
                images[map[c as usize] as usize] = map[self.get(c, 2 * g) as usize];
            }
            perms.push(Perm::from_images(images).map_err(|_| {
                Error::VerificationFailed("coset table is not a permutation action".into())
            })?);
        }
        Ok(perms)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`, failing if more than `max_cosets` slots are needed.
pub fn coset_enumerate(
    p: &Presentation,
    subgroup: &[Word],
    max_cosets: usize,
) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::NonPositive("max_cosets"));
    }
    for w in subgroup {
        w.check_generators(p.ngens())?;
    }
    let to_cols = |w: &Word| w.letters().iter().map(|&l| col(l)).collect::<Vec<_>>();
    let relators = p.relators().iter().map(to_cols).collect();
    let sub: Vec<Vec<usize>> = subgroup.iter().map(|w| to_cols(&w.free_reduce())).collect();
    let mut e = Enumerator::new(p.ngens(), max_cosets, relators);
    e.run(&sub)?;
    let action = e.standardize(p.ngens())?;
    let inverse_action = action.iter().map(Perm::inverse).collect();
    let table = CosetTable {
        names: p.generators().to_vec(),
        action,
        inverse_action,
        subgroup_gens: subgroup.to_vec(),
    };
    if !table.satisfies(p.relators()) {
        return Err(Error::VerificationFailed(
            "relator does not close at some coset".into(),
        ));
    }
    if subgroup.iter().any(|w| table.trace(0, w) != 0) {
        return Err(Error::VerificationFailed(
            "subgroup generator moves the base coset".into(),
        ));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_of_order_two() {
        let p = Presentation::from_strs(&["x"], &["x^2"]).unwrap();
        let t = coset_enumerate(&p, &[], 10).unwrap();
        assert_eq!(t.index(), 2);
    }

    #[test]
    fn symmetric_group_three() {
        let p = Presentation::from_strs(&["a", "b"], &["a^2", "b^3", "a*b*a*b"]).unwrap();
        assert_eq!(coset_enumerate(&p, &[], 100).unwrap().index(), 6);
        let a = p.parse_word("a").unwrap();
        let t = coset_enumerate(&p, &[a], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.is_transitive());
    }

    #[test]
    fn limit_is_reported() {
        let p = Presentation::from_strs(&["a", "b"], &["a^2", "b^3"]).unwrap();
        let err = coset_enumerate(&p, &[], 50).unwrap_err();
        assert_eq!(err, Error::EnumerationLimit { limit: 50 });
    }

    #[test]
    fn lookahead_recovers_from_a_tight_limit() {
        // Coxeter's presentation of the trivial group needs room to collapse.
        let p =
            Presentation::from_strs(&["a", "b"], &["a^-1*b^-1*a*b^2", "b^-1*a^-1*b*a^2"]).unwrap();
        let t = coset_enumerate(&p, &[], 1000).unwrap();
        assert_eq!(t.index(), 1);
    }

    #[test]
    fn rejects_undeclared_subgroup_letters() {
        let p = Presentation::from_strs(&["x"], &["x^2"]).unwrap();
        let err = coset_enumerate(&p, &[Word(vec![2])], 10).unwrap_err();
        assert!(matches!(err, Error::InvalidWord(_)));
    }

    #[test]
    fn deck_group_has_order_768() {
        let p = Presentation::genus17_deck_group();
        let t = coset_enumerate(&p, &[], 1_000_000).unwrap();
        assert_eq!(t.index(), 768);
        let xyz = p.parse_word("x*y*z").unwrap();
        assert!(t.word_image(&xyz).unwrap().is_identity());
        assert!(t.word_image(&Word::gen(0)).unwrap().pow(2).is_identity());
    }
}
