use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::coset::CosetTable;
use super::word::{letter, Letter, Word};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Upper bound on the order of groups built by [`conjugacy_classes`].
pub const MAX_GROUP_ORDER: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    /// Shortest word (breadth-first, generator order) reaching the representative.
    pub representative: Word,
    pub size: usize,
    pub element_order: u64,
}

/// The permutation group generated by a coset table, with its elements,
/// conjugacy classes and power maps.
#[derive(Clone, Debug)]
pub struct FiniteGroupData {
    names: Vec<String>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    words: Vec<Word>,
    right: Vec<Vec<u32>>,
    right_inv: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    class_elements: Vec<Vec<u32>>,
    classes: Vec<ConjugacyClass>,
    inverse_class: Vec<usize>,
    square_class: Vec<usize>,
    exponent: u64,
}

impl FiniteGroupData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Class of squares, indexed by class.
    pub fn power_map(&self) -> &[usize] {
        &self.square_class
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn element(&self, e: usize) -> &Perm {
        &self.elements[e]
    }

    pub fn element_word(&self, e: usize) -> &Word {
        &self.words[e]
    }

    pub fn class_of_element(&self, e: usize) -> usize {
        self.class_of[e] as usize
    }

    pub fn class_members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_elements[c].iter().map(|&e| e as usize)
    }

    pub fn class_representative(&self, c: usize) -> usize {
        self.class_elements[c][0] as usize
    }

    #[inline]
    fn step(&self, e: usize, l: Letter) -> usize {
        let g = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            self.right[g][e] as usize
        } else {
            self.right_inv[g][e] as usize
        }
    }

    /// `e · w`
    pub fn mul_word(&self, e: usize, w: &Word) -> usize {
        w.letters().iter().fold(e, |acc, &l| self.step(acc, l))
    }

    pub fn element_of_word(&self, w: &Word) -> Result<usize> {
        w.check_generators(self.names.len())?;
        Ok(self.mul_word(0, w))
    }

    pub fn class_of_word(&self, w: &Word) -> Result<usize> {
        Ok(self.class_of_element(self.element_of_word(w)?))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_word(a, &self.words[b])
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.mul_word(0, &self.words[e].inverse())
    }

    pub fn power(&self, e: usize, k: i64) -> usize {
        let p = self.elements[e].pow(k);
        self.index[&p] as usize
    }

    /// Class of `rep(c)^k`.
    pub fn power_class(&self, c: usize, k: i64) -> usize {
        self.class_of_element(self.power(self.class_representative(c), k))
    }
}

/// Builds the group generated by the table's generator permutations and
/// splits it into conjugacy classes.
pub fn conjugacy_classes(t: &CosetTable) -> Result<FiniteGroupData> {
    let gens = t.generator_perms();
    let ngens = gens.len();
    let n = t.index();
    if !t.is_transitive() {
        return Err(Error::NotTransitive);
    }

    // Breadth-first closure under right multiplication by generators.
    let mut elements = vec![Perm::identity(n)];
    let mut words = vec![Word::empty()];
    let mut index: HashMap<Perm, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut right = vec![Vec::<u32>::new(); ngens];
    let mut head = 0;
    while head < elements.len() {
        for (g, gp) in gens.iter().enumerate() {
            let p = elements[head].then(gp);
            let id = match index.get(&p) {
                Some(&i) => i,
                None => {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::EnumerationLimit {
                            limit: MAX_GROUP_ORDER,
                        });
                    }
                    let i = elements.len() as u32;
                    index.insert(p.clone(), i);
                    elements.push(p);
                    words.push(Word(
                        words[head]
                            .letters()
                            .iter()
                            .copied()
                            .chain([letter(g, false)])
                            .collect(),
                    ));
                    i
                }
            };
            right[g].push(id);
        }
        head += 1;
    }
    let order = elements.len();
    let mut right_inv = vec![vec![0u32; order]; ngens];
    for g in 0..ngens {
        for e in 0..order {
            right_inv[g][right[g][e] as usize] = e as u32;
        }
    }

    let mut data = FiniteGroupData {
        names: t.names().to_vec(),
        elements,
        index,
        words,
        right,
        right_inv,
        class_of: vec![u32::MAX; order],
        class_elements: Vec::new(),
        classes: Vec::new(),
        inverse_class: Vec::new(),
        square_class: Vec::new(),
        exponent: 1,
    };

    // Orbits under conjugation by the generators.
    let conj_words: Vec<(Word, Word)> = (0..ngens)
        .map(|g| (Word(vec![letter(g, true)]), Word(vec![letter(g, false)])))
        .collect();
    for start in 0..order {
        if data.class_of[start] != u32::MAX {
            continue;
        }
        let c = data.class_elements.len() as u32;
        let mut members = vec![start as u32];
        data.class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(e) = queue.pop_front() {
            for (s_inv, s) in &conj_words {
                let f = data.mul_word(data.mul_word(0, s_inv), &data.words[e]);
                let f = data.mul_word(f, s);
                if data.class_of[f] == u32::MAX {
                    data.class_of[f] = c;
                    members.push(f as u32);
                    queue.push_back(f);
                }
            }
        }
        members.sort_unstable();
        data.class_elements.push(members);
    }

    let classes: Vec<ConjugacyClass> = data
        .class_elements
        .iter()
        .map(|m| {
            let rep = m[0] as usize;
            ConjugacyClass {
                representative: data.words[rep].clone(),
                size: m.len(),
                element_order: data.elements[rep].order(),
            }
        })
        .collect();
    data.exponent = classes
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.element_order));
    data.classes = classes;
    data.inverse_class = (0..data.classes.len())
        .map(|c| data.power_class(c, -1))
        .collect();
    data.square_class = (0..data.classes.len())
        .map(|c| data.power_class(c, 2))
        .collect();

    let total: usize = data.classes.iter().map(|c| c.size).sum();
    if total != order {
        return Err(Error::VerificationFailed(
            "class sizes do not sum to the group order".into(),
        ));
    }
    Ok(data)
}
