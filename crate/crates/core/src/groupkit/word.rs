use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator or its inverse: `+(i+1)` is generator `i`, `-(i+1)` its inverse.
pub type Letter = i32;

#[inline]
pub fn letter(gen: usize, inverse: bool) -> Letter {
    let l = gen as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

#[inline]
pub fn letter_gen(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// A word in signed generator indices. Not automatically reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![letter(i, false)])
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self^k`; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// `self^-1 · w · self`
    pub fn conjugate_of(&self, w: &Word) -> Word {
        self.inverse().concat(w).concat(self)
    }

    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce().0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&l| letter_gen(l)).max()
    }

    pub fn check_generators(&self, ngens: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || letter_gen(l) >= ngens) {
            Some(l) => Err(Error::InvalidWord(format!(
                "letter {l} outside the {ngens} declared generators"
            ))),
            None => Ok(()),
        }
    }

    /// Canonical text: runs merged into `g^k`, factors joined by `*`, `1` for
    /// the empty word.
    pub fn format(&self, names: &[impl AsRef<str>]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            let name = names
                .get(letter_gen(l))
                .map(|s| s.as_ref().to_string())
                .unwrap_or_else(|| format!("g{}", letter_gen(l) + 1));
            let exp = if l < 0 { -(run as i64) } else { run as i64 };
            out.push_str(&name);
            if exp != 1 {
                let _ = write!(out, "^{exp}");
            }
            i += run;
        }
        out
    }

    /// Parses `a*b^-1*c^3` style text (also `1` for the empty word). Factors
    /// may be separated by `*` or juxtaposed when names are single characters.
    pub fn parse(text: &str, names: &[impl AsRef<str>]) -> Result<Word> {
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut out = Vec::new();
        let bad = |msg: String| Error::InvalidWord(format!("{msg} in '{text}'"));
        while pos < bytes.len() {
            let c = bytes[pos] as char;
            if c == '*' || c.is_whitespace() {
                pos += 1;
                continue;
            }
            if !(c.is_ascii_alphabetic() || c == '_') {
                return Err(bad(format!("unexpected '{c}'")));
            }
            // Longest declared name that matches here.
            let rest = &text[pos..];
            let (gen, name_len) = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_ref()))
                .max_by_key(|(_, n)| n.as_ref().len())
                .map(|(i, n)| (i, n.as_ref().len()))
                .ok_or_else(|| bad(format!("undeclared generator at '{rest}'")))?;
            pos += name_len;
            let mut exp: i64 = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let start = pos;
                if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                    pos += 1;
                }
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = text[start..pos]
                    .parse()
                    .map_err(|_| bad("malformed exponent".to_string()))?;
            }
            let l = letter(gen, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn parse_and_format() {
        let w = Word::parse("z^2*y*x*z^-1", &N).unwrap();
        assert_eq!(w.0, vec![3, 3, 2, 1, -3]);
        assert_eq!(w.format(&N), "z^2*y*x*z^-1");
        assert_eq!(Word::parse("xyz", &N).unwrap().0, vec![1, 2, 3]);
        assert_eq!(Word::parse("1", &N).unwrap(), Word::empty());
        assert!(Word::parse("x*w", &N).is_err());
        assert!(Word::parse("x^", &N).is_err());
    }

    #[test]
    fn reductions() {
        let w = Word(vec![1, 2, -2, 3, -1]);
        assert_eq!(w.free_reduce().0, vec![1, 3, -1]);
        assert_eq!(w.cyclic_reduce().0, vec![3]);
        assert_eq!(Word(vec![1, 2]).inverse().0, vec![-2, -1]);
        let c = Word::commutator(&Word::gen(0), &Word::gen(1));
        assert_eq!(c.0, vec![1, 2, -1, -2]);
    }
}
