use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::Word;
use crate::error::{Error, Result};

/// Extra relator that cuts the (2,3,8) triangle group down to the order-768
/// deck group of the genus-17 cover.
pub const GENUS17_EXTRA_RELATOR: &str = "z^2*y*x*z^2*y*x*z*y^-1*z^-1*x*z*y^-1*z^-1*x";

/// Finitely presented group `⟨generators | relators⟩`.
///
/// Text format:
///
/// ```text
/// # comment
/// gens: x y z
/// x^2
/// y^3
/// x*y*z
/// ```
///
/// The `gens:` line comes first and lists whitespace-separated names
/// (`[A-Za-z_][A-Za-z0-9_]*`). Every further non-blank line is one relator:
/// factors `name` or `name^k` (`k` a nonzero integer) joined by `*`; `1`
/// denotes the empty word. Relators are freely reduced on input and trivial
/// ones dropped. Printing emits the canonical form, merging runs into powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidWord("presentation needs a generator".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            let ok = g
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidWord(format!("bad generator name '{g}'")));
            }
            if generators[..i].contains(g) {
                return Err(Error::InvalidWord(format!("duplicate generator '{g}'")));
            }
        }
        let mut rels = Vec::with_capacity(relators.len());
        for r in relators {
            r.check_generators(generators.len())?;
            let r = r.free_reduce();
            if !r.is_empty() {
                rels.push(r);
            }
        }
        Ok(Presentation {
            generators,
            relators: rels,
        })
    }

    /// Builds a presentation from generator names and relator strings.
    pub fn from_strs(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators
            .iter()
            .map(|r| Word::parse(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(gens, rels)
    }

    /// `⟨x,y,z | x^p, y^q, z^r, xyz⟩`
    pub fn triangle(p: u32, q: u32, r: u32) -> Self {
        let rels = [
            format!("x^{p}"),
            format!("y^{q}"),
            format!("z^{r}"),
            "x*y*z".into(),
        ];
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        Presentation::from_strs(&["x", "y", "z"], &rels).expect("well-formed")
    }

    /// The (2,3,8) triangle group with the genus-17 extra relator.
    pub fn genus17_deck_group() -> Self {
        let mut p = Presentation::triangle(2, 3, 8);
        let extra = Word::parse(GENUS17_EXTRA_RELATOR, &p.generators).expect("well-formed");
        p.relators.push(extra.free_reduce());
        p
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generators)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match &gens {
                None => {
                    let rest = line.strip_prefix("gens:").ok_or_else(|| Error::Parse {
                        line: line_no,
                        msg: "expected 'gens:' line".into(),
                    })?;
                    gens = Some(rest.split_whitespace().map(String::from).collect());
                }
                Some(g) => {
                    let w = Word::parse(line, g).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                    rels.push(w);
                }
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing 'gens:' line".into(),
        })?;
        Presentation::new(gens, rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "{}", r.format(&self.generators))?;
        }
        Ok(())
    }
}
