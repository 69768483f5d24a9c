use serde::{Deserialize, Serialize};

use super::handlebody::HandlebodyMap;
use super::rep::{free_word_image, PermRep};
use crate::error::Result;
use crate::groupkit::Word;

/// A surface-group class with its image `q(γ)` in `F₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenClass {
    pub word: Word,
    pub q_image: Word,
}

impl ScreenClass {
    pub fn new(h: &HandlebodyMap, word: Word) -> Result<Self> {
        let q_image = h.apply(&word)?;
        Ok(ScreenClass { word, q_image })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreeningReport {
    /// Indices of classes with `q(γ) ≠ e` whose image fixes point 1.
    pub flagged: Vec<usize>,
    pub screened: usize,
}

impl ScreeningReport {
    pub fn passes(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Flags the classes that do not lift to the tree cover yet close up in the
/// sampled cover through the base point.
pub fn screen_short_geodesics(rep: &PermRep, classes: &[ScreenClass]) -> Result<ScreeningReport> {
    let mut flagged = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        if c.q_image.is_empty() {
            continue;
        }
        if free_word_image(rep, &c.q_image)?.apply(0) == 0 {
            flagged.push(i);
        }
    }
    Ok(ScreeningReport {
        flagged,
        screened: classes.len(),
    })
}
