//! Finitely presented groups: words, presentations, coset enumeration, finite
//! quotients, conjugacy classes and character tables.

mod character;
mod coset;
mod finite;
mod modp;
mod presentation;
mod word;

pub use character::{character_table, Character, CharacterTable, ComplexCharacter};
pub use coset::{coset_enumerate, CosetTable};
pub use finite::{conjugacy_classes, ConjugacyClass, FiniteGroupData, MAX_GROUP_ORDER};
pub use presentation::{Presentation, GENUS17_EXTRA_RELATOR};
pub use word::{letter, letter_gen, Letter, Word};
