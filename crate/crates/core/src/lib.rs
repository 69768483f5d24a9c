pub mod bounds;
pub mod coverlab;
pub mod enclosure;
pub mod error;
pub mod fuchsia;
pub mod groupkit;
pub mod perm;
pub mod selberg;

pub use enclosure::Enclosure;
pub use error::{Error, Result};
pub use perm::Perm;
