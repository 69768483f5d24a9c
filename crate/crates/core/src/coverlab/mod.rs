//! Random permutation covers of the genus-2 handlebody quotient and the
//! degree-two cover switching model.

pub mod dump;
pub mod handlebody;
pub mod rep;
pub mod schreier;
pub mod screen;
pub mod twocover;

pub use dump::{SampleDump, ScreeningSummary};
pub use handlebody::{HandlebodyMap, FREE_GENERATORS, SURFACE_GENERATORS};
pub use rep::{compose_action, derive_seed, free_word_image, sample_rep, PermRep};
pub use schreier::{schreier, SchreierData, TreeEdge};
pub use screen::{screen_short_geodesics, ScreenClass, ScreeningReport};
pub use twocover::{cover_connected, hamming, switch, switch_walk, TwoCoverVector};
