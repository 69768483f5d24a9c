//! Geometric side of the twisted trace formula for the deck group of the
//! genus-17 cover, and the spectral exclusion criterion.

pub mod certify;
pub mod jet;
pub mod quadrature;
pub mod terms;
pub mod testfn;

pub use certify::{
    certify_exclusion, certify_gap, certify_gap_with, certify_gap_with_options, fhat_at_lambda,
    CertifyOptions, CharacterResult, ClassInput, DeckGroup, Exclusion, GapCertificate, Status,
};
pub use terms::{
    elliptic_integral, elliptic_term, geometric_side, hyperbolic_term, identity_integral,
    identity_term, GeometricSideReport, Normalization, TraceData,
};
pub use testfn::{parse_rational, SpectralArg, TestFn};
