//! Exact arithmetic in the (2,3,8) triangle group and its conjugacy classes.

pub mod bolza;
pub mod classes;
pub mod export;
pub mod field;
pub mod mobius;

pub use bolza::{
    bolza_generators, bolza_systole, short_surface_words, surface_to_triangle, verify_bolza,
    BolzaVerification, SurfaceGeodesic, BOLZA_GENERATORS,
};
pub use classes::{
    elliptic_classes, enumerate_hyperbolic, hyperbolic_classes_up_to, stability_check, ClassKind,
    CompletenessCertificate, Conjugate, GeodesicClass, HyperbolicEnumeration, StabilityReport,
    MAX_LENGTH_BOUND,
};
pub use export::{class_rows, classes_csv, rows_csv, ClassRow};
pub use field::{ExtElem, FieldElem};
pub use mobius::{generator_matrices, word_matrix, Classification, Mobius};
