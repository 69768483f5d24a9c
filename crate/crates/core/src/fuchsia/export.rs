//! CSV export of geodesic class lists.

use serde::{Deserialize, Serialize};

use super::classes::{ClassKind, GeodesicClass};
use crate::error::{Error, Result};
use crate::groupkit::Presentation;

/// One exported class: lengths are written as `mid±radius`, traces as the
/// four rational coordinates in the basis `1, α, α², α³` separated by spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRow {
    pub kind: String,
    pub word: String,
    pub order_or_length: String,
    pub primitive: String,
    pub trace: String,
}

pub fn class_rows(classes: &[GeodesicClass]) -> Vec<ClassRow> {
    let p = Presentation::triangle(2, 3, 8);
    let mut rows = Vec::with_capacity(classes.len());
    for c in classes {
        let (kind, value, primitive) = match &c.kind {
            ClassKind::Elliptic { order, .. } => ("elliptic", order.to_string(), String::new()),
            ClassKind::Hyperbolic {
                length, primitive, ..
            } => (
                "hyperbolic",
                length.to_decimal_with_error(),
                primitive.to_string(),
            ),
        };
        let trace = c
            .trace
            .coords()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        rows.push(ClassRow {
            kind: kind.to_string(),
            word: p.format_word(&c.representative),
            order_or_length: value,
            primitive,
            trace,
        });
    }
    rows
}

/// Columns `kind, word, order_or_length, primitive, trace`.
pub fn classes_csv(classes: &[GeodesicClass]) -> Result<String> {
    rows_csv(&class_rows(classes))
}

pub fn rows_csv(rows: &[ClassRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Error::OutOfRange(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::OutOfRange(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
