use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

fn positive(v: f64, name: &'static str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive(name))
    }
}

/// Cheeger lower bound `1 − 2π/(sys + 2π)` for planar surfaces.
pub fn planar_cheeger(sys: f64) -> Result<f64> {
    positive(sys, "sys")?;
    Ok(1.0 - 2.0 * PI / (sys + 2.0 * PI))
}

/// `λ₁ ≥ h²/4` with the planar Cheeger bound.
pub fn planar_lambda1(sys: f64) -> Result<f64> {
    let h = planar_cheeger(sys)?;
    Ok(h * h / 4.0)
}

/// Enclosure version of [`planar_lambda1`].
pub fn planar_lambda1_enclosure(sys: &Enclosure) -> Result<Enclosure> {
    if !sys.is_positive() {
        return Err(Error::NonPositive("sys"));
    }
    let two_pi = Enclosure::pi(sys.prec()).mul_i64(2);
    let h = &Enclosure::one(sys.prec()) - &(&two_pi / &(sys + &two_pi));
    Ok(h.sqr().div_i64(4))
}

/// Width `arcsinh(1/sinh(ℓ/2))` of the standard collar.
pub fn collar_width(ell: f64) -> Result<f64> {
    positive(ell, "ell")?;
    Ok((1.0 / (ell / 2.0).sinh()).asinh())
}

/// `A·e^{−t√(1/4 − λ)}·count`, the pointwise bound on small eigenfunctions.
pub fn delocalization_bound(a: f64, t: f64, lambda: f64, orbit_count: u64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 0.25) {
        return Err(Error::OutOfRange(format!("λ = {lambda} not in (0, 1/4)")));
    }
    if !(t >= 0.0) {
        return Err(Error::OutOfRange(format!("t = {t} is negative")));
    }
    if orbit_count == 0 {
        return Err(Error::OutOfRange("orbit count must be at least 1".into()));
    }
    positive(a, "A")?;
    Ok(a * (-t * (0.25 - lambda).sqrt()).exp() * orbit_count as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatteningCost {
    pub admissible: bool,
    pub rayleigh_increment: f64,
}

/// Flattening `k` collars of length `ell`: admissible iff `‖f‖∞²·ℓ < ε`,
/// Rayleigh quotient increment `B·‖f‖∞²·ℓ·k`. Inputs are nonnegative.
pub fn flattening_cost(b: f64, sup_norm_sq: f64, ell: f64, k: u64, eps: f64) -> FlatteningCost {
    FlatteningCost {
        admissible: sup_norm_sq * ell < eps,
        rayleigh_increment: b * sup_norm_sq * ell * k as f64,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub x: f64,
    pub planar_cheeger: f64,
    pub planar_lambda1: f64,
    pub collar_width: f64,
}

/// The calculators on `count` equally spaced points of `[lo, hi]`.
pub fn calculator_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<GridRow>> {
    positive(lo, "lo")?;
    if !(hi >= lo) || count == 0 {
        return Err(Error::OutOfRange(format!(
            "bad grid [{lo}, {hi}] x {count}"
        )));
    }
    let step = if count > 1 {
        (hi - lo) / (count - 1) as f64
    } else {
        0.0
    };
    (0..count)
        .map(|i| {
            let x = lo + step * i as f64;
            Ok(GridRow {
                x,
                planar_cheeger: planar_cheeger(x)?,
                planar_lambda1: planar_lambda1(x)?,
                collar_width: collar_width(x)?,
            })
        })
        .collect()
}

pub fn grid_csv(rows: &[GridRow]) -> Result<String> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_values() {
        assert_eq!(planar_cheeger(2.0 * PI).unwrap(), 0.5);
        assert_eq!(planar_lambda1(2.0 * PI).unwrap(), 1.0 / 16.0);
        let fixed = 2.0 * 1f64.asinh();
        assert!((collar_width(fixed).unwrap() - 1f64.asinh()).abs() < 1e-15);
        assert!(planar_cheeger(0.0).is_err());
        assert!(collar_width(-1.0).is_err());
    }

    #[test]
    fn enclosure_lambda1() {
        let sys = Enclosure::pi(128).mul_i64(2);
        let v = planar_lambda1_enclosure(&sys).unwrap();
        assert!(v.contains(&Enclosure::from_ratio(128, 1, 16)));
        assert!(v.width_f64() < 1e-35);
    }

    #[test]
    fn delocalization_limits() {
        assert_eq!(delocalization_bound(2.0, 0.0, 0.1, 3).unwrap(), 6.0);
        let a = delocalization_bound(1.0, 2.0, 0.1, 1).unwrap();
        let b = delocalization_bound(1.0, 4.0, 0.1, 1).unwrap();
        assert!((b - a * a).abs() < 1e-15);
        assert!(delocalization_bound(1.0, 1.0, 0.25, 1).is_err());
        assert!(delocalization_bound(1.0, 1.0, 0.0, 1).is_err());
    }

    #[test]
    fn flattening() {
        assert_eq!(
            flattening_cost(1.0, 0.0, 5.0, 3, 0.1),
            FlatteningCost {
                admissible: true,
                rayleigh_increment: 0.0
            }
        );
        assert!(!flattening_cost(1.0, 0.02, 5.0, 1, 0.1).admissible);
        let one = flattening_cost(2.0, 0.01, 3.0, 4, 0.1).rayleigh_increment;
        let two = flattening_cost(2.0, 0.01, 3.0, 8, 0.1).rayleigh_increment;
        assert_eq!(two, 2.0 * one);
    }

    #[test]
    fn grid_output() {
        let rows = calculator_grid(1.0, 10.0, 4).unwrap();
        assert_eq!(rows.len(), 4);
        let csv = grid_csv(&rows).unwrap();
        assert!(csv.starts_with("x,planar_cheeger,planar_lambda1,collar_width\n"));
    }
}
