use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TOLERANCE: f64 = 1e-9;
const MAX_DOUBLINGS: u32 = 200;

/// Inputs of the ledger. `A`, `B` and `ε` are only known to exist; the
/// defaults `A = B = 1`, `ε = 0.1` are placeholders.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerParams {
    pub eta: f64,
    pub w: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub eps: f64,
}

impl LedgerParams {
    pub fn new(eta: f64, w: f64) -> Self {
        LedgerParams {
            eta,
            w,
            a: 1.0,
            b: 1.0,
            eps: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsLedger {
    pub params: LedgerParams,
    /// Smallest length beyond which `(1/4)(1 − 2π/(ℓ+2π))² > 1/4 − η/2`.
    pub density_threshold: f64,
    /// Smallest length beyond which `ℓ·e^{−ℓ√η} < min(ε/A, η/B)`.
    pub decay_threshold: f64,
    pub ell: f64,
    pub note: String,
}

impl ConstantsLedger {
    pub fn density_holds(eta: f64, ell: f64) -> bool {
        let h = 1.0 - 2.0 * PI / (ell + 2.0 * PI);
        0.25 * h * h > 0.25 - eta / 2.0
    }

    pub fn decay_holds(p: &LedgerParams, ell: f64) -> bool {
        ell * (-ell * p.eta.sqrt()).exp() < (p.eps / p.a).min(p.eta / p.b)
    }

    /// Rechecks `ℓ > 4w` and both inequalities.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if !(self.ell > 4.0 * p.w) {
            return Err(Error::Infeasible(format!("ℓ = {} ≤ 4w", self.ell)));
        }
        if !Self::density_holds(p.eta, self.ell) || !Self::decay_holds(p, self.ell) {
            return Err(Error::Infeasible(format!(
                "ℓ = {} violates a constraint",
                self.ell
            )));
        }
        Ok(())
    }
}

/// Least `t ≥ lo` (up to `tol`) with `pred` true on `[t, ∞)`, for `pred`
/// monotone on `[lo, ∞)`. Returns the upper end of the final bracket.
pub fn bisect_threshold<F: Fn(f64) -> bool>(pred: F, lo: f64, tol: f64) -> Result<f64> {
    if pred(lo) {
        return Ok(lo);
    }
    let mut a = lo;
    let mut step = 1.0f64.max(lo.abs());
    let mut b = lo + step;
    let mut n = 0;
    while !pred(b) {
        n += 1;
        if n > MAX_DOUBLINGS {
            return Err(Error::Infeasible("no threshold found".into()));
        }
        a = b;
        step *= 2.0;
        b = lo + step;
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        if pred(m) {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(b)
}

/// Minimal `ℓ > 4w` (to `10⁻⁹`) satisfying both constraints for all larger
/// lengths.
pub fn ledger_solve(params: LedgerParams) -> Result<ConstantsLedger> {
    let p = params;
    for (v, name) in [
        (p.eta, "eta"),
        (p.w, "w"),
        (p.a, "A"),
        (p.b, "B"),
        (p.eps, "eps"),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositive(name));
        }
    }
    let density_threshold =
        bisect_threshold(|l| ConstantsLedger::density_holds(p.eta, l), 0.0, TOLERANCE)?;
    // ℓ·e^{−ℓ√η} decreases past its maximum at 1/√η.
    let peak = 1.0 / p.eta.sqrt();
    let decay_threshold = if ConstantsLedger::decay_holds(&p, peak) {
        0.0
    } else {
        bisect_threshold(|l| ConstantsLedger::decay_holds(&p, l), peak, TOLERANCE)?
    };
    let mut ell = density_threshold.max(decay_threshold);
    if ell <= 4.0 * p.w {
        ell = 4.0 * p.w + TOLERANCE;
    }
    let ledger = ConstantsLedger {
        params: p,
        density_threshold,
        decay_threshold,
        ell,
        note: "NON-RIGOROUS: A, B and eps are user-supplied placeholders".into(),
    };
    ledger.validate()?;
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_ledger() {
        let l = ledger_solve(LedgerParams::new(0.1, 0.5)).unwrap();
        assert!(
            (l.density_threshold - 53.2315).abs() < 1e-3,
            "{}",
            l.density_threshold
        );
        assert!(l.ell >= l.density_threshold && l.ell >= l.decay_threshold);
        assert!(l.note.contains("NON-RIGOROUS"));
    }

    #[test]
    fn wide_collar_dominates() {
        let l = ledger_solve(LedgerParams::new(0.1, 100.0)).unwrap();
        assert!(l.ell > 400.0 && l.ell < 400.0 + 1e-6);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(ledger_solve(LedgerParams::new(0.0, 1.0)).is_err());
    }
}
