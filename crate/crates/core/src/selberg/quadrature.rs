//! Rigorous adaptive quadrature with Taylor jets.
//!
//! On a panel `[m − h, m + h]` the integral of `g` lies in
//! `Σ_{k<N, k even} g_k(m)·2h^{k+1}/(k+1) + [−1,1]·sup|g_N|·2h^{N+1}/(N+1)`,
//! where `g_k` are Taylor coefficients and `g_N` is enclosed by a jet seeded
//! on the whole panel.

use rug::Float;

use super::jet::Jet;
use crate::enclosure::Enclosure;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuadratureConfig {
    pub order: usize,
    /// Absolute width budget for the whole integral.
    pub tolerance: f64,
    pub max_depth: u32,
}

impl QuadratureConfig {
    /// Defaults tied to the working precision.
    pub fn for_precision(prec: u32) -> Self {
        let tolerance = if prec >= 256 { 1e-40 } else { 1e-28 };
        QuadratureConfig {
            order: 20,
            tolerance,
            max_depth: 30,
        }
    }
}

/// Enclosure of `∫_a^b g` where `jet(x, n)` returns the order-`n` jet of `g`
/// at (every point of) the enclosure `x`.
pub fn integrate<F>(
    jet: &F,
    a: &Enclosure,
    b: &Enclosure,
    cfg: &QuadratureConfig,
) -> Result<Enclosure>
where
    F: Fn(&Enclosure, usize) -> Jet,
{
    let prec = a.prec().max(b.prec());
    let total = (b - a).mid_f64().abs().max(f64::MIN_POSITIVE);
    let mut acc = Enclosure::zero(prec);
    let mut stack = vec![(a.clone(), b.clone(), 0u32)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let v = panel(jet, &lo, &hi, cfg.order);
        let len = (&hi - &lo).mid_f64().abs();
        let budget = cfg.tolerance * len / total;
        if v.is_finite() && v.width_f64() <= budget {
            acc = &acc + &v;
            continue;
        }
        if depth >= cfg.max_depth {
            return Err(Error::PrecisionFail(format!(
                "quadrature panel of width {len:e} did not reach {budget:e}"
            )));
        }
        let mid = Float::with_val(prec + 8, lo.mid_f64() + hi.mid_f64()) / 2u32;
        let m = Enclosure::new(prec, &mid, &mid);
        stack.push((m.clone(), hi, depth + 1));
        stack.push((lo, m, depth + 1));
    }
    Ok(acc)
}

fn panel<F>(jet: &F, a: &Enclosure, b: &Enclosure, n: usize) -> Enclosure
where
    F: Fn(&Enclosure, usize) -> Jet,
{
    let prec = a.prec().max(b.prec());
    let m = (a + b).div_i64(2);
    let h = (b - a).div_i64(2);
    let center = jet(&m, n - 1);
    let mut sum = Enclosure::zero(prec);
    let mut hp = h.clone();
    for k in 0..n {
        if k % 2 == 0 {
            sum = &sum
                + &(&(&center.c[k] * &hp).mul_i64(2) / &Enclosure::from_i64(prec, k as i64 + 1));
        }
        hp = &hp * &h;
    }
    let whole = a.hull(b);
    let wide = jet(&whole, n);
    let r = &(&wide.c[n].abs() * &hp.abs()).mul_i64(2) / &Enclosure::from_i64(prec, n as i64 + 1);
    sum.inflate(r.upper())
}
