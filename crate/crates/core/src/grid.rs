//! Deterministic evaluation grids.
//!
//! All grid builders produce strictly increasing, fully determined point
//! lists (no accumulation drift: points are computed from the index), so two
//! runs with the same parameters emit byte-identical reports.

use crate::error::{Error, Result};

/// Logarithmic grid from `lo` to `hi` with `per_decade` points per decade.
/// Both endpoints are included; points are `lo * 10^(i / per_decade)`.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::InvalidInput(format!(
            "log grid needs 0 < lo < hi finite, got [{lo}, {hi}]"
        )));
    }
    if per_decade == 0 {
        return Err(Error::InvalidInput("log grid needs per_decade >= 1".into()));
    }
    let mut pts = Vec::new();
    let mut i = 0usize;
    loop {
        let r = lo * 10f64.powf(i as f64 / per_decade as f64);
        if r >= hi * (1.0 - 1e-12) {
            break;
        }
        pts.push(r);
        i += 1;
    }
    pts.push(hi);
    Ok(pts)
}

/// Arithmetic grid `start, start + step, ...` up to and including `stop`
/// (within half a relative ulp of drift tolerance).
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::InvalidInput("linear grid endpoints must be finite".into()));
    }
    if !(step > 0.0 && stop >= start) {
        return Err(Error::InvalidInput(format!(
            "linear grid needs step > 0 and stop >= start, got [{start}, {stop}] step {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Symmetric logarithmic grid: `-hi ... -lo, 0, lo ... hi`.
pub fn symmetric_log_grid(lo: f64, hi: f64, per_decade: usize) -> Result<Vec<f64>> {
    let pos = log_grid(lo, hi, per_decade)?;
    let mut pts: Vec<f64> = pos.iter().rev().map(|&p| -p).collect();
    pts.push(0.0);
    pts.extend(pos);
    Ok(pts)
}
