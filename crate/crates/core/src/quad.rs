//! Adaptive Gauss–Kronrod quadrature.
//!
//! This is the workhorse behind every numeric integral in the crate: the
//! quadrature oracle that cross-checks closed-form kernel primitives, the
//! total-variation integrals of mixed-sign axis densities, and the
//! sign-restricted densities produced by Jordan decomposition.
//!
//! The scheme is the classic 7/15-point Gauss–Kronrod pair on a worklist of
//! segments: the segment with the largest local error estimate is bisected
//! until the summed estimate meets the tolerance. Kronrod nodes are interior,
//! so integrands are never evaluated at segment endpoints; improper ranges are
//! folded to `[0, 1)` with the substitution `y = a + t/(1-t)` before
//! integration. Hitting the segment cap is a hard [`Error::QuadratureCap`] —
//! a partial value is never returned silently.

use crate::error::{Error, Result};

/// Default absolute tolerance used by the measure layer.
pub const DEFAULT_ABS_TOL: f64 = 1e-10;
/// Default relative floor. Purely absolute tolerances are unattainable in
/// `f64` once values grow past ~1e6, so convergence accepts
/// `err <= max(abs, rel * |value|)`.
pub const DEFAULT_REL_TOL: f64 = 1e-12;
/// Default hard cap on the number of segments.
pub const DEFAULT_MAX_SEGMENTS: usize = 4000;

/// Convergence target for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tol {
    /// Absolute error target.
    pub abs: f64,
    /// Relative error floor (scaled by the current value estimate).
    pub rel: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol { abs: DEFAULT_ABS_TOL, rel: DEFAULT_REL_TOL }
    }
}

impl Tol {
    /// Effective bound for a value of magnitude `|value|`.
    fn bound(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Converged integral together with its error estimate.
#[derive(Clone, Copy, Debug)]
pub struct QuadOutcome {
    /// Integral estimate.
    pub value: f64,
    /// Summed Kronrod error estimate (guaranteed `<=` the accepted bound).
    pub error_estimate: f64,
    /// Number of segments in the final partition.
    pub segments: usize,
}

// 15-point Kronrod nodes (positive half, descending) and weights, with the
// embedded 7-point Gauss weights; values from the QUADPACK QK15 tables.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    splittable: bool,
}

/// One Gauss–Kronrod 15 pass over `[a, b]`, returning the Kronrod value and
/// a QUADPACK-style error estimate.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [[0.0f64; 2]; 7];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let f1 = f(center - half * x);
        let f2 = f(center + half * x);
        fv[j] = [f1, f2];
        let fsum = f1 + f2;
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for (j, pair) in fv.iter().enumerate() {
        resasc += WGK[j] * ((pair[0] - reskh).abs() + (pair[1] - reskh).abs());
    }

    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    let tiny = f64::MIN_POSITIVE / (50.0 * f64::EPSILON);
    if resabs > tiny {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (value, err)
}

fn make_segment<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let (value, error) = gk15(f, a, b);
    Segment { a, b, value, error, splittable: true }
}

/// Adaptive quadrature of `f` over `[a, b]` where either endpoint may be
/// infinite. Semi-infinite and doubly infinite ranges are mapped onto finite
/// ones before subdivision.
///
/// Errors with [`Error::InvalidInput`] for NaN or inverted endpoints and with
/// [`Error::QuadratureCap`] when `max_segments` bisections cannot reach the
/// tolerance (including genuinely divergent integrands).
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: Tol,
    max_segments: usize,
) -> Result<QuadOutcome> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::InvalidInput("integration endpoint is NaN".into()));
    }
    if a > b {
        return Err(Error::InvalidInput(format!(
            "inverted integration range [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(QuadOutcome { value: 0.0, error_estimate: 0.0, segments: 0 });
    }

    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(&f, a, b, tol, max_segments),
        (true, false) => {
            // y = a + t/(1-t), dy = dt/(1-t)^2, t in [0, 1).
            let g = |t: f64| {
                let u = 1.0 - t;
                f(a + t / u) / (u * u)
            };
            integrate_finite(&g, 0.0, 1.0, tol, max_segments)
        }
        (false, true) => {
            // y = b - t/(1-t), mirrored substitution.
            let g = |t: f64| {
                let u = 1.0 - t;
                f(b - t / u) / (u * u)
            };
            integrate_finite(&g, 0.0, 1.0, tol, max_segments)
        }
        (false, false) => {
            // Split at 0 and fold both halves onto [0, 1).
            let gp = |t: f64| {
                let u = 1.0 - t;
                f(t / u) / (u * u)
            };
            let gn = |t: f64| {
                let u = 1.0 - t;
                f(-t / u) / (u * u)
            };
            let half_tol = Tol { abs: 0.5 * tol.abs, rel: tol.rel };
            let pos = integrate_finite(&gp, 0.0, 1.0, half_tol, max_segments / 2)?;
            let neg = integrate_finite(&gn, 0.0, 1.0, half_tol, max_segments / 2)?;
            Ok(QuadOutcome {
                value: pos.value + neg.value,
                error_estimate: pos.error_estimate + neg.error_estimate,
                segments: pos.segments + neg.segments,
            })
        }
    }
}

fn integrate_finite<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: Tol,
    max_segments: usize,
) -> Result<QuadOutcome> {
    let mut segments = vec![make_segment(f, a, b)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let bound = tol.bound(value);
        if error <= bound {
            return Ok(QuadOutcome { value, error_estimate: error, segments: segments.len() });
        }

        // Deterministic choice: the splittable segment with the largest local
        // error, ties resolved by position in the worklist.
        let mut worst: Option<usize> = None;
        for (i, s) in segments.iter().enumerate() {
            if s.splittable && worst.is_none_or(|w| s.error > segments[w].error) {
                worst = Some(i);
            }
        }
        let Some(idx) = worst else {
            // Nothing left to split: remaining error is pure roundoff floor.
            return Err(Error::QuadratureCap {
                achieved: error,
                requested: bound,
                segments: segments.len(),
            });
        };
        if segments.len() >= max_segments {
            return Err(Error::QuadratureCap {
                achieved: error,
                requested: bound,
                segments: segments.len(),
            });
        }

        let Segment { a: sa, b: sb, .. } = segments[idx];
        let mid = 0.5 * (sa + sb);
        if mid <= sa || mid >= sb {
            segments[idx].splittable = false;
            continue;
        }
        segments[idx] = make_segment(f, sa, mid);
        segments.insert(idx + 1, make_segment(f, mid, sb));
    }
}
