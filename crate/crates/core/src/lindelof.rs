//! Boundedness scans for reciprocal-moment integrals.
//!
//! For a growing family of annuli `{1 < |z| <= r}` these scans accumulate
//!
//! ```text
//! S(r) = int_{1 < |z| <= r} f(1/z) d nu(z)
//! ```
//!
//! with `f` one of `Re`, `Im`, the full complex value, or the clipped
//! `Re^+ = max(Re, 0)`. Whether `sup_r |S(r)|` stays bounded is the
//! classical growth-side condition these scans probe; the verdict here is a
//! finite-grid stand-in based on the trend of `|S(r)|` against `ln r` over
//! the top half of the grid.
//!
//! On the axis `Re(1/(iy)) = 0` identically, so `Re` and `Re^+` scans see
//! planar atoms only — the axis contribution is exactly zero, not merely
//! small — while `Im(1/(iy)) = -1/y` feeds the `Im` scan through the
//! closed-form weighted primitives of the axis density.

use crate::error::{Error, Result};
use crate::measure::ChargeDistribution;

/// Which function of `1/z` a scan integrates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LindelofKind {
    /// `Re(1/z)`.
    Re,
    /// `Im(1/z)`.
    Im,
    /// The full complex integral; partial values are moduli.
    Full,
    /// `max(Re(1/z), 0)` — the one-sided variant.
    RePlus,
}

impl LindelofKind {
    /// Stable lowercase name (CSV/CLI identifier).
    pub fn name(&self) -> &'static str {
        match self {
            LindelofKind::Re => "re",
            LindelofKind::Im => "im",
            LindelofKind::Full => "full",
            LindelofKind::RePlus => "re_plus",
        }
    }

    /// Parse a CSV/CLI identifier.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "re" => Ok(LindelofKind::Re),
            "im" => Ok(LindelofKind::Im),
            "full" => Ok(LindelofKind::Full),
            "re_plus" | "replus" => Ok(LindelofKind::RePlus),
            _ => Err(Error::InvalidInput(format!(
                "unknown scan kind {s:?} (expected re, im, full, replus)"
            ))),
        }
    }
}

/// Result of one scan over a radius grid.
#[derive(Clone, Debug, PartialEq)]
pub struct LindelofReport {
    /// Which function was integrated.
    pub kind: LindelofKind,
    /// The radius grid.
    pub radii: Vec<f64>,
    /// `|S(r)|` per radius.
    pub partial_values: Vec<f64>,
    /// Real components of the accumulated integral (for `Im` scans zero;
    /// for `RePlus` the clipped sums).
    pub partial_re: Vec<f64>,
    /// Imaginary components of the accumulated integral.
    pub partial_im: Vec<f64>,
    /// `max_r |S(r)|`.
    pub sup_value: f64,
    /// Least-squares slope of `|S(r)|` against `ln r` over the top half of
    /// the grid.
    pub trend_slope: f64,
}

/// Accumulated per-atom contributions sorted by modulus, with prefix sums.
/// Shared with the theorem harness, which runs the same annulus arithmetic
/// against both a source measure and its sweep.
pub(crate) struct SortedContributions {
    moduli: Vec<f64>,
    prefix_re: Vec<f64>,
    prefix_im: Vec<f64>,
    prefix_replus: Vec<f64>,
}

impl SortedContributions {
    pub(crate) fn build(mu: &ChargeDistribution) -> Self {
        let mut rows: Vec<(f64, f64, f64, f64)> = Vec::new();
        for a in mu.atoms() {
            let re = a.weight * a.location.recip_re();
            let im = a.weight * a.location.recip_im();
            let replus = a.weight * a.location.recip_re().max(0.0);
            rows.push((a.location.modulus(), re, im, replus));
        }
        for a in mu.axis().atoms() {
            // 1/(i y) = -i / y: no real part, so nothing feeds Re or Re^+.
            if a.y != 0.0 {
                rows.push((a.y.abs(), 0.0, a.weight * (-1.0 / a.y), 0.0));
            }
        }
        rows.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut out = SortedContributions {
            moduli: Vec::with_capacity(rows.len()),
            prefix_re: vec![0.0],
            prefix_im: vec![0.0],
            prefix_replus: vec![0.0],
        };
        for (m, re, im, replus) in rows {
            out.moduli.push(m);
            out.prefix_re.push(out.prefix_re.last().unwrap() + re);
            out.prefix_im.push(out.prefix_im.last().unwrap() + im);
            out.prefix_replus.push(out.prefix_replus.last().unwrap() + replus);
        }
        out
    }

    /// Sums over the annulus `lo < |z| <= hi`.
    pub(crate) fn annulus(&self, lo: f64, hi: f64) -> (f64, f64, f64) {
        let a = self.moduli.partition_point(|&m| m <= lo);
        let b = self.moduli.partition_point(|&m| m <= hi);
        (
            self.prefix_re[b] - self.prefix_re[a],
            self.prefix_im[b] - self.prefix_im[a],
            self.prefix_replus[b] - self.prefix_replus[a],
        )
    }
}

/// Run one scan. Radii must be finite, `>= 1`, strictly increasing; the
/// integral starts at the unit circle, so a leading radius of exactly `1`
/// reports zero.
pub fn lindelof_scan(
    mu: &ChargeDistribution,
    kind: LindelofKind,
    radii: &[f64],
) -> Result<LindelofReport> {
    if radii.is_empty() {
        return Err(Error::InvalidInput("scan requires at least one radius".into()));
    }
    if !radii.iter().all(|r| r.is_finite() && *r >= 1.0)
        || !radii.windows(2).all(|w| w[0] < w[1])
    {
        return Err(Error::InvalidInput(
            "scan radii must be finite, >= 1, strictly increasing".into(),
        ));
    }
    let atoms = SortedContributions::build(mu);
    let axis = mu.axis();
    let needs_axis_im = matches!(kind, LindelofKind::Im | LindelofKind::Full)
        && !axis.terms().is_empty();

    let mut partial_re = Vec::with_capacity(radii.len());
    let mut partial_im = Vec::with_capacity(radii.len());
    let mut partial_values = Vec::with_capacity(radii.len());
    let (mut cum_re, mut cum_im) = (0.0f64, 0.0f64);
    let mut prev = 1.0f64;
    for &r in radii {
        if r > prev {
            let (re_inc, im_inc, replus_inc) = atoms.annulus(prev, r);
            let axis_im_inc = if needs_axis_im {
                // int Im(1/(iy)) rho(y) dy = -int rho(y)/y dy over both shells.
                -(axis.density_signed_over_y(prev, r)?
                    + axis.density_signed_over_y(-r, -prev)?)
            } else {
                0.0
            };
            match kind {
                LindelofKind::Re => cum_re += re_inc,
                LindelofKind::Im => cum_im += im_inc + axis_im_inc,
                LindelofKind::Full => {
                    cum_re += re_inc;
                    cum_im += im_inc + axis_im_inc;
                }
                LindelofKind::RePlus => cum_re += replus_inc,
            }
            prev = r;
        }
        partial_re.push(cum_re);
        partial_im.push(cum_im);
        partial_values.push(if kind == LindelofKind::Full {
            cum_re.hypot(cum_im)
        } else {
            (cum_re + cum_im).abs() // one of the two is identically zero
        });
    }
    let sup_value = partial_values.iter().fold(0.0f64, |m, &v| m.max(v));
    let trend_slope = tail_slope(radii, &partial_values);
    Ok(LindelofReport {
        kind,
        radii: radii.to_vec(),
        partial_values,
        partial_re,
        partial_im,
        sup_value,
        trend_slope,
    })
}

/// Least-squares slope of `values` against `ln r` over the top half of the
/// grid (zero when fewer than two tail points or when the radii coincide in
/// log scale).
fn tail_slope(radii: &[f64], values: &[f64]) -> f64 {
    let start = radii.len() / 2;
    let xs: Vec<f64> = radii[start..].iter().map(|r| r.ln()).collect();
    let ys = &values[start..];
    if xs.len() < 2 {
        return 0.0;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Judge boundedness from the trend slope: `|slope| <= slope_tol` counts as
/// bounded. Requires at least eight samples in the top half of the grid.
pub fn boundedness_verdict(report: &LindelofReport, slope_tol: f64) -> Result<bool> {
    if !(slope_tol > 0.0 && slope_tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "slope tolerance must be positive, got {slope_tol}"
        )));
    }
    let tail = report.radii.len() - report.radii.len() / 2;
    if tail < 8 {
        return Err(Error::InsufficientSamples { needed: 8, got: tail });
    }
    Ok(report.trend_slope.abs() <= slope_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balayage::balayage_genus1;
    use crate::grid::log_grid;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn symmetric_axis_pairs_cancel() {
        let mu = ChargeDistribution::from_atoms(
            (2..=10).flat_map(|k| [(0.0, k as f64, 1.0), (0.0, -(k as f64), 1.0)]),
        )
        .unwrap();
        let radii = log_grid(1.0, 100.0, 16).unwrap();
        let rep = lindelof_scan(&mu, LindelofKind::Full, &radii).unwrap();
        assert!(rep.sup_value < 1e-15, "sup = {}", rep.sup_value);
        assert!(boundedness_verdict(&rep, 0.05).unwrap());
    }

    #[test]
    fn harmonic_sums_drift_like_log() {
        let mu = ChargeDistribution::from_atoms(
            (2..=300).map(|k| (k as f64, 0.0, 1.0)),
        )
        .unwrap();
        let radii = log_grid(1.0, 300.0, 24).unwrap();
        let rep = lindelof_scan(&mu, LindelofKind::Re, &radii).unwrap();
        // Partial sums of 1/k grow like ln r: slope about 1.
        assert!(close(rep.trend_slope, 1.0, 0.15), "slope = {}", rep.trend_slope);
        assert!(!boundedness_verdict(&rep, 0.1).unwrap());
    }

    #[test]
    fn re_scan_ignores_axis_mass_exactly() {
        let mu = ChargeDistribution::from_atoms([
            (0.0, 2.0, 5.0),
            (0.0, -3.0, 7.0),
        ])
        .unwrap();
        let bal = balayage_genus1(
            &ChargeDistribution::from_atoms([(2.0, 1.0, 3.0)]).unwrap(),
        )
        .unwrap();
        // The swept result is axis-only (one right atom, fully swept), so the
        // merge yields axis atoms plus an axis density and nothing else.
        let with_density = mu.merged(&bal.result).unwrap();
        let radii = log_grid(1.0, 50.0, 8).unwrap();
        for probe in [&mu, &with_density] {
            let rep = lindelof_scan(probe, LindelofKind::Re, &radii).unwrap();
            assert!(rep.partial_values.iter().all(|&v| v == 0.0));
            let rep_plus = lindelof_scan(probe, LindelofKind::RePlus, &radii).unwrap();
            assert!(rep_plus.partial_values.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn im_scan_sees_axis_atoms_and_density() {
        let mu = ChargeDistribution::from_atoms([(0.0, 2.0, 4.0)]).unwrap();
        let radii = [1.0, 3.0, 10.0];
        let rep = lindelof_scan(&mu, LindelofKind::Im, &radii).unwrap();
        assert_eq!(rep.partial_values[0], 0.0);
        assert!(close(rep.partial_im[1], 4.0 * (-1.0 / 2.0), 1e-15));
        assert!(close(rep.partial_values[2], 2.0, 1e-15));

        // Swept even density: the 1/y weight makes shells cancel exactly.
        let src = ChargeDistribution::from_atoms([(1.0, 0.0, 1.0)]).unwrap();
        let bal = balayage_genus1(&src).unwrap();
        let grid = log_grid(1.0, 1e3, 8).unwrap();
        let rep2 = lindelof_scan(&bal.result, LindelofKind::Im, &grid).unwrap();
        assert!(rep2.sup_value < 1e-12, "sup = {}", rep2.sup_value);
    }

    #[test]
    fn full_scan_obeys_triangle_inequality() {
        let mu = ChargeDistribution::from_atoms([
            (2.0, 1.0, 1.0),
            (3.0, -4.0, -2.0),
            (0.0, 5.0, 1.5),
            (-7.0, 2.0, 0.5),
        ])
        .unwrap();
        let radii = log_grid(1.0, 20.0, 8).unwrap();
        let full = lindelof_scan(&mu, LindelofKind::Full, &radii).unwrap();
        let re = lindelof_scan(&mu, LindelofKind::Re, &radii).unwrap();
        let im = lindelof_scan(&mu, LindelofKind::Im, &radii).unwrap();
        for i in 0..radii.len() {
            assert!(
                full.partial_values[i]
                    <= re.partial_values[i] + im.partial_values[i] + 1e-12
            );
            assert!(full.partial_values[i] + 1e-12 >= re.partial_values[i].max(im.partial_values[i]));
        }
    }

    #[test]
    fn scan_validates_radii() {
        let mu = ChargeDistribution::empty();
        assert!(lindelof_scan(&mu, LindelofKind::Re, &[]).is_err());
        assert!(lindelof_scan(&mu, LindelofKind::Re, &[0.5, 2.0]).is_err());
        assert!(lindelof_scan(&mu, LindelofKind::Re, &[2.0, 2.0]).is_err());
    }

    #[test]
    fn verdict_needs_enough_tail() {
        let mu = ChargeDistribution::empty();
        let radii = log_grid(1.0, 10.0, 8).unwrap(); // 9 points, tail 5
        let rep = lindelof_scan(&mu, LindelofKind::Re, &radii).unwrap();
        assert!(matches!(
            boundedness_verdict(&rep, 0.1),
            Err(Error::InsufficientSamples { needed: 8, .. })
        ));
        assert!(boundedness_verdict(&rep, 0.0).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in [
            LindelofKind::Re,
            LindelofKind::Im,
            LindelofKind::Full,
            LindelofKind::RePlus,
        ] {
            assert_eq!(LindelofKind::parse(kind.name()).unwrap(), kind);
        }
        assert!(LindelofKind::parse("imaginary").is_err());
    }
}
