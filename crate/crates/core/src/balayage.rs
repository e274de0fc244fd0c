//! Sweeping charge out of the right half-plane.
//!
//! Balayage replaces every atom with `Re z > 0` by its boundary charge on
//! the imaginary axis while fixing everything in the closed left half-plane.
//! Three variants:
//!
//! * **genus 0** — each right atom `(z, w)` becomes the density
//!   `w * (x/pi) / (x^2 + (y - v)^2)`; masses are preserved and total
//!   variation never grows;
//! * **genus 1** — subtracts the constant `w * Re(1/z) / pi`, which tames
//!   `1/y` tails at the price of locally signed densities; undefined when
//!   mass sits at (or within `1e-12` of) the origin;
//! * **genus 01** — genus 0 for the part inside the open disk `|z| < r0`,
//!   genus 1 for the rest; the standard compromise when mass approaches the
//!   origin.
//!
//! [`two_sided_balayage`] composes a genus-01 sweep with a mirrored sweep of
//! the left half-plane, leaving a measure concentrated on the axis alone.

use crate::error::{Error, Result};
use crate::measure::{AxisCharge, AxisTerm, ChargeDistribution, Genus, VariationMode};
use crate::kernels::{quadrature_oracle, IntervalI};

/// Atoms closer to the origin than this cannot be swept at genus 1.
pub const GENUS1_MIN_MODULUS: f64 = 1e-12;

/// Which sweep produced a [`BalayageResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalayageGenus {
    /// Pure genus-0 sweep.
    Zero,
    /// Pure genus-1 sweep.
    One,
    /// Genus 0 inside the split disk, genus 1 outside.
    ZeroOne,
}

/// Output of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct BalayageResult {
    /// The swept measure (right half-plane cleared).
    pub result: ChargeDistribution,
    /// Which sweep ran.
    pub genus: BalayageGenus,
    /// Split radius for genus-01 sweeps.
    pub split_radius: Option<f64>,
    /// Total variation the source carried in the open right half-plane.
    pub source_mass_right: f64,
}

fn right_mass(mu: &ChargeDistribution) -> f64 {
    mu.atoms()
        .iter()
        .filter(|a| a.location.re > 0.0)
        .map(|a| a.weight.abs())
        .sum()
}

fn sweep_fixed_genus(mu: &ChargeDistribution, genus: Genus) -> Result<ChargeDistribution> {
    let mut kept = Vec::new();
    let mut swept = Vec::new();
    for a in mu.atoms() {
        if a.location.re > 0.0 {
            if genus == Genus::One && a.location.modulus() < GENUS1_MIN_MODULUS {
                return Err(Error::Genus1Ineligible { modulus: a.location.modulus() });
            }
            swept.push(AxisTerm::kernel(a.location.re, a.location.im, a.weight, genus)?);
        } else {
            kept.push(*a);
        }
    }
    if genus == Genus::One && mu.axis().atoms().iter().any(|a| a.y == 0.0) {
        return Err(Error::Genus1Ineligible { modulus: 0.0 });
    }
    ChargeDistribution::from_parts(kept, mu.axis().with_extra_terms(swept)?)
}

/// Genus-0 sweep of the open right half-plane onto the axis.
pub fn balayage_genus0(mu: &ChargeDistribution) -> Result<BalayageResult> {
    Ok(BalayageResult {
        result: sweep_fixed_genus(mu, Genus::Zero)?,
        genus: BalayageGenus::Zero,
        split_radius: None,
        source_mass_right: right_mass(mu),
    })
}

/// Genus-1 sweep; fails with [`Error::Genus1Ineligible`] when mass sits at
/// the origin or a right atom lies within [`GENUS1_MIN_MODULUS`] of it.
pub fn balayage_genus1(mu: &ChargeDistribution) -> Result<BalayageResult> {
    Ok(BalayageResult {
        result: sweep_fixed_genus(mu, Genus::One)?,
        genus: BalayageGenus::One,
        split_radius: None,
        source_mass_right: right_mass(mu),
    })
}

/// Genus-01 sweep with split radius `r0`: genus 0 inside the open disk
/// `|z| < r0`, genus 1 outside.
pub fn balayage_genus01(mu: &ChargeDistribution, r0: f64) -> Result<BalayageResult> {
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "split radius must be positive and finite, got {r0}"
        )));
    }
    let (near, far) = mu.split_by_open_disk(r0);
    let near_swept = sweep_fixed_genus(&near, Genus::Zero)?;
    let far_swept = sweep_fixed_genus(&far, Genus::One)?;
    Ok(BalayageResult {
        result: near_swept.merged(&far_swept)?,
        genus: BalayageGenus::ZeroOne,
        split_radius: Some(r0),
        source_mass_right: right_mass(mu),
    })
}

/// Default split radius: half the smallest right-atom modulus, clamped to
/// `[1e-6, 1]`; `1` when no right atom exists.
pub fn default_split_radius(mu: &ChargeDistribution) -> f64 {
    let smallest = mu
        .atoms()
        .iter()
        .filter(|a| a.location.re > 0.0)
        .map(|a| a.location.modulus())
        .fold(f64::INFINITY, f64::min);
    (smallest / 2.0).clamp(1e-6, 1.0)
}

/// Sweep both half-planes onto the axis: genus-01 out of the right
/// half-plane, then the mirrored sweep of what remains on the left. The
/// result carries no planar atoms.
pub fn two_sided_balayage(mu: &ChargeDistribution, r0: f64) -> Result<BalayageResult> {
    let first = balayage_genus01(mu, r0)?;
    let mirrored = first.result.reflect_across_imaginary_axis();
    // Every sweep fixes the axis charge pointwise, so only the mirrored
    // former-left atoms need the second pass; feeding the axis back through
    // the split would merely re-window its terms.
    let atoms_only =
        ChargeDistribution::from_parts(mirrored.atoms().to_vec(), AxisCharge::empty())?;
    let second = balayage_genus01(&atoms_only, r0)?;
    debug_assert!(second.result.atoms().is_empty());
    // Reflecting back is a no-op: everything now lives on the axis, which the
    // mirror fixes pointwise.
    Ok(BalayageResult {
        result: ChargeDistribution::from_parts(
            Vec::new(),
            mirrored.axis().merged_with(second.result.axis())?,
        )?,
        genus: BalayageGenus::ZeroOne,
        split_radius: Some(r0),
        source_mass_right: mu
            .variation_mass(
                &crate::measure::RegionSpec::right_open_half_plane(),
                VariationMode::Total,
            )
            .expect("atomic right half-plane mass"),
    })
}

/// Independent check value for swept interval masses: quadrature of every
/// right atom's kernel over the interval (left atoms and axis mass pass
/// through a sweep, so they are not part of the swept-density comparison).
pub fn distribution_oracle(
    mu: &ChargeDistribution,
    interval: IntervalI,
    genus: Genus,
) -> Result<f64> {
    let mut total = 0.0;
    for a in mu.atoms() {
        if a.location.re > 0.0 {
            total += a.weight * quadrature_oracle(a.location, interval, genus)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_density;
    use crate::measure::{AxisKind, ComplexPoint, RegionSpec};
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn genus0_single_atom_density() {
        let mu = ChargeDistribution::from_atoms([(1.0, 0.0, 1.0)]).unwrap();
        let bal = balayage_genus0(&mu).unwrap();
        assert!(bal.result.atoms().is_empty());
        assert_eq!(bal.source_mass_right, 1.0);
        let axis = bal.result.axis();
        assert!(close(axis.density(0.0), 1.0 / PI, 1e-15));
        assert!(close(axis.density(1.0), 1.0 / (2.0 * PI), 1e-15));
        // Mass conservation for a single positive atom is exact.
        let total = bal.result.total_variation().unwrap();
        assert!(close(total, 1.0, 1e-12));
        // Interval mass matches the closed-form harmonic measure.
        let f1 = bal.result.axis_distribution(AxisKind::Imaginary, 1.0).unwrap();
        let fm1 = bal.result.axis_distribution(AxisKind::Imaginary, -1.0).unwrap();
        assert!(close(f1 - fm1, 0.5, 1e-14));
    }

    #[test]
    fn left_halfplane_mass_is_fixed() {
        let mu = ChargeDistribution::from_atoms([(-2.0, 5.0, -3.0)]).unwrap();
        let bal = balayage_genus0(&mu).unwrap();
        assert_eq!(bal.result, mu);
        assert_eq!(bal.source_mass_right, 0.0);
        let bal1 = balayage_genus1(&mu).unwrap();
        assert_eq!(bal1.result, mu);
    }

    #[test]
    fn mixed_measure_variation_bookkeeping() {
        let mu = ChargeDistribution::from_atoms([(3.0, -2.0, 2.0), (-1.0, 1.0, -1.0)]).unwrap();
        let bal = balayage_genus0(&mu).unwrap();
        // One atom swept (positive), one kept: total variation preserved here.
        let total = bal.result.total_variation().unwrap();
        assert!(close(total, 3.0, 1e-12));
        assert_eq!(bal.result.atoms().len(), 1);
        assert_eq!(bal.result.atoms()[0].weight, -1.0);
    }

    #[test]
    fn genus1_interval_charge_matches_kernel() {
        let mu = ChargeDistribution::from_atoms([(1.0, 0.0, 1.0)]).unwrap();
        let bal = balayage_genus1(&mu).unwrap();
        let f1 = bal.result.axis_distribution(AxisKind::Imaginary, 1.0).unwrap();
        let fm1 = bal.result.axis_distribution(AxisKind::Imaginary, -1.0).unwrap();
        assert!(close(f1 - fm1, 0.5 - 2.0 / PI, 1e-14));
    }

    #[test]
    fn axis_atoms_pass_through() {
        let mu = ChargeDistribution::from_atoms([(0.0, 3.0, 5.0), (2.0, 0.0, 1.0)]).unwrap();
        let bal = balayage_genus1(&mu).unwrap();
        assert_eq!(bal.result.axis().atoms().len(), 1);
        assert_eq!(bal.result.axis().atoms()[0].weight, 5.0);
    }

    #[test]
    fn genus1_rejects_origin_mass() {
        let mu = ChargeDistribution::from_atoms([(0.0, 0.0, 1.0)]).unwrap();
        assert!(matches!(
            balayage_genus1(&mu),
            Err(Error::Genus1Ineligible { .. })
        ));
        let near = ChargeDistribution::from_atoms([(1e-13, 0.0, 1.0)]).unwrap();
        assert!(matches!(
            balayage_genus1(&near),
            Err(Error::Genus1Ineligible { .. })
        ));
        // Genus 0 and genus 01 both handle the same measures fine.
        assert!(balayage_genus0(&mu).is_ok());
        assert!(balayage_genus01(&mu, 1.0).is_ok());
    }

    #[test]
    fn genus01_mixes_kernels_by_radius() {
        let mu = ChargeDistribution::from_atoms([(0.5, 0.0, 1.0), (4.0, 0.0, 1.0)]).unwrap();
        let bal = balayage_genus01(&mu, 1.0).unwrap();
        assert_eq!(bal.split_radius, Some(1.0));
        for y in [0.0, 1.0, -2.0, 7.5] {
            let want = kernel_density(ComplexPoint::new(0.5, 0.0), y, Genus::Zero).unwrap()
                + kernel_density(ComplexPoint::new(4.0, 0.0), y, Genus::One).unwrap();
            assert!(close(bal.result.axis().density(y), want, 1e-15));
        }
    }

    #[test]
    fn genus01_equals_genus1_when_disk_is_empty() {
        let mu = ChargeDistribution::from_atoms([(2.0, 1.0, 1.0), (0.0, 3.0, 1.0)]).unwrap();
        let b01 = balayage_genus01(&mu, 1.0).unwrap();
        let b1 = balayage_genus1(&mu).unwrap();
        for y in [-5.0, -1.0, 0.0, 0.5, 2.0, 10.0] {
            assert!(close(b01.result.axis().density(y), b1.result.axis().density(y), 1e-12));
        }
        assert_eq!(b01.result.axis().atoms(), b1.result.axis().atoms());
    }

    #[test]
    fn default_split_radius_clamps() {
        let mu = ChargeDistribution::from_atoms([(4.0, 0.0, 1.0)]).unwrap();
        assert_eq!(default_split_radius(&mu), 1.0);
        let tiny = ChargeDistribution::from_atoms([(1e-9, 0.0, 1.0)]).unwrap();
        assert_eq!(default_split_radius(&tiny), 1e-6);
        let mid = ChargeDistribution::from_atoms([(0.5, 0.0, 1.0)]).unwrap();
        assert_eq!(default_split_radius(&mid), 0.25);
        assert_eq!(default_split_radius(&ChargeDistribution::empty()), 1.0);
    }

    #[test]
    fn empty_measure_sweeps_to_empty() {
        let bal = balayage_genus0(&ChargeDistribution::empty()).unwrap();
        assert!(bal.result.is_empty());
        assert_eq!(bal.source_mass_right, 0.0);
    }

    #[test]
    fn two_sided_matches_one_sided_for_right_measures() {
        let mu = ChargeDistribution::from_atoms([(1.0, 1.0, 1.0)]).unwrap();
        let two = two_sided_balayage(&mu, 0.5).unwrap();
        let one = balayage_genus01(&mu, 0.5).unwrap();
        assert_eq!(two.result, one.result);
    }

    #[test]
    fn two_sided_symmetric_pair() {
        // Mirror-symmetric atoms sweep to twice the one-atom kernel density.
        let mu = ChargeDistribution::from_atoms([(1.0, 0.0, 1.0), (-1.0, 0.0, 1.0)]).unwrap();
        let two = two_sided_balayage(&mu, 0.5).unwrap();
        assert!(two.result.atoms().is_empty());
        for y in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let want = 2.0 * kernel_density(ComplexPoint::new(1.0, 0.0), y, Genus::One).unwrap();
            assert!(close(two.result.axis().density(y), want, 1e-15));
        }
    }

    #[test]
    fn two_sided_commutes_with_mirror() {
        let mu = ChargeDistribution::from_atoms([(1.5, -2.0, 1.0), (-3.0, 1.0, -0.5)]).unwrap();
        let direct = two_sided_balayage(&mu, 0.75).unwrap();
        let mirrored = two_sided_balayage(&mu.reflect_across_imaginary_axis(), 0.75).unwrap();
        for y in [-4.0, -0.5, 0.0, 1.0, 3.0] {
            assert!(close(
                direct.result.axis().density(y),
                mirrored.result.axis().density(y),
                1e-13
            ));
        }
    }

    #[test]
    fn sweep_is_linear() {
        let mu = ChargeDistribution::from_atoms([(1.0, 2.0, 1.0)]).unwrap();
        let nu = ChargeDistribution::from_atoms([(3.0, -1.0, -0.5)]).unwrap();
        let combo = mu.scaled(2.0).unwrap().merged(&nu).unwrap();
        let swept_combo = balayage_genus1(&combo).unwrap();
        let swept_mu = balayage_genus1(&mu).unwrap();
        let swept_nu = balayage_genus1(&nu).unwrap();
        for y in [-2.0, 0.0, 0.5, 4.0] {
            let want = 2.0 * swept_mu.result.axis().density(y) + swept_nu.result.axis().density(y);
            assert!(close(swept_combo.result.axis().density(y), want, 1e-14));
        }
    }

    #[test]
    fn oracle_agrees_with_swept_distribution() {
        let mu =
            ChargeDistribution::from_atoms([(1.0, 0.5, 2.0), (0.25, -1.0, -0.75)]).unwrap();
        let interval = IntervalI::new(-2.0, 3.0).unwrap();
        let oracle = distribution_oracle(&mu, interval, Genus::Zero).unwrap();
        let bal = balayage_genus0(&mu).unwrap();
        let mass = bal
            .result
            .axis()
            .signed_interval_mass(interval.y1(), interval.y2())
            .unwrap();
        assert!(close(oracle, mass, 1e-10), "oracle {oracle} vs closed {mass}");
    }

    #[test]
    fn genus0_variation_never_grows() {
        let mu = ChargeDistribution::from_atoms([
            (1.0, 1.0, 2.0),
            (2.0, -3.0, -1.0),
            (-1.0, 0.0, 0.5),
        ])
        .unwrap();
        let bal = balayage_genus0(&mu).unwrap();
        let before = mu.total_variation().unwrap();
        let after = bal.result.total_variation().unwrap();
        assert!(after <= before + 1e-9, "variation grew: {before} -> {after}");
        // Signed mass is conserved exactly by genus-0 sweeps.
        let whole = RegionSpec::whole_plane();
        let s_before = mu.variation_mass(&whole, VariationMode::Signed).unwrap();
        let s_after = bal.result.variation_mass(&whole, VariationMode::Signed).unwrap();
        assert!(close(s_before, s_after, 1e-9));
    }
}
