//! Property-based invariants for measures, kernels, and sweeps.

use proptest::prelude::*;

use chargesweep_core::{
    balayage_genus0, genus1_charge, grid, harmonic_measure, lindelof_scan, report,
    ChargeDistribution, ComplexPoint, IntervalI, LindelofKind, MeasureFile, VariationMode,
};

/// Weighted planar atoms kept away from `Re z = 0` so nothing silently moves
/// onto the axis during canonicalization.
fn atom_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
    (
        (0.05f64..5.0, prop::bool::ANY),
        -8.0f64..8.0,
        (0.1f64..3.0, prop::bool::ANY),
    )
        .prop_map(|((re, flip_re), im, (w, flip_w))| {
            (
                if flip_re { -re } else { re },
                im,
                if flip_w { -w } else { w },
            )
        })
}

fn atoms_strategy(max: usize) -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
    prop::collection::vec(atom_strategy(), 1..=max)
}

/// Points strictly inside the right half-plane across six decades of modulus.
fn right_point_strategy() -> impl Strategy<Value = ComplexPoint> {
    ((-3.0f64..3.0), (-1.55f64..1.55))
        .prop_map(|(log_m, phi)| {
            let m = 10f64.powf(log_m);
            ComplexPoint::new(m * phi.cos(), m * phi.sin())
        })
}

proptest! {
    /// Jordan decomposition splits signed and total masses consistently.
    #[test]
    fn jordan_parts_are_consistent(atoms in atoms_strategy(20)) {
        let mu = ChargeDistribution::from_atoms(atoms).unwrap();
        let (pos, neg) = mu.jordan_parts();
        let region = chargesweep_core::RegionSpec::whole_plane();
        let signed = mu.variation_mass(&region, VariationMode::Signed).unwrap();
        let total = mu.variation_mass(&region, VariationMode::Total).unwrap();
        let p = pos.variation_mass(&region, VariationMode::Signed).unwrap();
        let n = neg.variation_mass(&region, VariationMode::Signed).unwrap();
        prop_assert!((signed - (p - n)).abs() <= 1e-9 * (1.0 + total));
        prop_assert!((total - (p + n)).abs() <= 1e-9 * (1.0 + total));
        // Parts are genuinely nonnegative measures.
        prop_assert!(pos.atoms().iter().all(|a| a.weight > 0.0));
        prop_assert!(neg.atoms().iter().all(|a| a.weight > 0.0));
    }

    /// Harmonic measure is a probability: values in [0, 1], additive over
    /// adjacent intervals, monotone under inclusion.
    #[test]
    fn harmonic_measure_is_a_probability(
        z in right_point_strategy(),
        a in -40.0f64..40.0,
        len1 in 0.0f64..30.0,
        len2 in 0.0f64..30.0,
    ) {
        let b = a + len1;
        let c = b + len2;
        let w_ab = harmonic_measure(z, IntervalI::new(a, b).unwrap()).unwrap();
        let w_bc = harmonic_measure(z, IntervalI::new(b, c).unwrap()).unwrap();
        let w_ac = harmonic_measure(z, IntervalI::new(a, c).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&w_ab));
        prop_assert!((0.0..=1.0).contains(&w_ac));
        prop_assert!((w_ab + w_bc - w_ac).abs() <= 1e-12);
        prop_assert!(w_ac + 1e-15 >= w_ab);
    }

    /// The genus-1 kernel obeys its quadratic smallness bound whenever the
    /// interval is short relative to the evaluation point.
    #[test]
    fn genus1_symmetric_interval_bound(
        z in right_point_strategy(),
        frac in 0.0f64..0.5,
    ) {
        let t = frac * z.modulus();
        let omega = genus1_charge(z, IntervalI::symmetric(t).unwrap()).unwrap();
        prop_assert!(omega.abs() <= 2.0 * t * t / z.norm_sqr() + 1e-12);
    }

    /// Genus-0 sweeps never create variation, and preserve the signed mass
    /// of the plane.
    #[test]
    fn genus0_sweep_contracts_variation(atoms in atoms_strategy(6)) {
        let mu = ChargeDistribution::from_atoms(atoms).unwrap();
        let swept = balayage_genus0(&mu).unwrap().result;
        let src_tv = mu.total_variation().unwrap();
        let swept_tv = swept.total_variation().unwrap();
        prop_assert!(swept_tv <= src_tv + 1e-9 * (1.0 + src_tv));
        let region = chargesweep_core::RegionSpec::whole_plane();
        let src_mass = mu.variation_mass(&region, VariationMode::Signed).unwrap();
        let swept_mass = swept.variation_mass(&region, VariationMode::Signed).unwrap();
        prop_assert!((src_mass - swept_mass).abs() <= 1e-9 * (1.0 + src_tv));
    }

    /// Scan suprema are subadditive under measure superposition.
    #[test]
    fn lindelof_sup_is_subadditive(
        a in atoms_strategy(8),
        b in atoms_strategy(8),
    ) {
        let mu = ChargeDistribution::from_atoms(a).unwrap();
        let nu = ChargeDistribution::from_atoms(b).unwrap();
        let both = mu.merged(&nu).unwrap();
        let radii: Vec<f64> = grid::log_grid(1.5, 100.0, 8).unwrap();
        let s_mu = lindelof_scan(&mu, LindelofKind::Im, &radii).unwrap().sup_value;
        let s_nu = lindelof_scan(&nu, LindelofKind::Im, &radii).unwrap().sup_value;
        let s_both = lindelof_scan(&both, LindelofKind::Im, &radii).unwrap().sup_value;
        prop_assert!(s_both <= s_mu + s_nu + 1e-12);
    }

    /// Log grids are strictly increasing and hit both endpoints.
    #[test]
    fn log_grid_shape(
        lo in 0.001f64..10.0,
        span in 1.01f64..1e4,
        per_decade in 1usize..40,
    ) {
        let hi = lo * span;
        let g = grid::log_grid(lo, hi, per_decade).unwrap();
        prop_assert_eq!(g[0], lo);
        prop_assert_eq!(*g.last().unwrap(), hi);
        prop_assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    /// CSV floats round-trip exactly through their decimal rendering.
    #[test]
    fn csv_floats_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::ZERO) {
        let rendered = report::csv_float(x);
        let back: f64 = rendered.parse().unwrap();
        prop_assert_eq!(back, x);
    }

    /// Measure files survive a serialize/parse/serialize loop untouched.
    #[test]
    fn measure_files_round_trip(atoms in atoms_strategy(10)) {
        let mu = ChargeDistribution::from_atoms(atoms).unwrap();
        let file = MeasureFile::from_distribution(&mu, true).unwrap();
        let text = file.canonical_json();
        let reparsed = MeasureFile::parse(&text).unwrap();
        prop_assert_eq!(reparsed.to_distribution().unwrap(), mu);
        prop_assert_eq!(reparsed.canonical_json(), text);
    }
}
