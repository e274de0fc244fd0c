//! Deterministic fixtures for the criterion benchmarks.
//!
//! The timed closures must not build their own inputs, so the constructors
//! here produce fixed measures, probe points, and harness configurations up
//! front. Everything is closed-form deterministic — no RNG — so successive
//! benchmark runs see bit-identical inputs.

use chargesweep_core::{
    Atom, AxisCharge, AxisTerm, ChargeDistribution, ComplexPoint, HarnessConfig,
};

/// A mixed measure: 24 alternating-sign atoms on two geometric rays at
/// `arg z = ±pi/3`, a uniform axis band on `(-4, 4]`, and two axis atoms.
pub fn mixed_measure() -> ChargeDistribution {
    let theta = std::f64::consts::FRAC_PI_3;
    let atoms = (0..24)
        .map(|k| {
            let modulus = 2.5 * 1.3f64.powi(k / 2);
            let side = if k % 2 == 0 { 1.0 } else { -1.0 };
            Atom {
                location: ComplexPoint::new(
                    modulus * theta.cos(),
                    side * modulus * theta.sin(),
                ),
                weight: side * (1.0 + 0.05 * (k % 5) as f64),
            }
        })
        .collect();
    let axis = AxisCharge::from_parts(
        vec![AxisTerm::uniform(0.25, -4.0, 4.0).expect("valid band")],
        vec![(1.5, 0.5), (-2.0, -0.25)],
    )
    .expect("valid axis charge");
    ChargeDistribution::from_parts(atoms, axis).expect("valid fixture measure")
}

/// `n` probe points spread over the open right half-plane on a loose spiral
/// (moduli from 0.1 upward, arguments filling `(-1.4, 1.4)`).
pub fn probe_points(n: usize) -> Vec<ComplexPoint> {
    (0..n)
        .map(|k| {
            let t = k as f64 + 0.5;
            let r = 0.2 * t;
            let side = if k % 2 == 0 { 1.0 } else { -1.0 };
            let phi = side * 1.4 * (0.618_033_988_749_895 * t).fract();
            ComplexPoint::new(r * phi.cos(), r * phi.sin())
        })
        .collect()
}

/// A harness configuration small enough to run per benchmark iteration.
pub fn small_config() -> HarnessConfig {
    HarnessConfig { n_atoms: 12, ..HarnessConfig::default() }
}
