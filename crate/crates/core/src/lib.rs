//! Numerical toolkit for planar charge distributions and their balayage
//! onto the imaginary axis.
//!
//! A [`ChargeDistribution`] combines finitely many weighted planar atoms
//! with an [`AxisCharge`] carrying symbolic densities and point masses on
//! the imaginary axis. The crate sweeps the right half-plane part of such a
//! distribution onto the axis ([`balayage`]), keeping closed forms for the
//! resulting densities and their first two integral transforms, and then
//! measures what the sweep preserved: radial growth ([`growth`]),
//! reciprocal-moment partial sums ([`lindelof`]), and a family of sampled
//! kernel inequalities ([`harness`]).
//!
//! Closed-form kernel evaluations are cross-checked against an adaptive
//! Gauss–Kronrod quadrature ([`quad`]) that also backs the few genuinely
//! numeric paths (mixed-sign densities, convergence integrals). All public
//! entry points are deterministic: identical inputs produce bit-identical
//! outputs, including the CSV renderings in [`report`].

pub mod balayage;
pub mod error;
pub mod grid;
pub mod growth;
pub mod harness;
pub mod kernels;
pub mod lindelof;
pub mod measure;
pub mod quad;
pub mod report;

pub use balayage::{
    balayage_genus0, balayage_genus01, balayage_genus1, default_split_radius,
    distribution_oracle, two_sided_balayage, BalayageGenus, BalayageResult,
};
pub use error::{Error, Result};
pub use growth::{
    convergence_integral, counting_at, growth_report, order_estimate, profile_of,
    type_estimate, GrowthReport, RadialProfile,
};
pub use harness::{
    check_axis_uniform_bound, check_difference_lindelof, check_kernel_bounds,
    run_theorem_check, sample_sector_measure, BoundStats, DifferenceCheck, HarnessConfig,
    KernelBoundsReport, RadiusLaw, TheoremReport, WeightLaw,
};
pub use kernels::{
    evaluate, genus1_charge, harmonic_measure, kernel_density, quadrature_oracle,
    EvalMethod, IntervalI, KernelValue,
};
pub use lindelof::{boundedness_verdict, lindelof_scan, LindelofKind, LindelofReport};
pub use measure::{
    Atom, AxisAtom, AxisCharge, AxisKind, AxisTerm, ChargeDistribution, ComplexPoint, Genus,
    MeasureFile, RegionSpec, TermShape, VariationMode,
};
pub use quad::{integrate, QuadOutcome, Tol};
