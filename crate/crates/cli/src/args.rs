//! Command-line surface: subcommands, flags, and the small value parsers
//! for complex scalars and sampling grids.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chargesweep_core::{grid, ComplexPoint};

/// Batch front-end for the chargesweep toolkit.
#[derive(Parser, Debug)]
#[command(name = "chargesweep", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a measure file and echo its mass totals.
    Validate(ValidateArgs),
    /// Evaluate a boundary kernel on one interval.
    Kernel(KernelArgs),
    /// Sweep a measure onto the imaginary axis and tabulate the result.
    Balayage(BalayageArgs),
    /// Order, type, and convergence-class estimates of a measure.
    Growth(GrowthArgs),
    /// Reciprocal-moment partial-sum scan over growing radii.
    Lindelof(LindelofArgs),
    /// Seeded end-to-end verification runs.
    Harness(HarnessArgs),
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Measure JSON file.
    pub input: PathBuf,
    /// Rewrite the measure in canonical form to this path.
    #[arg(long)]
    pub canonical_out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenusArg {
    /// Plain harmonic-measure kernel.
    #[value(name = "0")]
    Zero,
    /// First-order corrected kernel.
    #[value(name = "1")]
    One,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Closed-form arctangent expressions.
    Closed,
    /// Adaptive quadrature of the kernel density.
    Quadrature,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    /// Evaluation point as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: ComplexPoint,
    /// Lower interval endpoint (may be `-inf`).
    #[arg(long, allow_hyphen_values = true)]
    pub y1: f64,
    /// Upper interval endpoint (may be `inf`).
    #[arg(long, allow_hyphen_values = true)]
    pub y2: f64,
    /// Kernel genus.
    #[arg(long, value_enum, default_value = "0")]
    pub genus: GenusArg,
    /// Evaluation method.
    #[arg(long, value_enum, default_value = "closed")]
    pub method: MethodArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepGenusArg {
    /// Genus-0 sweep of the whole right half-plane.
    #[value(name = "0")]
    Zero,
    /// Genus-1 sweep of the whole right half-plane.
    #[value(name = "1")]
    One,
    /// Genus 0 inside the split disk, genus 1 outside.
    #[value(name = "01")]
    ZeroOne,
    /// Genus-01 sweep of both half-planes.
    #[value(name = "two-sided")]
    TwoSided,
}

#[derive(Args, Debug)]
pub struct BalayageArgs {
    /// Measure JSON file.
    pub input: PathBuf,
    /// Sweep variant.
    #[arg(long, value_enum, default_value = "01")]
    pub genus: SweepGenusArg,
    /// Split radius for genus-01 sweeps (default: half the smallest
    /// right-atom modulus, clamped to [1e-6, 1]).
    #[arg(long)]
    pub r0: Option<f64>,
    /// Axis sampling grid (`start:stop:step` or `log:start:stop:per_decade`).
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "-10:10:0.1")]
    pub ygrid: GridSpec,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct GrowthArgs {
    /// Measure JSON file.
    pub input: PathBuf,
    /// Profile radii (`start:stop:step` or `log:start:stop:per_decade`).
    #[arg(long, value_parser = parse_grid, default_value = "log:1:10000:16")]
    pub radii: GridSpec,
    /// Fraction of the largest radii used for order/type estimates.
    #[arg(long, default_value_t = 0.5)]
    pub tail_fraction: f64,
    /// Power for the type estimate.
    #[arg(long, default_value_t = 1.0)]
    pub type_p: f64,
    /// Power for the convergence-class integral.
    #[arg(long, default_value_t = 1)]
    pub conv_p: u32,
    /// Lower limit of the convergence integral.
    #[arg(long, default_value_t = 1.0)]
    pub rmin: f64,
    /// Upper limit of the convergence integral (may be `inf` for atomic
    /// measures).
    #[arg(long, default_value_t = f64::INFINITY)]
    pub rmax: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct LindelofArgs {
    /// Measure JSON file.
    pub input: PathBuf,
    /// Which part of 1/z to integrate: re, im, full, or replus.
    #[arg(long, default_value = "im")]
    pub kind: String,
    /// Smallest scan radius (>= 1).
    #[arg(long, default_value_t = 2.0)]
    pub rmin: f64,
    /// Largest scan radius.
    #[arg(long, default_value_t = 1e4)]
    pub rmax: f64,
    /// Scan radii per decade.
    #[arg(long, default_value_t = 16)]
    pub per_decade: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RadiusLawArg {
    /// Deterministic geometric modulus ladder.
    Geometric,
    /// Log-uniform random moduli.
    UniformLog,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightLawArg {
    /// Unit weights, alternating signs along the ladder.
    Alternating,
    /// Random signs and magnitudes.
    RandomSign,
}

#[derive(Args, Debug)]
pub struct HarnessArgs {
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds to run.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Atom count per instance.
    #[arg(long, default_value_t = 40)]
    pub n_atoms: usize,
    /// Sector parameter in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    /// Clearance parameter in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub d: f64,
    /// Modulus layout.
    #[arg(long, value_enum, default_value = "geometric")]
    pub radius_law: RadiusLawArg,
    /// Ladder ratio for the geometric law.
    #[arg(long, default_value_t = 1.35)]
    pub ratio: f64,
    /// Smallest modulus for the uniform-log law.
    #[arg(long, default_value_t = 2.5)]
    pub rmin: f64,
    /// Largest modulus for the uniform-log law.
    #[arg(long, default_value_t = 2.5e3)]
    pub rmax: f64,
    /// Weight layout.
    #[arg(long, value_enum, default_value = "alternating")]
    pub weight_law: WeightLawArg,
    /// Weight scale for the random-sign law.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

/// A parsed sampling grid that remembers the flag text it came from, so
/// manifests can record exactly what the user typed.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    /// Raw flag value.
    pub raw: String,
    /// Expanded sample points.
    pub points: Vec<f64>,
}

/// Parse `start:stop:step` or `log:start:stop:per_decade`.
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let points = if let Some(rest) = s.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected log:start:stop:per_decade, got {s:?}"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("stop: {e}"))?;
        let per_decade: usize = parts[2].parse().map_err(|e| format!("per_decade: {e}"))?;
        grid::log_grid(start, stop, per_decade).map_err(|e| e.to_string())?
    } else {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got {s:?}"));
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("start: {e}"))?;
        let stop: f64 = parts[1].parse().map_err(|e| format!("stop: {e}"))?;
        let step: f64 = parts[2].parse().map_err(|e| format!("step: {e}"))?;
        grid::linear_grid(start, stop, step).map_err(|e| e.to_string())?
    };
    Ok(GridSpec { raw: s.to_string(), points })
}

/// Parse a `re,im` pair.
pub fn parse_complex(s: &str) -> Result<ComplexPoint, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im — got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("re: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("im: {e}"))?;
    Ok(ComplexPoint::new(re, im))
}
