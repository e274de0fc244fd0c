//! `chargesweep` — batch front-end for the balayage toolkit.
//!
//! Exit contract: 0 on success, 2 on input problems, 3 on numeric failures
//! (quadrature cap, sweep ineligibility, hypothesis violations); failures
//! print one line of `{code, message, context}` JSON on stderr. Commands
//! that produce files write them atomically and drop a `manifest.json`
//! recording the resolved parameters next to them.

mod args;
mod output;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use chargesweep_core::{
    balayage_genus0, balayage_genus01, balayage_genus1, default_split_radius, evaluate,
    growth_report, lindelof_scan, report, run_theorem_check, two_sided_balayage, AxisKind,
    BalayageResult, ChargeDistribution, EvalMethod, Genus, HarnessConfig, IntervalI,
    LindelofKind, MeasureFile, RadiusLaw, RegionSpec, TheoremReport, VariationMode, WeightLaw,
};

use args::{
    BalayageArgs, Cli, Command, GenusArg, GrowthArgs, HarnessArgs, KernelArgs, LindelofArgs,
    MethodArg, RadiusLawArg, SweepGenusArg, ValidateArgs, WeightLawArg,
};
use output::{atomic_write, CliError, RunManifest};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input) = describe(&cli.command);
    let input_owned = input.map(Path::to_path_buf);
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            e.report(name, input_owned.as_deref());
            e.exit_code()
        }
    }
}

fn describe(cmd: &Command) -> (&'static str, Option<&Path>) {
    match cmd {
        Command::Validate(a) => ("validate", Some(a.input.as_path())),
        Command::Kernel(_) => ("kernel", None),
        Command::Balayage(a) => ("balayage", Some(a.input.as_path())),
        Command::Growth(a) => ("growth", Some(a.input.as_path())),
        Command::Lindelof(a) => ("lindelof", Some(a.input.as_path())),
        Command::Harness(_) => ("harness", None),
    }
}

fn dispatch(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Validate(a) => cmd_validate(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Balayage(a) => cmd_balayage(a),
        Command::Growth(a) => cmd_growth(a),
        Command::Lindelof(a) => cmd_lindelof(a),
        Command::Harness(a) => cmd_harness(a),
    }
}

fn load_measure(path: &Path) -> Result<(MeasureFile, ChargeDistribution), CliError> {
    let text = fs::read_to_string(path)?;
    let file = MeasureFile::parse(&text)?;
    let mu = file.to_distribution()?;
    Ok((file, mu))
}

fn cmd_validate(a: ValidateArgs) -> Result<(), CliError> {
    let (file, mu) = load_measure(&a.input)?;
    let whole = RegionSpec::whole_plane();
    let signed = mu.variation_mass(&whole, VariationMode::Signed)?;
    let total = mu.variation_mass(&whole, VariationMode::Total)?;
    let right = mu.variation_mass(&RegionSpec::right_open_half_plane(), VariationMode::Total)?;
    println!("planar atoms: {}", mu.atoms().len());
    println!("axis atoms: {}", mu.axis().atoms().len());
    println!("signed mass: {signed}");
    println!("total variation: {total}");
    println!("right half-plane variation: {right}");
    println!("genus1 eligible: {}", file.genus1_eligible);
    if let Some(out) = a.canonical_out {
        let canonical = MeasureFile::from_distribution(&mu, file.genus1_eligible)?;
        atomic_write(&out, canonical.canonical_json().as_bytes())?;
        println!("canonical form written to {}", out.display());
    }
    Ok(())
}

fn cmd_kernel(a: KernelArgs) -> Result<(), CliError> {
    let interval = IntervalI::new(a.y1, a.y2)?;
    let genus = match a.genus {
        GenusArg::Zero => Genus::Zero,
        GenusArg::One => Genus::One,
    };
    let method = match a.method {
        MethodArg::Closed => EvalMethod::ClosedForm,
        MethodArg::Quadrature => EvalMethod::Quadrature,
    };
    let value = evaluate(a.z, interval, genus, method)?;
    println!("{}", value.value);
    Ok(())
}

#[derive(Serialize)]
struct BalayageSidecar {
    genus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    r0: Option<f64>,
    source_mass_right: f64,
    kept_planar_atoms: usize,
    axis_atoms: usize,
    window: (f64, f64),
    signed_mass_in_window: f64,
    total_variation_in_window: f64,
}

fn cmd_balayage(a: BalayageArgs) -> Result<(), CliError> {
    let (_, mu) = load_measure(&a.input)?;
    let needs_split = matches!(a.genus, SweepGenusArg::ZeroOne | SweepGenusArg::TwoSided);
    if a.r0.is_some() && !needs_split {
        return Err(CliError::Input(
            "--r0 only applies to --genus 01 or two-sided".into(),
        ));
    }
    let r0 = a.r0.unwrap_or_else(|| default_split_radius(&mu));
    let bal: BalayageResult = match a.genus {
        SweepGenusArg::Zero => balayage_genus0(&mu)?,
        SweepGenusArg::One => balayage_genus1(&mu)?,
        SweepGenusArg::ZeroOne => balayage_genus01(&mu, r0)?,
        SweepGenusArg::TwoSided => two_sided_balayage(&mu, r0)?,
    };
    let genus_name = match a.genus {
        SweepGenusArg::Zero => "0",
        SweepGenusArg::One => "1",
        SweepGenusArg::ZeroOne => "01",
        SweepGenusArg::TwoSided => "two-sided",
    };

    let mut csv = String::from("y,density,distribution\n");
    for &y in &a.ygrid.points {
        let density = bal.result.axis().density(y);
        let dist = bal.result.axis_distribution(AxisKind::Imaginary, y)?;
        csv.push_str(&format!(
            "{},{},{}\n",
            report::csv_float(y),
            report::csv_float(density),
            report::csv_float(dist)
        ));
    }

    let window = (
        *a.ygrid.points.first().expect("nonempty grid"),
        *a.ygrid.points.last().expect("nonempty grid"),
    );
    let sidecar = BalayageSidecar {
        genus: genus_name.to_string(),
        r0: bal.split_radius,
        source_mass_right: bal.source_mass_right,
        kept_planar_atoms: bal.result.atoms().len(),
        axis_atoms: bal.result.axis().atoms().len(),
        window,
        signed_mass_in_window: bal.result.axis().signed_interval_mass(window.0, window.1)?,
        total_variation_in_window: bal
            .result
            .axis()
            .total_interval_mass(window.0, window.1)?,
    };
    let mut sidecar_text = serde_json::to_string_pretty(&sidecar).expect("sidecar json");
    sidecar_text.push('\n');

    fs::create_dir_all(&a.out)?;
    atomic_write(&a.out.join("balayage.csv"), csv.as_bytes())?;
    atomic_write(&a.out.join("balayage.json"), sidecar_text.as_bytes())?;
    let mut manifest = RunManifest::new("balayage", &a.out)
        .input(&a.input)
        .param("genus", genus_name)
        .param("ygrid", &a.ygrid.raw);
    if needs_split {
        manifest = manifest.param("r0", report::csv_float(r0));
    }
    manifest.write(&a.out)?;
    println!(
        "swept {} onto the axis: {} grid rows, outputs in {}",
        a.input.display(),
        a.ygrid.points.len(),
        a.out.display()
    );
    Ok(())
}

fn cmd_growth(a: GrowthArgs) -> Result<(), CliError> {
    let (_, mu) = load_measure(&a.input)?;
    let rep = growth_report(
        &mu,
        &a.radii.points,
        a.tail_fraction,
        a.type_p,
        a.conv_p,
        a.rmin,
        a.rmax,
    )?;
    let mut csv = String::from(
        "order,type_value,type_p,tail_lo,tail_hi,convergence_value,convergence_p,diverging\n",
    );
    csv.push_str(&format!(
        "{},{},{},{},{},{},{},{}\n",
        report::csv_float(rep.order),
        report::csv_float(rep.type_value),
        report::csv_float(rep.type_p),
        report::csv_float(rep.tail_window.0),
        report::csv_float(rep.tail_window.1),
        report::csv_float(rep.convergence_value),
        rep.convergence_p,
        report::csv_flag(rep.diverging)
    ));
    fs::create_dir_all(&a.out)?;
    atomic_write(&a.out.join("growth.csv"), csv.as_bytes())?;
    RunManifest::new("growth", &a.out)
        .input(&a.input)
        .param("radii", &a.radii.raw)
        .param("tail_fraction", a.tail_fraction)
        .param("type_p", a.type_p)
        .param("conv_p", a.conv_p)
        .param("rmin", a.rmin)
        .param("rmax", a.rmax)
        .write(&a.out)?;
    println!(
        "order {:.6}, type {:.6} at p = {}, convergence {:.6e} (diverging: {})",
        rep.order, rep.type_value, rep.type_p, rep.convergence_value, rep.diverging
    );
    Ok(())
}

fn cmd_lindelof(a: LindelofArgs) -> Result<(), CliError> {
    let (_, mu) = load_measure(&a.input)?;
    let kind = LindelofKind::parse(&a.kind)?;
    let radii = chargesweep_core::grid::log_grid(a.rmin, a.rmax, a.per_decade)?;
    let scan = lindelof_scan(&mu, kind, &radii)?;
    let mut csv = String::from("r,partial,sup_so_far\n");
    let mut sup = 0.0f64;
    for (r, p) in scan.radii.iter().zip(&scan.partial_values) {
        sup = sup.max(*p);
        csv.push_str(&format!(
            "{},{},{}\n",
            report::csv_float(*r),
            report::csv_float(*p),
            report::csv_float(sup)
        ));
    }
    fs::create_dir_all(&a.out)?;
    atomic_write(&a.out.join("lindelof.csv"), csv.as_bytes())?;
    RunManifest::new("lindelof", &a.out)
        .input(&a.input)
        .param("kind", kind.name())
        .param("rmin", a.rmin)
        .param("rmax", a.rmax)
        .param("per_decade", a.per_decade)
        .write(&a.out)?;
    println!(
        "{} scan over [{}, {}]: sup {:.6e}, trend slope {:.3e}",
        kind.name(),
        a.rmin,
        a.rmax,
        scan.sup_value,
        scan.trend_slope
    );
    Ok(())
}

#[derive(Serialize)]
struct HarnessSummary {
    base_seed: u64,
    seeds: u64,
    all_pass: bool,
    pass_difference: usize,
    pass_axis_re: usize,
    pass_axis_window: usize,
    pass_order: usize,
    pass_type: usize,
    max_c_hat: f64,
    max_diff_im_sup: f64,
    max_axis_window_sup: f64,
}

fn cmd_harness(a: HarnessArgs) -> Result<(), CliError> {
    if a.seeds == 0 {
        return Err(CliError::Input("--seeds must be at least 1".into()));
    }
    let radius_law = match a.radius_law {
        RadiusLawArg::Geometric => RadiusLaw::Geometric { ratio: a.ratio },
        RadiusLawArg::UniformLog => RadiusLaw::UniformLog { r_min: a.rmin, r_max: a.rmax },
    };
    let weight_law = match a.weight_law {
        WeightLawArg::Alternating => WeightLaw::Alternating,
        WeightLawArg::RandomSign => WeightLaw::RandomSign { scale: a.scale },
    };
    let mut csv = String::from(TheoremReport::csv_header());
    csv.push('\n');
    let mut reports: Vec<TheoremReport> = Vec::with_capacity(a.seeds as usize);
    for seed in a.seed..a.seed + a.seeds {
        let cfg = HarnessConfig {
            seed,
            n_atoms: a.n_atoms,
            sector_a: a.a,
            d: a.d,
            radius_law,
            weight_law,
            ..HarnessConfig::default()
        };
        let rep = run_theorem_check(&cfg)?;
        csv.push_str(&rep.csv_row());
        csv.push('\n');
        reports.push(rep);
    }
    let count = |f: fn(&TheoremReport) -> bool| reports.iter().filter(|r| f(r)).count();
    let maxed = |f: fn(&TheoremReport) -> f64| {
        reports.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
    };
    let summary = HarnessSummary {
        base_seed: a.seed,
        seeds: a.seeds,
        all_pass: reports.iter().all(TheoremReport::all_pass),
        pass_difference: count(|r| r.pass_difference),
        pass_axis_re: count(|r| r.pass_axis_re),
        pass_axis_window: count(|r| r.pass_axis_window),
        pass_order: count(|r| r.pass_order),
        pass_type: count(|r| r.pass_type),
        max_c_hat: maxed(|r| r.c_hat),
        max_diff_im_sup: maxed(|r| r.diff_im_sup),
        max_axis_window_sup: maxed(|r| r.axis_window_sup),
    };
    let mut summary_text = serde_json::to_string_pretty(&summary).expect("summary json");
    summary_text.push('\n');

    fs::create_dir_all(&a.out)?;
    atomic_write(&a.out.join("harness.csv"), csv.as_bytes())?;
    atomic_write(&a.out.join("summary.json"), summary_text.as_bytes())?;
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    params.insert("seeds".into(), a.seeds.to_string());
    params.insert("n_atoms".into(), a.n_atoms.to_string());
    params.insert("a".into(), a.a.to_string());
    params.insert("d".into(), a.d.to_string());
    match radius_law {
        RadiusLaw::Geometric { ratio } => {
            params.insert("radius_law".into(), "geometric".into());
            params.insert("ratio".into(), ratio.to_string());
        }
        RadiusLaw::UniformLog { r_min, r_max } => {
            params.insert("radius_law".into(), "uniform-log".into());
            params.insert("rmin".into(), r_min.to_string());
            params.insert("rmax".into(), r_max.to_string());
        }
    }
    match weight_law {
        WeightLaw::Alternating => {
            params.insert("weight_law".into(), "alternating".into());
        }
        WeightLaw::RandomSign { scale } => {
            params.insert("weight_law".into(), "random-sign".into());
            params.insert("scale".into(), scale.to_string());
        }
    }
    let mut manifest = RunManifest::new("harness", &a.out).seed(a.seed);
    manifest.params = params;
    manifest.write(&a.out)?;
    println!(
        "{} seed(s) from {}: all_pass = {}, outputs in {}",
        a.seeds,
        a.seed,
        summary.all_pass,
        a.out.display()
    );
    Ok(())
}
