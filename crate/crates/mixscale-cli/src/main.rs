//! Command-line front end for the mixing diagnostics library.
//!
//! Exit codes: 0 success, 1 I/O error, 2 validation error, 3 internal
//! error. Numeric output uses 17 significant digits so runs are
//! reproducible and diffable; identical configurations produce
//! byte-identical CSV.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mixscale::averaging::{
    ball_average, lin_spaced_radii, log_spaced_radii, sup_ball_average, sup_average_profile,
};
use mixscale::fields::{defect_field, random_meanzero, stripe_field};
use mixscale::scales::{
    crippa_radius, geometric_mixing_scale, sg_bound_forms, sg_upper_bound,
    strong_geometric_mixing_scale, verify_crippa_implication, Kappa, ScaleReport,
};
use mixscale::spectral::sobolev_norm;
use mixscale::transport::{default_test_family, simulate, Axis, MixingTimeSeries, ShearProtocol};
use mixscale::ScalarField;

#[derive(Parser)]
#[command(
    name = "mixscale",
    version,
    about = "Mixing diagnostics for periodic scalar fields: mix-norms, geometric scales, bounds, and stirring runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a field and write it in the MIXFIELD format.
    MakeField(MakeFieldArgs),
    /// Print a homogeneous Sobolev norm of a stored field.
    Norm(NormArgs),
    /// Extract geometric and strong geometric mixing scales.
    Scales(ScalesArgs),
    /// Reproduce the two-level defect example and check its numbers.
    DefectReport(DefectReportArgs),
    /// Check the small-to-large averaging implication on a field.
    CrippaCheck(CrippaCheckArgs),
    /// Evaluate the certified mixing-radius bound.
    Bound(BoundArgs),
    /// Run an alternating sine-shear stirring simulation.
    Simulate(SimulateArgs),
}

#[derive(Args, Serialize)]
struct MakeFieldArgs {
    #[command(subcommand)]
    kind: FieldKind,
}

#[derive(Subcommand, Serialize)]
enum FieldKind {
    /// Two-level disk-on-background counterexample field (unit box).
    Defect {
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Sign stripes sign(sin(2 pi m x / lambda)).
    Stripe {
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Seeded random mean-zero field with spectral decay.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        decay: f64,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args, Serialize)]
struct NormArgs {
    #[arg(long)]
    input: PathBuf,
    /// Sobolev order; -1 is the functional mixing scale.
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Spacing {
    Linear,
    Log,
}

#[derive(Args, Serialize)]
struct RadiusScanArgs {
    /// Smallest scanned radius; defaults to the cell size.
    #[arg(long)]
    r_min: Option<f64>,
    /// Largest scanned radius; defaults to 1.05x the certification bound
    /// of the smallest kappa.
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 64)]
    r_count: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    spacing: Spacing,
}

impl RadiusScanArgs {
    fn build(&self, n: usize, side_length: f64, kappas: &[Kappa]) -> Result<Vec<f64>, CliError> {
        let r_min = self.r_min.unwrap_or(side_length / n as f64);
        let r_max = match self.r_max {
            Some(v) => v,
            None => {
                let min_kappa = kappas
                    .iter()
                    .map(|k| k.value())
                    .fold(f64::INFINITY, f64::min);
                let k = Kappa::new(min_kappa).map_err(validation)?;
                sg_upper_bound(side_length, 2, k).map_err(validation)? * 1.05
            }
        };
        let radii = match self.spacing {
            Spacing::Linear => lin_spaced_radii(r_min, r_max, self.r_count),
            Spacing::Log => log_spaced_radii(r_min, r_max, self.r_count),
        };
        radii.map_err(validation)
    }
}

#[derive(Args, Serialize)]
struct ScalesArgs {
    #[arg(long)]
    input: PathBuf,
    /// Accuracy parameters, comma separated or repeated.
    #[arg(long, value_delimiter = ',', required = true)]
    kappa: Vec<f64>,
    #[command(flatten)]
    scan: RadiusScanArgs,
    /// Optional JSON report path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DefectReportArgs {
    #[arg(long, default_value_t = 0.05)]
    epsilon: f64,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Optional JSON report path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct CrippaCheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    kappa: f64,
    /// Large radius of the implication.
    #[arg(long)]
    r: f64,
    /// Sub-radius; defaults to kappa * r / 12.
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args, Serialize)]
struct BoundArgs {
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 2)]
    d: u32,
    #[arg(long)]
    kappa: f64,
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    /// Stored initial field (alternative to --initial).
    #[arg(long, conflicts_with = "initial")]
    input: Option<PathBuf>,
    /// Built-in initial condition.
    #[arg(long, value_enum)]
    initial: Option<InitialKind>,
    #[arg(long, default_value_t = 512)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Stripe mode of the built-in stripe initial condition.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Seed of the built-in random initial condition.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Spectral decay of the built-in random initial condition.
    #[arg(long, default_value_t = 1.0)]
    decay: f64,

    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Spatial mode of the shear profile.
    #[arg(long, default_value_t = 1)]
    shear_mode: u32,
    #[arg(long, default_value_t = 8)]
    phases: usize,
    /// First phase axis.
    #[arg(long, value_enum, default_value_t = FirstAxis::Horizontal)]
    first_axis: FirstAxis,
    /// Clamp interpolation overshoot.
    #[arg(long)]
    clamp: bool,

    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1])]
    kappa: Vec<f64>,
    #[command(flatten)]
    scan: RadiusScanArgs,

    /// CSV output path; stdout when omitted and no JSON path is given.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum InitialKind {
    Stripe,
    Random,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FirstAxis {
    Horizontal,
    Vertical,
}

/// CLI failure with its exit code.
struct CliError {
    code: i32,
    message: String,
}

fn validation(err: mixscale::Error) -> CliError {
    CliError {
        code: 2,
        message: err.to_string(),
    }
}

fn internal(err: mixscale::Error) -> CliError {
    CliError {
        code: 3,
        message: err.to_string(),
    }
}

fn io_error(context: &Path, err: mixscale::Error) -> CliError {
    CliError {
        code: 1,
        message: format!("{}: {}", context.display(), err),
    }
}

fn load_field(path: &Path) -> Result<ScalarField, CliError> {
    ScalarField::load(path).map_err(|e| io_error(path, e))
}

fn store_field(field: &ScalarField, path: &Path) -> Result<(), CliError> {
    field.store(path).map_err(|e| io_error(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| io_error(path, mixscale::Error::Io(e)))
}

fn parse_kappas(raw: &[f64]) -> Result<Vec<Kappa>, CliError> {
    raw.iter()
        .map(|&v| Kappa::new(v).map_err(validation))
        .collect()
}

/// 17-significant-digit decimal float, the fixed output format.
fn fmt17(v: f64) -> String {
    format!("{:.16e}", v)
}

fn scale_summary(report: &ScaleReport) -> String {
    match report.scale {
        Some(v) => fmt17(v),
        None => "not-found".to_string(),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::MakeField(args) => cmd_make_field(args),
        Command::Norm(args) => cmd_norm(args),
        Command::Scales(args) => cmd_scales(args),
        Command::DefectReport(args) => cmd_defect_report(args),
        Command::CrippaCheck(args) => cmd_crippa_check(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Simulate(args) => cmd_simulate(args),
    }
}

fn cmd_make_field(args: MakeFieldArgs) -> Result<(), CliError> {
    match args.kind {
        FieldKind::Defect { epsilon, n, output } => {
            let d = defect_field(epsilon, n).map_err(validation)?;
            store_field(&d.field, &output)?;
            println!("wrote {} (n={}, lambda=1)", output.display(), n);
            println!("kappa={}", fmt17(d.kappa));
            println!("background={}", fmt17(d.background));
            println!("background_correction={}", fmt17(d.correction()));
            println!("disk_cells={}", d.disk_cells);
        }
        FieldKind::Stripe { m, n, lambda, output } => {
            let f = stripe_field(m, n, lambda).map_err(validation)?;
            store_field(&f, &output)?;
            println!("wrote {} (n={}, lambda={})", output.display(), n, lambda);
            println!("mean={}", fmt17(f.mean()));
        }
        FieldKind::Random {
            seed,
            decay,
            n,
            lambda,
            output,
        } => {
            let f = random_meanzero(seed, decay, n, lambda).map_err(validation)?;
            store_field(&f, &output)?;
            println!("wrote {} (n={}, lambda={})", output.display(), n, lambda);
            println!("mean={}", fmt17(f.mean()));
        }
    }
    Ok(())
}

fn cmd_norm(args: NormArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let value = sobolev_norm(&field, args.s).map_err(validation)?;
    println!("{}", fmt17(value));
    Ok(())
}

fn cmd_scales(args: ScalesArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let kappas = parse_kappas(&args.kappa)?;
    let radii = args.scan.build(field.n(), field.side_length(), &kappas)?;
    let profile = sup_average_profile(&field, &radii).map_err(internal)?;

    #[derive(Serialize)]
    struct ScaleRow {
        kappa: f64,
        g: Option<f64>,
        sg: Option<f64>,
        sg_certified: bool,
        held_at_max: bool,
    }
    let mut rows = Vec::new();
    for &kappa in &kappas {
        let g = geometric_mixing_scale(&profile, kappa).map_err(validation)?;
        let sg = strong_geometric_mixing_scale(&profile, kappa).map_err(validation)?;
        println!(
            "kappa={} G={} SG={} certified={} held_at_max={}",
            kappa,
            scale_summary(&g),
            scale_summary(&sg),
            sg.certified,
            sg.held_at_max
        );
        rows.push(ScaleRow {
            kappa: kappa.value(),
            g: g.scale,
            sg: sg.scale,
            sg_certified: sg.certified,
            held_at_max: sg.held_at_max,
        });
    }
    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "metadata": { "version": env!("CARGO_PKG_VERSION"), "config": &args },
            "radii": radii,
            "profile": profile.values(),
            "sup_norm": profile.sup_norm(),
            "scales": rows,
        });
        write_text(path, &serde_json::to_string_pretty(&doc).unwrap())?;
    }
    Ok(())
}

fn cmd_defect_report(args: DefectReportArgs) -> Result<(), CliError> {
    let d = defect_field(args.epsilon, args.n).map_err(validation)?;
    let f_half = sup_ball_average(&d.field, 0.5).map_err(internal)?;
    let avg55 = ball_average(&d.field, 0.55).map_err(internal)?;
    let at_point = avg55.value_at(1.0, 0.5);
    let threshold = d.kappa * d.field.sup_norm();
    let violations = avg55
        .values()
        .iter()
        .filter(|v| v.abs() > threshold)
        .count();

    let half_ok = f_half <= 1.02 * d.kappa;
    let point_ok = (at_point - 0.0087).abs() <= 0.03 * 0.0087;
    let measure_ok = violations >= 10;
    let all_ok = half_ok && point_ok && measure_ok;
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };

    println!("defect field: epsilon={} n={}", args.epsilon, args.n);
    println!("kappa                = {}", fmt17(d.kappa));
    println!("background           = {}", fmt17(d.background));
    println!("background_nominal   = {}", fmt17(d.nominal_background));
    println!("sup_norm             = {}", fmt17(d.field.sup_norm()));
    println!(
        "F(0.5)               = {}  <= 1.02*kappa: {}",
        fmt17(f_half),
        verdict(half_ok)
    );
    println!(
        "A_0.55 at (1, 1/2)   = {}  vs 0.0087 (3%): {}",
        fmt17(at_point),
        verdict(point_ok)
    );
    println!(
        "violating cells      = {}  >= 10: {}",
        violations,
        verdict(measure_ok)
    );
    println!("overall: {}", verdict(all_ok));
    if !all_ok {
        println!("note: resolution-insufficient (recommended n >= 1024)");
    }

    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "metadata": { "version": env!("CARGO_PKG_VERSION"), "config": &args },
            "kappa": d.kappa,
            "background": d.background,
            "background_nominal": d.nominal_background,
            "disk_cells": d.disk_cells,
            "sup_half": f_half,
            "avg_055_at_1_half": at_point,
            "violating_cells": violations,
            "checks": { "half": half_ok, "point": point_ok, "measure": measure_ok },
            "pass": all_ok,
        });
        write_text(path, &serde_json::to_string_pretty(&doc).unwrap())?;
    }
    Ok(())
}

fn cmd_crippa_check(args: CrippaCheckArgs) -> Result<(), CliError> {
    let field = load_field(&args.input)?;
    let kappa = Kappa::new(args.kappa).map_err(validation)?;
    let delta = args.delta.unwrap_or_else(|| crippa_radius(kappa, args.r));
    let rep = verify_crippa_implication(&field, kappa, args.r, delta).map_err(validation)?;
    println!("kappa={} r={} delta={}", kappa, args.r, fmt17(rep.delta));
    println!(
        "hypothesis: sup|A_delta| = {} <= (kappa/2)*sup = {} -> {}",
        fmt17(rep.delta_sup),
        fmt17(0.5 * kappa.value() * rep.sup_norm),
        rep.hypothesis_holds
    );
    println!(
        "conclusion: sup|A_r|     = {} <= kappa*sup     = {} -> {}",
        fmt17(rep.r_sup),
        fmt17(kappa.value() * rep.sup_norm),
        rep.conclusion_holds
    );
    let status = if rep.hypothesis_holds && !rep.conclusion_holds {
        "IMPLICATION VIOLATED"
    } else if rep.hypothesis_holds {
        "implication confirmed"
    } else {
        "vacuous (hypothesis does not hold)"
    };
    println!("{status}");
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> Result<(), CliError> {
    let kappa = Kappa::new(args.kappa).map_err(validation)?;
    let bound = sg_upper_bound(args.lambda, args.d, kappa).map_err(validation)?;
    println!("{}", fmt17(bound));
    if args.d == 2 {
        let (lhs, rhs) = sg_bound_forms(kappa);
        println!("form_a={} form_b={}", fmt17(lhs * args.lambda), fmt17(rhs * args.lambda));
        let coarse = 4.0 * std::f64::consts::SQRT_2 * args.lambda / kappa.value();
        println!("coarse_bound={}", fmt17(coarse));
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let start = Instant::now();
    let rho0 = match (&args.input, args.initial) {
        (Some(path), None) => load_field(path)?,
        (None, Some(InitialKind::Stripe)) => {
            stripe_field(args.m, args.n, args.lambda).map_err(validation)?
        }
        (None, Some(InitialKind::Random)) => {
            random_meanzero(args.seed, args.decay, args.n, args.lambda).map_err(validation)?
        }
        _ => {
            return Err(CliError {
                code: 2,
                message: "exactly one of --input or --initial is required".to_string(),
            })
        }
    };
    let mut protocol =
        ShearProtocol::new(args.amplitude, args.tau, args.shear_mode).map_err(validation)?;
    protocol.first_axis = match args.first_axis {
        FirstAxis::Horizontal => Axis::Horizontal,
        FirstAxis::Vertical => Axis::Vertical,
    };
    protocol.clamp = args.clamp;
    let kappas = parse_kappas(&args.kappa)?;
    let radii = args.scan.build(rho0.n(), rho0.side_length(), &kappas)?;
    let family = default_test_family();
    let series = simulate(&rho0, &protocol, args.phases, &kappas, &radii, &family)
        .map_err(validation)?;

    let csv = series.to_csv();
    match &args.csv {
        Some(path) => write_text(path, &csv)?,
        None => {
            if args.json.is_none() {
                print!("{csv}");
            }
        }
    }
    if let Some(path) = &args.json {
        write_text(path, &series_json(&series, &args, start.elapsed().as_secs_f64()))?;
    }
    Ok(())
}

/// JSON document mirroring the CSV rows plus run metadata.
fn series_json(series: &MixingTimeSeries, args: &SimulateArgs, wall: f64) -> String {
    let rows: Vec<Vec<f64>> = series
        .records
        .iter()
        .map(|rec| series.row_values(rec))
        .collect();
    let doc = serde_json::json!({
        "metadata": {
            "version": env!("CARGO_PKG_VERSION"),
            "wall_time_seconds": wall,
            "config": args,
        },
        "columns": series.column_names(),
        "radii": series.radii,
        "rows": rows,
    });
    serde_json::to_string_pretty(&doc).unwrap()
}
