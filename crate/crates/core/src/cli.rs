//! Command-line driver: grid/operator computation, the verification battery,
//! and parameter sweeps.
//!
//! Exit codes are stable API: 0 success, 2 parse errors (bad flags, malformed
//! input files), 3 validation errors (inputs that parse but violate a
//! contract, e.g. inconsistent exponents), 4 verification-assertion failures,
//! 5 I/O failures. Every file artifact embeds the [`RunConfig`] — including
//! the seed — that produced it: grid files as a `# config:` comment, JSON and
//! CSV in a config field/comment.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{format_grid, load_grid, save_report, BoundaryPolicy, CubeFamily, GridFunction};
use crate::norms::{
    bmo_norm, characterization, lp_norm, slice_norm, CharKind, ExponentSet, SliceParams,
};
use crate::operators::{
    commutator_maximal, commutator_sharp, maximal_commutator, maximal_fast, sharp_maximal,
    OperatorParams,
};
use crate::verify::{run_suite, GeneratorSpec, ReportFile, SuiteConfig, Verdict, SCHEMA_VERSION};

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;
pub const EXIT_ASSERTION: u8 = 4;
pub const EXIT_IO: u8 = 5;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Validation(_) | Error::EmptyCubeSet { .. } => EXIT_VALIDATION,
        Error::Io { .. } => EXIT_IO,
    }
}

/// The complete, replayable description of one invocation; embedded in every
/// file artifact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub boundary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<(f64, f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<(f64, f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_scale: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quick: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<u8>,
}

impl RunConfig {
    fn new(command: &str, seed: u64, boundary: BoundaryArg) -> Self {
        RunConfig {
            command: command.to_string(),
            seed,
            boundary: boundary.policy().label().to_string(),
            input: None,
            generator: None,
            symbol: None,
            symbol_input: None,
            op: None,
            dim: None,
            n: None,
            h: None,
            alpha: None,
            exponents: None,
            slice: None,
            max_scale: None,
            out: None,
            tolerance: None,
            quick: None,
            axis: None,
            values: None,
            theorem: None,
        }
    }

    fn comment_line(&self) -> String {
        format!(
            "# config: {}",
            serde_json::to_string(self).expect("config serializes")
        )
    }
}

#[derive(Parser)]
#[command(
    name = "maxosc",
    version,
    about = "Multi-scale maximal operators, oscillation norms, and a numerical verification harness on uniform grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a grid and report norms of the result.
    Compute(ComputeArgs),
    /// Run the verification battery and summarize verdicts.
    Verify(VerifyArgs),
    /// Tabulate operator ratios and characterizations along a parameter axis.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundaryArg {
    /// Only windows fully inside the grid enter suprema.
    Interior,
    /// Windows are clipped at the grid edge and renormalized.
    Clipped,
}

impl BoundaryArg {
    fn policy(self) -> BoundaryPolicy {
        match self {
            BoundaryArg::Interior => BoundaryPolicy::InteriorOnly,
            BoundaryArg::Clipped => BoundaryPolicy::Clipped,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OpArg {
    /// Fractional maximal function M_α f (sliding-window fast path).
    Maximal,
    /// Sharp maximal function M♯ f.
    Sharp,
    /// Signed commutator [b, M_α] f = b·M_α f − M_α(b f); needs a symbol.
    CommutatorMaximal,
    /// Positive commutator M_{α,b} f (direct summation); needs a symbol.
    PositiveCommutator,
    /// Signed commutator [b, M♯] f; needs a symbol.
    CommutatorSharp,
}

impl OpArg {
    fn name(self) -> &'static str {
        match self {
            OpArg::Maximal => "maximal",
            OpArg::Sharp => "sharp",
            OpArg::CommutatorMaximal => "commutator-maximal",
            OpArg::PositiveCommutator => "positive-commutator",
            OpArg::CommutatorSharp => "commutator-sharp",
        }
    }

    fn needs_symbol(self) -> bool {
        matches!(
            self,
            OpArg::CommutatorMaximal | OpArg::PositiveCommutator | OpArg::CommutatorSharp
        )
    }
}

fn parse_exponents(s: &str) -> std::result::Result<(f64, f64, f64, f64), String> {
    let v = parse_tuple(s, 4, "p,q,r,s")?;
    Ok((v[0], v[1], v[2], v[3]))
}

fn parse_slice_params(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let v = parse_tuple(s, 3, "t,r,p")?;
    Ok((v[0], v[1], v[2]))
}

fn parse_tuple(s: &str, arity: usize, shape: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != arity {
        return Err(format!("expected {shape} ({arity} comma-separated numbers), found {}", parts.len()));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("bad number '{p}': {e}")))
        .collect()
}

/// Comma-separated numbers; the empty string is the empty list.
#[derive(Clone, Debug)]
struct ValueList(Vec<f64>);

impl FromStr for ValueList {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.trim().is_empty() {
            return Ok(ValueList(Vec::new()));
        }
        s.split(',')
            .map(str::trim)
            .map(|p| p.parse::<f64>().map_err(|e| format!("bad number '{p}': {e}")))
            .collect::<std::result::Result<Vec<f64>, String>>()
            .map(ValueList)
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Operator to apply.
    #[arg(long, value_enum)]
    op: OpArg,
    /// Input grid file (delimited text; header `<n> <h>` or `<n0> <n1> <h>`).
    #[arg(long, conflicts_with = "generator")]
    input: Option<PathBuf>,
    /// Data generator, e.g. "smooth-random:seed=3,modes=4" (see docs for the
    /// catalog); realized on a --dim/--n/--h grid.
    #[arg(long)]
    generator: Option<String>,
    /// Symbol generator for commutator operators.
    #[arg(long, conflicts_with = "symbol_input")]
    symbol: Option<String>,
    /// Symbol grid file for commutator operators.
    #[arg(long)]
    symbol_input: Option<PathBuf>,
    /// Grid dimension for generated data (1 or 2).
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Cells per axis for generated data.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Cell size for generated data (default 1/n).
    #[arg(long)]
    h: Option<f64>,
    /// Fractional order α ∈ [0, dim).
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Exponent quadruple p,q,r,s; checked for consistency with --alpha.
    #[arg(long, value_parser = parse_exponents)]
    exponents: Option<(f64, f64, f64, f64)>,
    /// Slice-norm parameters t,r,p (window scale, inner, outer exponent);
    /// adds the slice norm of the result to the sidecar.
    #[arg(long, value_parser = parse_slice_params)]
    slice: Option<(f64, f64, f64)>,
    /// Largest window side in cells (default: the full grid extent).
    #[arg(long)]
    max_scale: Option<usize>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Interior)]
    boundary: BoundaryArg,
    /// Recorded in every artifact for replay.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output grid path; norms land in `<out>.norms.json`. Without it the
    /// grid goes to standard output and no sidecar is written.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Base seed for the battery's generators.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Trimmed battery (one dimension, shorter ladders).
    #[arg(long)]
    quick: bool,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Interior)]
    boundary: BoundaryArg,
    /// Multiplier on the slack-type tolerances (0 = strictest, a fault-
    /// injection mode that must fail).
    #[arg(long, default_value_t = 1.0)]
    tolerance: f64,
    /// Write the full report file (JSON) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Parameter axis to sweep.
    #[arg(long, value_enum)]
    axis: AxisArg,
    /// Comma-separated axis values; empty gives a header-only table.
    #[arg(long, default_value = "")]
    values: ValueList,
    /// Which commutator's ratio/characterizations to tabulate:
    /// 1 = signed maximal, 2 = positive maximal, 3 = signed sharp.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
    theorem: u8,
    /// Symbol generator.
    #[arg(long, default_value = "log-singularity")]
    symbol: String,
    /// Data generator.
    #[arg(long, default_value = "indicator")]
    generator: String,
    /// Grid dimension (1 or 2).
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Cells per axis for fixed-grid axes (alpha, t).
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Cell size override for fixed-grid axes (default 1/n).
    #[arg(long)]
    h: Option<f64>,
    /// Fractional order α for non-alpha axes.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Source exponents p,q,r,s; p,q set the source slice space and r,s are
    /// validated against the base α. Default source (2,3) with derived
    /// targets.
    #[arg(long, value_parser = parse_exponents, conflicts_with = "slice")]
    exponents: Option<(f64, f64, f64, f64)>,
    /// Source slice parameters t,r,p (window scale, inner, outer).
    #[arg(long, value_parser = parse_slice_params)]
    slice: Option<(f64, f64, f64)>,
    /// Largest window side in cells (default n/4 per point).
    #[arg(long)]
    max_scale: Option<usize>,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Interior)]
    boundary: BoundaryArg,
    /// Recorded in every artifact for replay.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// CSV output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    /// Refine a unit domain: n takes each value, h = 1/n.
    Resolution,
    /// Grow the domain at unit cell size: n takes each value, h = 1.
    Domain,
    /// Sweep the fractional order on a fixed grid.
    Alpha,
    /// Sweep the slice window scale on a fixed grid.
    T,
}

impl AxisArg {
    fn name(self) -> &'static str {
        match self {
            AxisArg::Resolution => "resolution",
            AxisArg::Domain => "domain",
            AxisArg::Alpha => "alpha",
            AxisArg::T => "t",
        }
    }
}

/// Parse argv and execute; the process exit code is the stable API.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors.
            e.exit();
        }
    };
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn load_or_generate(
    input: Option<&Path>,
    generator: Option<&str>,
    dim: usize,
    n: usize,
    h: Option<f64>,
    what: &str,
) -> Result<GridFunction> {
    match (input, generator) {
        (Some(path), None) => load_grid(path),
        (None, Some(spec)) => {
            let spec: GeneratorSpec = spec.parse()?;
            let h = h.unwrap_or(1.0 / n as f64);
            spec.realize(dim, n, h)
        }
        (None, None) => Err(Error::validation(format!(
            "{what}: supply a grid file or a generator spec"
        ))),
        (Some(_), Some(_)) => Err(Error::validation(format!(
            "{what}: a grid file and a generator spec are mutually exclusive"
        ))),
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<u8> {
    let mut config = RunConfig::new("compute", args.seed, args.boundary);
    config.op = Some(args.op.name().to_string());
    config.input = args.input.as_ref().map(|p| p.display().to_string());
    config.generator = args.generator.clone();
    config.symbol = args.symbol.clone();
    config.symbol_input = args.symbol_input.as_ref().map(|p| p.display().to_string());
    config.alpha = Some(args.alpha);
    config.exponents = args.exponents;
    config.slice = args.slice;
    config.out = args.out.as_ref().map(|p| p.display().to_string());

    let data = load_or_generate(
        args.input.as_deref(),
        args.generator.as_deref(),
        args.dim,
        args.n,
        args.h,
        "data",
    )?;
    config.dim = Some(data.dim());
    config.n = Some(data.shape()[0]);
    config.h = Some(data.h());

    let symbol = if args.op.needs_symbol() {
        if args.symbol.is_none() && args.symbol_input.is_none() {
            return Err(Error::validation(format!(
                "operator {} needs --symbol or --symbol-input",
                args.op.name()
            )));
        }
        let shape = data.shape();
        if args.symbol.is_some() && data.dim() == 2 && shape[0] != shape[1] {
            return Err(Error::validation(
                "symbol generators produce square grids; use --symbol-input for this data",
            ));
        }
        Some(load_or_generate(
            args.symbol_input.as_deref(),
            args.symbol.as_deref(),
            data.dim(),
            shape[0],
            Some(data.h()),
            "symbol",
        )?)
    } else {
        if args.symbol.is_some() || args.symbol_input.is_some() {
            return Err(Error::validation(format!(
                "operator {} takes no symbol",
                args.op.name()
            )));
        }
        None
    };

    if let Some((p, q, r, s)) = args.exponents {
        ExponentSet::new(p, q, r, s, args.alpha, data.dim())?;
    }

    let max_scale = args.max_scale.unwrap_or_else(|| {
        let shape = data.shape();
        shape.iter().copied().max().unwrap_or(1)
    });
    config.max_scale = Some(max_scale);
    let family = CubeFamily::up_to(max_scale, args.boundary.policy())?;
    let params = OperatorParams::new(args.alpha, family.clone())?;

    let result = match args.op {
        OpArg::Maximal => maximal_fast(&data, &params)?,
        OpArg::Sharp => {
            if args.alpha != 0.0 {
                return Err(Error::validation("the sharp maximal function has no fractional order; use --alpha 0"));
            }
            sharp_maximal(&data, &family)?
        }
        OpArg::CommutatorMaximal => commutator_maximal(symbol.as_ref().unwrap(), &data, &params)?,
        OpArg::PositiveCommutator => maximal_commutator(symbol.as_ref().unwrap(), &data, &params)?,
        OpArg::CommutatorSharp => {
            if args.alpha != 0.0 {
                return Err(Error::validation("the sharp commutator has no fractional order; use --alpha 0"));
            }
            commutator_sharp(symbol.as_ref().unwrap(), &data, &family)?
        }
    };

    let grid_text = format_grid(&result);
    match &args.out {
        None => print!("{grid_text}"),
        Some(path) => {
            let text = format!("{}\n{}", config.comment_line(), grid_text);
            std::fs::write(path, text).map_err(|e| Error::io(path, e))?;

            let mut norms = BTreeMap::new();
            norms.insert("l1".to_string(), lp_norm(&result, 1.0)?);
            norms.insert("l2".to_string(), lp_norm(&result, 2.0)?);
            norms.insert("sup".to_string(), result.max_abs());
            norms.insert("bmo".to_string(), bmo_norm(&result, &family)?);
            if let Some((t, inner, outer)) = args.slice {
                let sp = SliceParams::new(t, inner, outer)?;
                norms.insert("slice".to_string(), slice_norm(&result, &sp)?);
                norms.insert("lp_outer".to_string(), lp_norm(&result, outer)?);
            }
            #[derive(Serialize)]
            struct NormsSidecar {
                schema_version: u32,
                config: RunConfig,
                norms: BTreeMap<String, f64>,
            }
            let sidecar = NormsSidecar {
                schema_version: SCHEMA_VERSION,
                config: config.clone(),
                norms,
            };
            let mut sidecar_path = path.as_os_str().to_owned();
            sidecar_path.push(".norms.json");
            save_report(&sidecar, PathBuf::from(sidecar_path))?;
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let mut config = RunConfig::new("verify", args.seed, args.boundary);
    config.quick = Some(args.quick);
    config.tolerance = Some(args.tolerance);
    config.out = args.out.as_ref().map(|p| p.display().to_string());
    if args.tolerance < 0.0 {
        return Err(Error::validation("tolerance scale must be >= 0"));
    }

    let suite_config = SuiteConfig {
        seed: args.seed,
        quick: args.quick,
        boundary: args.boundary.policy(),
        tol_scale: args.tolerance,
    };
    let reports = run_suite(&suite_config);

    let mut by_check: BTreeMap<&str, (usize, usize, usize, usize)> = BTreeMap::new();
    for rep in &reports {
        let entry = by_check.entry(&rep.check_id).or_default();
        entry.0 += 1;
        match &rep.verdict {
            Verdict::Pass => entry.1 += 1,
            Verdict::Fail => entry.2 += 1,
            Verdict::Vacuous(_) => entry.3 += 1,
        }
    }
    println!("{:<36} {:>5} {:>5} {:>5} {:>8}", "check", "runs", "pass", "fail", "vacuous");
    let mut totals = (0usize, 0usize, 0usize, 0usize);
    for (check, (runs, pass, fail, vac)) in &by_check {
        println!("{check:<36} {runs:>5} {pass:>5} {fail:>5} {vac:>8}");
        totals.0 += runs;
        totals.1 += pass;
        totals.2 += fail;
        totals.3 += vac;
    }
    println!(
        "{:<36} {:>5} {:>5} {:>5} {:>8}",
        "total", totals.0, totals.1, totals.2, totals.3
    );

    let mut any_fail = false;
    for rep in reports.iter().filter(|r| matches!(r.verdict, Verdict::Fail)) {
        any_fail = true;
        println!(
            "FAIL {} [{}]: {}",
            rep.check_id,
            rep.instance.label,
            rep.note.as_deref().unwrap_or("assertion failed")
        );
    }

    if let Some(path) = &args.out {
        let file = ReportFile::new(config.clone(), reports);
        save_report(&file, path)?;
    }
    Ok(if any_fail { EXIT_ASSERTION } else { 0 })
}

struct SweepPoint {
    value: f64,
    n: usize,
    h: f64,
    alpha: f64,
    t: f64,
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8> {
    let mut config = RunConfig::new("sweep", args.seed, args.boundary);
    config.axis = Some(args.axis.name().to_string());
    config.values = Some(args.values.0.clone());
    config.theorem = Some(args.theorem);
    config.symbol = Some(args.symbol.clone());
    config.generator = Some(args.generator.clone());
    config.dim = Some(args.dim);
    config.n = Some(args.n);
    config.h = args.h;
    config.alpha = Some(args.alpha);
    config.exponents = args.exponents;
    config.slice = args.slice;
    config.max_scale = args.max_scale;
    config.out = args.out.as_ref().map(|p| p.display().to_string());

    let symbol: GeneratorSpec = args.symbol.parse()?;
    let data: GeneratorSpec = args.generator.parse()?;

    // Source slice space (E_inner^outer)_t: from --slice, or from the first
    // two entries of --exponents, or the (2,3) default. A full --exponents
    // quadruple is additionally validated against the base α.
    let (base_t, src_inner, src_outer) = match (args.slice, args.exponents) {
        (Some((t, r, p)), _) => (t, r, p),
        (None, Some((p, q, r, s))) => {
            let alpha_eff = if args.theorem == 3 { 0.0 } else { args.alpha };
            ExponentSet::new(p, q, r, s, alpha_eff, args.dim)?;
            (0.25, p, q)
        }
        (None, None) => (0.25, 2.0, 3.0),
    };

    let points: Vec<SweepPoint> = args
        .values
        .0
        .iter()
        .map(|&value| -> Result<SweepPoint> {
            let integer_extent = |what: &str| -> Result<usize> {
                if value.fract() != 0.0 || value < 2.0 {
                    return Err(Error::validation(format!(
                        "{what} sweep values must be integers >= 2, got {value}"
                    )));
                }
                Ok(value as usize)
            };
            Ok(match args.axis {
                AxisArg::Resolution => {
                    let n = integer_extent("resolution")?;
                    SweepPoint { value, n, h: 1.0 / n as f64, alpha: args.alpha, t: base_t }
                }
                AxisArg::Domain => {
                    let n = integer_extent("domain")?;
                    SweepPoint { value, n, h: 1.0, alpha: args.alpha, t: base_t }
                }
                AxisArg::Alpha => SweepPoint {
                    value,
                    n: args.n,
                    h: args.h.unwrap_or(1.0 / args.n as f64),
                    alpha: value,
                    t: base_t,
                },
                AxisArg::T => SweepPoint {
                    value,
                    n: args.n,
                    h: args.h.unwrap_or(1.0 / args.n as f64),
                    alpha: args.alpha,
                    t: value,
                },
            })
        })
        .collect::<Result<_>>()?;

    let mut table = String::new();
    table.push_str(&config.comment_line());
    table.push('\n');
    table.push_str(
        "axis,value,dim,n,h,alpha,t,max_scale,source_norm,operator_norm,operator_ratio,\
         slice_characterization,mean_characterization,chi_scale\n",
    );

    for pt in &points {
        let alpha_eff = if args.theorem == 3 { 0.0 } else { pt.alpha };
        let max_scale = args.max_scale.unwrap_or((pt.n / 4).max(2));
        let family = CubeFamily::up_to(max_scale, args.boundary.policy())?;
        let exps = ExponentSet::from_source(src_inner, src_outer, alpha_eff, args.dim)?;
        let params = OperatorParams::new(alpha_eff, family.clone())?;
        let source_sp = SliceParams::new(pt.t, exps.p, exps.q)?;
        let target_sp = SliceParams::new(pt.t, exps.r, exps.s)?;

        let b = symbol.realize(args.dim, pt.n, pt.h)?;
        let f = data.realize(args.dim, pt.n, pt.h)?;
        let op = match args.theorem {
            1 => commutator_maximal(&b, &f, &params)?,
            2 => maximal_commutator(&b, &f, &params)?,
            _ => commutator_sharp(&b, &f, &family)?,
        };
        let source_norm = slice_norm(&f, &source_sp)?;
        let operator_norm = slice_norm(&op, &target_sp)?;
        let ratio = if source_norm > 0.0 {
            format!("{}", operator_norm / source_norm)
        } else {
            String::new()
        };
        let (kind3, kind4) = match args.theorem {
            1 => (CharKind::MaximalDeficitSlice, CharKind::MaximalDeficitMean),
            2 => (CharKind::OscillationSlice, CharKind::OscillationMean),
            _ => (CharKind::SharpDeficitSlicePow, CharKind::SharpDeficitMean),
        };
        let t3 = characterization(&b, kind3, &exps, pt.t, &family)?;
        let t4 = characterization(&b, kind4, &exps, pt.t, &family)?;
        let chi_scale = (max_scale as f64 * pt.h).powf(pt.alpha);
        table.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            args.axis.name(),
            pt.value,
            args.dim,
            pt.n,
            pt.h,
            pt.alpha,
            pt.t,
            max_scale,
            source_norm,
            operator_norm,
            ratio,
            t3,
            t4,
            chi_scale,
        ));
    }

    match &args.out {
        None => print!("{table}"),
        Some(path) => std::fs::write(path, table).map_err(|e| Error::io(path, e))?,
    }
    Ok(0)
}
