use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rosette_cli::commands::{
    decompose_cmd, dump_cmd, features_cmd, verify_cmd, DumpKind, Format, Reduction,
};
use rosette_cli::parse::{parse_beta, parse_grid};
use rosette_cli::render::{render, Overlay, RenderSpec};
use rosette_cli::CliResult;
use rosette_core::verification::Level;
use rosette_core::RosetteParams;

#[derive(Parser)]
#[command(
    name = "rosette",
    version,
    about = "Rosette harmonic mappings of the unit disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Rosette order, at least 3.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    n: u32,
    /// Radians, or a multiple of pi such as `pi/4` or `-2pi/5`.
    #[arg(long, default_value = "0", value_parser = parse_beta, allow_hyphen_values = true)]
    beta: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    common: Common,
    /// Radial lines by circles.
    #[arg(long, default_value = "24x16", value_parser = parse_grid)]
    grid: (usize, usize),
    /// Minimum samples per grid curve.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, default_value_t = 800)]
    width: u32,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[arg(long = "overlay", value_enum)]
    overlays: Vec<OverlayArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlayArg {
    Features,
    CuspAxes,
    FundamentalSet,
    Hypocycloid,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum DumpArg {
    Boundary,
    Radial,
}

#[derive(Subcommand)]
enum Command {
    /// Draw images of a polar grid as SVG.
    Render(RenderArgs),
    /// List cusps and nodes of the boundary.
    Features {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run the verification battery; exits nonzero if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Sample the boundary or the symmetry rays as CSV.
    Dump {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        what: DumpArg,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Render the fundamental-set tiling and print its coverage report.
    Decompose {
        #[command(flatten)]
        render: RenderArgs,
        /// Probe grid side for the coverage scan.
        #[arg(long, default_value_t = rosette_core::verification::COVERAGE_GRID)]
        probes: usize,
    },
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn params_of(common: &Common) -> CliResult<RosetteParams> {
    let params = RosetteParams::new(common.n, common.beta)?;
    if let Some(note) = Reduction::of(&params).notice() {
        eprintln!("{note}");
    }
    Ok(params)
}

fn spec_of(args: &RenderArgs) -> CliResult<RenderSpec> {
    let mut spec = RenderSpec::new(params_of(&args.common)?);
    spec.grid = args.grid;
    spec.samples_per_curve = args.samples;
    spec.width_px = args.width;
    spec.margin_frac = args.margin;
    spec.overlay = args
        .overlays
        .iter()
        .map(|o| match o {
            OverlayArg::Features => Overlay::Features,
            OverlayArg::CuspAxes => Overlay::CuspAxes,
            OverlayArg::FundamentalSet => Overlay::FundamentalSet,
            OverlayArg::Hypocycloid => Overlay::Hypocycloid,
        })
        .collect::<BTreeSet<_>>();
    Ok(spec)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Render(args) => {
            let rendered = render(&spec_of(&args)?)?;
            emit(args.common.out.as_deref(), &rendered.svg)?;
            Ok(true)
        }
        Command::Features { common, format } => {
            let text = features_cmd(&params_of(&common)?, format_of(format))?;
            emit(common.out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Verify {
            common,
            level,
            seed,
            format,
        } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let (text, ok) = verify_cmd(&params_of(&common)?, level, seed, format_of(format))?;
            emit(common.out.as_deref(), &text)?;
            Ok(ok)
        }
        Command::Dump {
            common,
            what,
            samples,
        } => {
            let kind = match what {
                DumpArg::Boundary => DumpKind::Boundary,
                DumpArg::Radial => DumpKind::Radial,
            };
            let text = dump_cmd(&params_of(&common)?, kind, samples)?;
            emit(common.out.as_deref(), &text)?;
            Ok(true)
        }
        Command::Decompose { render, probes } => {
            let (rendered, report, ok) = decompose_cmd(&spec_of(&render)?, probes)?;
            match render.common.out.as_deref() {
                Some(p) => {
                    fs::write(p, &rendered.svg)?;
                    emit(None, &report)?;
                }
                None => emit(None, &report)?,
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(rosette_cli::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
