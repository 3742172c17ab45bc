//! `ooid`: command-line surface over the steady-shape library.
//!
//! Exit codes: 0 ok, 2 bad arguments, 3 not realizable, 4 flow topology
//! failure. All files are UTF-8 with LF line endings and `.` decimals;
//! identical invocations produce byte-identical output.

mod fmtnum;
mod shapefile;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ooid_core::flow::{self, FlowConfig, FlowState, HistoryRow, StopReason};
use ooid_core::local::{self, LocalParams};
use ooid_core::nonlocal::{self, NonlocalParams};
use ooid_core::{ellipse, inverse, EllipseSpec, Error};

use fmtnum::{file17, sig6};
use shapefile::{read_points, write_shape, ShapeMeta};

#[derive(Parser)]
#[command(
    name = "ooid",
    version,
    about = "Steady shapes of a nonlocal growth-abrasion-friction curvature flow"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the nonlocal steady state for physical parameters (c1, c2)
    Steady(SteadyArgs),
    /// Realize the local steady shape for (c1_hat, q)
    Local(LocalArgs),
    /// Print the critical c1_hat at a given q
    Crit {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
    },
    /// Tabulate the local-to-nonlocal parameter map over c1_hat (CSV)
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, default_value_t = 16)]
        rows: usize,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve an initial shape under the flow and emit a time series (CSV)
    Flow(FlowArgs),
    /// Forced ellipse coefficients and the steadiness residual they leave
    EllipseCheck {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        /// Number of phi samples on [0, pi/2]
        #[arg(long, default_value_t = 65)]
        phi_grid: usize,
    },
    /// Recover (c1, c2) from an observed shape file
    Recover {
        /// Input shape CSV
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct SteadyArgs {
    #[arg(long, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c3: f64,
    /// Samples per quarter arc (default from OOID_SAMPLES, else 256)
    #[arg(long)]
    samples: Option<usize>,
    /// Shape CSV path; a `.meta` sidecar is written alongside
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LocalArgs {
    #[arg(long = "c1-hat", allow_negative_numbers = true)]
    c1_hat: f64,
    #[arg(long, allow_negative_numbers = true)]
    q: f64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FlowArgs {
    /// Initial shape: `circle:R`, `ellipse:A:B`, `steady`, or a shape CSV path
    #[arg(long)]
    init: String,
    #[arg(long, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, allow_negative_numbers = true)]
    c2: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    c3: f64,
    /// Marker count (presets default to 256; file input is kept as-is)
    #[arg(long)]
    markers: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    steps: u64,
    #[arg(long, default_value_t = 1e-6)]
    stop_residual: f64,
    /// Time series CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Core(Error),
    Io(std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                Error::Domain(_)
                | Error::InvalidArgument(_)
                | Error::NonFinite { .. }
                | Error::NoZero
                | Error::NoCritical => 2,
                Error::NotRealizable { .. }
                | Error::DegenerateLimit { .. }
                | Error::Bracket { .. }
                | Error::Accuracy { .. } => 3,
                Error::Topology { .. } => 4,
                _ => 1,
            },
        }
    }
}

fn default_samples() -> usize {
    std::env::var("OOID_SAMPLES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(256)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Steady(args) => cmd_steady(args),
        Cmd::Local(args) => cmd_local(args),
        Cmd::Crit { q } => {
            let crit = local::c1_hat_crit(q)?;
            println!("c1_crit={}", sig6(crit));
            Ok(())
        }
        Cmd::Sweep { q, rows, out } => cmd_sweep(q, rows, out),
        Cmd::Flow(args) => cmd_flow(args),
        Cmd::EllipseCheck { a, b, phi_grid } => cmd_ellipse_check(a, b, phi_grid),
        Cmd::Recover { input } => cmd_recover(&input),
    }
}

fn cmd_steady(args: SteadyArgs) -> Result<(), CliError> {
    let np = NonlocalParams::with_c3(args.c1, args.c2, args.c3)?;
    let samples = args.samples.unwrap_or_else(default_samples);
    let shape = nonlocal::solve_steady(&np, samples)?;
    let max_residual = nonlocal::steady_residual(&shape, &np);
    println!("area={}", sig6(shape.area));
    println!("c1_hat={}", sig6(shape.local_params.c1_hat()));
    println!("q={}", sig6(shape.local_params.q()));
    println!("max_residual={}", sig6(max_residual));
    if let Some(path) = args.out {
        let meta = ShapeMeta::for_shape(&shape, samples);
        write_shape(&path, &shape, &meta)?;
    }
    Ok(())
}

fn cmd_local(args: LocalArgs) -> Result<(), CliError> {
    let p = LocalParams::new(args.c1_hat, args.q)?;
    let samples = args.samples.unwrap_or_else(default_samples);
    let seg = local::realize_segment(&p, samples)?;
    let shape = local::assemble_shape(&seg);
    println!("y_bar={}", sig6(seg.y_bar));
    if let Ok(y0) = local::kappa_zero(&p) {
        println!("y0={}", sig6(y0));
    }
    if let Ok(crit) = local::c1_hat_crit(args.q) {
        println!("c1_crit={}", sig6(crit));
    }
    println!("area={}", sig6(shape.area));
    println!("c1={}", sig6(p.c1_hat() / shape.area));
    println!("c2={}", sig6(p.c2_hat() / shape.area));
    if let Some(path) = args.out {
        let meta = ShapeMeta::for_shape(&shape, samples);
        write_shape(&path, &shape, &meta)?;
    }
    Ok(())
}

fn cmd_sweep(q: f64, rows: usize, out: Option<PathBuf>) -> Result<(), CliError> {
    let sweep = nonlocal::sweep(q, rows)?;
    let mut csv = String::from("c1_hat,area,c1\n");
    for row in &sweep.rows {
        let _ = writeln!(
            csv,
            "{},{},{}",
            file17(row.c1_hat),
            file17(row.area),
            file17(row.c1)
        );
    }
    emit(out.as_deref(), &csv)?;
    Ok(())
}

fn parse_flow_init(args: &FlowArgs) -> Result<FlowState, CliError> {
    let preset_markers = args.markers.unwrap_or(256);
    if let Some(r) = args.init.strip_prefix("circle:") {
        let r: f64 = r
            .parse()
            .map_err(|_| CliError::Usage(format!("bad circle radius in --init {}", args.init)))?;
        return Ok(FlowState::circle(r, preset_markers)?);
    }
    if let Some(rest) = args.init.strip_prefix("ellipse:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let (a, b) = match parts.as_slice() {
            [a, b] => (
                a.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad ellipse axis in --init {}", args.init)))?,
                b.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad ellipse axis in --init {}", args.init)))?,
            ),
            _ => {
                return Err(CliError::Usage(format!(
                    "--init ellipse takes the form ellipse:A:B, got {}",
                    args.init
                )))
            }
        };
        return Ok(FlowState::ellipse(a, b, preset_markers)?);
    }
    if args.init == "steady" {
        let np = NonlocalParams::with_c3(args.c1, args.c2, args.c3)?;
        let shape = nonlocal::solve_steady(&np, default_samples())?;
        return Ok(FlowState::from_shape(&shape, preset_markers)?);
    }
    let pts = read_points(Path::new(&args.init))?;
    let pts = match args.markers {
        Some(n) => ooid_core::geom::resample_closed(&pts, n),
        None => pts,
    };
    Ok(FlowState::new(pts)?)
}

fn render_series(history: &[HistoryRow]) -> String {
    let mut csv = String::from("step,time,area,max_residual\n");
    for row in history {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            row.step,
            file17(row.time),
            file17(row.area),
            file17(row.max_residual)
        );
    }
    csv
}

fn cmd_flow(args: FlowArgs) -> Result<(), CliError> {
    let np = NonlocalParams::with_c3(args.c1, args.c2, args.c3)?;
    let state = parse_flow_init(&args)?;
    let cfg = FlowConfig {
        max_steps: args.steps,
        stop_residual: args.stop_residual,
        ..FlowConfig::default()
    };
    let report = flow::evolve(state, &np, &cfg)?;
    let csv = render_series(&report.history);
    emit(args.out.as_deref(), &csv)?;

    let mut summary = String::new();
    let _ = writeln!(summary, "converged={}", report.converged);
    let _ = writeln!(summary, "steps={}", report.state.step_count());
    let _ = writeln!(summary, "final_area={}", sig6(report.state.area()));
    let _ = writeln!(
        summary,
        "final_residual={}",
        sig6(report.history.last().map_or(f64::NAN, |r| r.max_residual))
    );
    if args.out.is_some() {
        print!("{summary}");
    } else {
        eprint!("{summary}");
    }
    if let StopReason::Topology { step } = report.stop {
        return Err(CliError::Core(Error::Topology { step }));
    }
    Ok(())
}

fn cmd_ellipse_check(a: f64, b: f64, phi_grid: usize) -> Result<(), CliError> {
    if phi_grid < 2 {
        return Err(CliError::Usage(format!(
            "--phi-grid must be at least 2, got {phi_grid}"
        )));
    }
    let e = EllipseSpec::new(a, b)?;
    let c1 = ellipse::forced_c1(&e);
    let c2 = ellipse::forced_c2(&e);
    let max_residual = (0..phi_grid)
        .map(|k| {
            let phi = std::f64::consts::FRAC_PI_2 * k as f64 / (phi_grid - 1) as f64;
            ellipse::residual(&e, phi).map(f64::abs)
        })
        .try_fold(0.0f64, |m, r| r.map(|r| m.max(r)))?;
    println!("c1={}", sig6(c1));
    println!("c2={}", sig6(c2));
    println!("max_residual={}", sig6(max_residual));
    println!(
        "residual_quarter={}",
        sig6(ellipse::residual_quarter_form(&e))
    );
    Ok(())
}

fn cmd_recover(input: &Path) -> Result<(), CliError> {
    let pts = read_points(input)?;
    let rec = inverse::recover(&pts)?;
    println!("c1={}", sig6(rec.c1));
    println!("c2={}", sig6(rec.c2));
    println!("residual_rms={}", sig6(rec.residual_rms));
    println!("clamped={}", rec.clamped);
    println!("degenerate={}", rec.degenerate);
    println!("quality_warning={}", rec.quality_warning);
    Ok(())
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(CliError::from),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
