use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qindex_cli::commands::{self, Ctx};
use qindex_cli::CliError;

#[derive(Parser)]
#[command(
    name = "qindex",
    version,
    about = "Quantum indices of real rational curves and refined tropical counts"
)]
struct Cli {
    /// Snap / quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Seed for all pseudorandom choices (ray directions, momenta, targets).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Method {
    Diagram,
    Numeric,
    Both,
    #[value(name = "2arg")]
    TwoArg,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Diagram => "diagram",
            Method::Numeric => "numeric",
            Method::Both => "both",
            Method::TwoArg => "2arg",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum PlotKind {
    Curve,
    Diagram,
}

#[derive(Subcommand)]
enum Command {
    /// Sides, normals, lattice counts of a polygon.
    Polygon {
        #[arg(long)]
        polygon: PathBuf,
    },
    /// Refined tropical count through a boundary-momenta configuration.
    Bg {
        #[arg(long)]
        polygon: Option<PathBuf>,
        #[arg(long)]
        momenta: Option<PathBuf>,
        /// Include the realized tropical curves in the report.
        #[arg(long)]
        curves: bool,
    },
    /// Check the refined identity between the signed real count and the
    /// tropical count; exit 0 iff it holds exactly.
    Identity {
        #[arg(long)]
        polygon: Option<PathBuf>,
        #[arg(long)]
        momenta: Option<PathBuf>,
    },
    /// Quantum index of a parameterized curve.
    Qindex {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Index diagram of a curve as JSON.
    Diagram {
        #[arg(long)]
        curve: PathBuf,
    },
    /// SVG figure: the Log image of the real arcs, or the index diagram.
    Plot {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, value_enum, default_value = "curve")]
        kind: PlotKind,
    },
    /// Run the full verification suite; exit 0 iff every criterion passes.
    Verify,
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if !(cli.tol > 0.0) {
        return Err(CliError::input("--tol must be positive"));
    }
    let ctx = Ctx {
        seed: cli.seed,
        tol: cli.tol,
        json_out: cli.json_out.clone(),
    };
    match cli.command {
        Command::Polygon { polygon } => commands::cmd_polygon(&ctx, &polygon).map(|_| true),
        Command::Bg {
            polygon,
            momenta,
            curves,
        } => commands::cmd_bg(&ctx, polygon.as_deref(), momenta.as_deref(), curves).map(|_| true),
        Command::Identity { polygon, momenta } => {
            commands::cmd_identity(&ctx, polygon.as_deref(), momenta.as_deref())
        }
        Command::Qindex { curve, method } => {
            commands::cmd_qindex(&ctx, &curve, method.as_str()).map(|_| true)
        }
        Command::Diagram { curve } => commands::cmd_diagram(&ctx, &curve).map(|_| true),
        Command::Plot { curve, svg, kind } => {
            let what = match kind {
                PlotKind::Curve => "curve",
                PlotKind::Diagram => "diagram",
            };
            commands::cmd_plot(&ctx, &curve, &svg, what).map(|_| true)
        }
        Command::Verify => commands::cmd_verify(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code as u8)
        }
    }
}
