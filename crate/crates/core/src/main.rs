use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use radii_lab::cli_reporter::{
    cmd_membership, cmd_plot, cmd_radius, cmd_verify_all, default_order, CommandOutput,
    MembershipArgs, PlotRange, EXIT_USAGE,
};
use radii_lab::radius_catalog::{Catalog, Params};
use radii_lab::series_core::DEFAULT_SAMPLES;
use radii_lab::Execution;

#[derive(Parser)]
#[command(
    name = "radii-lab",
    version,
    about = "Radius equations, class membership and Bohr checks"
)]
struct Cli {
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda2: f64,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
}

impl From<ParamArgs> for Params {
    fn from(p: ParamArgs) -> Self {
        Params {
            lambda: p.lambda,
            lambda2: p.lambda2,
            mu: p.mu,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Smallest root of a catalog equation, as JSON.
    Radius {
        #[arg(long)]
        eq: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Sampled defect sup, verdict and certificates for a function, as JSON.
    Membership {
        /// Catalog name, `coeffs:a2,a3,...` or `zoverf:b1,b2,...`.
        #[arg(long = "f")]
        function: String,
        #[arg(long)]
        class: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        /// Truncation order (default: RADII_LAB_ORDER or 256).
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run every verification check; exit 1 if any fails.
    VerifyAll {
        #[arg(long)]
        json: bool,
    },
    /// Write `r,value` CSV for a catalog equation.
    Plot {
        #[arg(long)]
        eq: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0.001)]
        r_min: f64,
        #[arg(long, default_value_t = 0.999)]
        r_max: f64,
        #[arg(long, default_value_t = 0.001)]
        step: f64,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CommandOutput {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let catalog = Catalog::standard();
    match cli.command {
        Command::Radius { eq, params, tol } => cmd_radius(&catalog, &eq, &params.into(), tol),
        Command::Membership {
            function,
            class,
            lambda,
            r,
            samples,
            order,
        } => {
            let order = match order.map_or_else(default_order, Ok) {
                Ok(n) => n,
                Err(m) => {
                    return CommandOutput {
                        code: EXIT_USAGE,
                        stderr: format!("error: {m}\n"),
                        ..Default::default()
                    }
                }
            };
            cmd_membership(&MembershipArgs {
                spec: &function,
                class: &class,
                lambda,
                r,
                samples,
                order,
            })
        }
        Command::VerifyAll { json } => cmd_verify_all(&catalog, json, exec),
        Command::Plot {
            eq,
            params,
            r_min,
            r_max,
            step,
            out,
        } => cmd_plot(
            &catalog,
            &eq,
            &params.into(),
            &PlotRange { r_min, r_max, step },
            out.as_deref(),
            exec,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    let out = run(cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
