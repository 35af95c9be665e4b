use std::process::ExitCode;

use clap::Parser;
use levi_schur::{execute, Command, FieldSpec, OutputFormat, RunConfig, VParity};
use levi_schur_core::linalg::DEFAULT_SIZE_CAP;

/// Exact verification of the Levi-type Schur duality on enhanced tensor superspace.
#[derive(Debug, Parser)]
#[command(name = "levi-schur", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Even dimension of the natural module.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Odd dimension of the natural module.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Tensor degree.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Parity of the enhanced vector.
    #[arg(long, value_enum, default_value_t = VParity::Both)]
    vparity: VParity,
    /// `q` or `p:<odd prime>`.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Largest tensor-space dimension a command may build matrices on.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        m: cli.m,
        n: cli.n,
        r: cli.r,
        vparity: cli.vparity,
        field: cli.field,
        command: cli.command,
        output: cli.output,
        size_cap: cli.size_cap,
    };
    match execute(&cfg) {
        Ok(report) => {
            match cfg.output {
                OutputFormat::Json => println!("{}", report.render_json(true)),
                OutputFormat::Text => print!("{}", report.render_text()),
            }
            if !report.pass() {
                eprintln!("levi-schur: gated check failed");
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("levi-schur: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
