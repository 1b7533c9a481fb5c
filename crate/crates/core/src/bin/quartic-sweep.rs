//! Sweep driver: evaluates witnesses over a parameter grid and writes CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use quartic_light::sweep::{
    convergence_check, run_sweep, write_csv, Mode, SpecOverrides, SweepError, SweepSpec,
};

#[derive(Debug, Parser)]
#[command(
    name = "quartic-sweep",
    about = "Sweep squeezing/antibunching witnesses of the quartic oscillator"
)]
struct Args {
    /// Coherent amplitude(s) |alpha|, comma separated
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Input phase(s) in radians; accepts pi/2, pi/4, 2pi, ...
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Coupling(s) lambda, comma separated
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long = "t-start", allow_hyphen_values = true)]
    t_start: Option<String>,
    #[arg(long = "t-end", allow_hyphen_values = true)]
    t_end: Option<String>,
    #[arg(long = "t-steps")]
    t_steps: Option<String>,
    /// Truncation dimension or `auto`
    #[arg(long)]
    dim: Option<String>,
    /// closed_form | exact | compare
    #[arg(long)]
    mode: Option<String>,
    /// f, d1, d2, d3, N, quadrature, hillery (repeatable)
    #[arg(long)]
    witness: Vec<String>,
    /// Source of value_cf: published | series
    #[arg(long = "closed-form")]
    closed_form: Option<String>,
    /// CSV destination (stdout if omitted)
    #[arg(long)]
    out: Option<String>,
    /// Flat `key = value` file with the same keys as the flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also re-run sampled points at twice the dimension
    #[arg(long)]
    convergence: bool,
}

fn run(args: Args) -> Result<(), SweepError> {
    let flags = SpecOverrides {
        alpha: args.alpha,
        theta: args.theta,
        lambda: args.lambda,
        t_start: args.t_start,
        t_end: args.t_end,
        t_steps: args.t_steps,
        dim: args.dim,
        mode: args.mode,
        witness: args.witness,
        closed_form: args.closed_form,
        out: args.out,
    };
    let spec = SweepSpec::resolve(args.config.as_deref(), &flags)?;
    let output = run_sweep(&spec)?;
    match &spec.output_path {
        Some(path) => {
            let file = File::create(path).map_err(|source| SweepError::Io {
                path: path.display().to_string(),
                source,
            })?;
            write_csv(&output.rows, BufWriter::new(file))?;
        }
        None => write_csv(&output.rows, io::stdout().lock())?,
    }
    let mut err = io::stderr().lock();
    let _ = write!(err, "{}", output.summary);
    if args.convergence {
        if spec.mode == Mode::ClosedForm {
            return Err(SweepError::spec(
                "convergence",
                "needs mode = exact or compare",
            ));
        }
        let report = convergence_check(&spec)?;
        let _ = write!(err, "{report}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("quartic-sweep: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
