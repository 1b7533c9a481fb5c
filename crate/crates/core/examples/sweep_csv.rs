//! Run a parameter sweep from code and stream it as CSV; the same engine
//! backs the `quartic-sweep` binary.
//!
//! cargo run --example sweep_csv > rows.csv

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io;

use quartic_light::sweep::{run_sweep, write_csv, Mode, SweepSpec, TimeGrid, Witness};

fn main() {
    let spec = SweepSpec {
        alpha: vec![0.5, 1.0],
        theta: vec![FRAC_PI_4, FRAC_PI_2],
        lambda: vec![1e-2],
        t_grid: TimeGrid {
            start: 0.0,
            end: std::f64::consts::PI,
            steps: 25,
        },
        mode: Mode::Compare,
        witnesses: vec![Witness::D1, Witness::D2, Witness::Quadrature],
        ..SweepSpec::default()
    };
    let output = match run_sweep(&spec) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("sweep failed: {e}");
            std::process::exit(e.exit_code());
        }
    };
    eprint!("{}", output.summary);
    if let Err(e) = write_csv(&output.rows, io::stdout().lock()) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
