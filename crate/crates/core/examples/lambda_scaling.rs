//! Compare each first-order prediction with exact dynamics at three
//! couplings. A correct first-order expression leaves an O(lambda^2) error,
//! so its error should fall by ~100x per decade of lambda.
//!
//! cargo run --release --example lambda_scaling

use std::f64::consts::FRAC_PI_4;

use quartic_light::sweep::{
    compare_report, DimChoice, Mode, ReferenceSource, SweepSpec, TimeGrid, Witness,
};

fn spec(reference: ReferenceSource) -> SweepSpec {
    SweepSpec {
        alpha: vec![1.0],
        theta: vec![0.0, FRAC_PI_4],
        lambda: vec![1e-3, 1e-4, 1e-5],
        t_grid: TimeGrid {
            start: 0.0,
            end: std::f64::consts::TAU,
            steps: 32,
        },
        dim: DimChoice::Auto,
        mode: Mode::Compare,
        witnesses: vec![
            Witness::N,
            Witness::F,
            Witness::D1,
            Witness::D2,
            Witness::D3,
        ],
        reference,
        output_path: None,
    }
}

fn main() {
    for (label, reference) in [
        ("published closed forms", ReferenceSource::Published),
        ("first-order operator series", ReferenceSource::Series),
    ] {
        match compare_report(&spec(reference)) {
            Ok(report) => println!("== {label} ==\n{report}"),
            Err(e) => eprintln!("{label}: {e}"),
        }
    }
}
