//! Tabulate the closed-form witnesses for real-axis input (theta = pi/2),
//! where squeezing persists while second-order bunching alternates.
//! These are the printed expressions as given; `lambda_scaling` shows which
//! of them track the exact dynamics.
//!
//! cargo run --example closed_forms

use std::f64::consts::{FRAC_PI_2, TAU};

use quartic_light::perturbative::closed::{
    hoa_witness_d, mean_photon_number, squeezing_witness_f_special, ClosedFormInputs,
};

fn main() -> quartic_light::Result<()> {
    let base = ClosedFormInputs::new(1.0, FRAC_PI_2, 1e-2, 0.0)?;
    println!(
        "{:>6} {:>12} {:>13} {:>13} {:>13} {:>13}",
        "t", "<N>", "f", "d1", "d2", "d3"
    );
    for k in 0..=16 {
        let p = base.with_t(TAU * k as f64 / 16.0);
        println!(
            "{:>6.3} {:>12.8} {:>+13.4e} {:>+13.4e} {:>+13.4e} {:>+13.4e}",
            p.t,
            mean_photon_number(&p),
            squeezing_witness_f_special(&p),
            hoa_witness_d(1, &p)?,
            hoa_witness_d(2, &p)?,
            hoa_witness_d(3, &p)?,
        );
    }

    // On the coherence locus t = 2 theta every d(l) vanishes.
    let theta = 0.4;
    let p = ClosedFormInputs::new(1.2, theta, 1e-2, 2.0 * theta)?;
    for l in 1..=3 {
        println!("d{l} at t = 2 theta: {:e}", hoa_witness_d(l, &p)?);
    }
    Ok(())
}
