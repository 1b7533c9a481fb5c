//! Evolve a coherent state under the quartic Hamiltonian by exact
//! diagonalization and watch conserved quantities and moments.
//!
//! cargo run --example exact_evolution

use std::f64::consts::FRAC_PI_4;

use quartic_light::dynamics::{interaction_moments, ExactEvolution};
use quartic_light::fock::{expectation, ModelParams};

fn main() -> quartic_light::Result<()> {
    let params = ModelParams::new(1.0, FRAC_PI_4, 1e-2)?;
    let evo = ExactEvolution::new(&params)?;
    let e0 = expectation(evo.initial_state(), evo.hamiltonian())?.re;
    println!("D = {}, <H>(0) = {e0:.12}", params.dim);
    println!("lowest levels: {:?}", &evo.energies().as_slice()[..4]);

    println!(
        "{:>6} {:>14} {:>14} {:>12}",
        "t", "<N>", "|<a_I>|", "energy drift"
    );
    for k in 0..=8 {
        let t = k as f64 * 0.75;
        let state = evo.state_at(t)?;
        let m = interaction_moments(&state);
        let e = expectation(&state.psi_t, evo.hamiltonian())?.re;
        println!(
            "{t:>6.2} {:>14.10} {:>14.10} {:>12.2e}",
            m.factorial(1)?,
            m.get(0, 1)?.norm(),
            (e - e0).abs() / e0
        );
    }

    // Doubling the truncation should change nothing visible.
    let doubled = ExactEvolution::new(&ModelParams {
        dim: 2 * params.dim,
        ..params
    })?;
    let (small, large) = (evo.moments_at(3.0)?, doubled.moments_at(3.0)?);
    let drift = small
        .iter()
        .map(|((c, a), v)| (v - large.get(c, a).unwrap()).norm())
        .fold(0.0, f64::max);
    println!("max moment change at t = 3 when D doubles: {drift:.2e}");
    Ok(())
}
