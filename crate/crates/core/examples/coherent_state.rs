//! Build ladder operators and a coherent state in a truncated Fock space,
//! then check the properties that make the truncation trustworthy.
//!
//! cargo run --example coherent_state

use num_complex::Complex64;
use quartic_light::fock::{
    coherent_state, coherent_tail_mass, commutator_block_residual, default_dim, expectation,
    factorial_moment, make_ladder_ops,
};

fn main() -> quartic_light::Result<()> {
    let alpha = Complex64::from_polar(1.5, 0.6);
    let dim = default_dim(alpha.norm());
    println!(
        "|alpha| = {:.2}, default truncation D = {dim}",
        alpha.norm()
    );
    println!(
        "Poisson tail beyond D: {:.3e}",
        coherent_tail_mass(alpha.norm(), dim)
    );

    let ops = make_ladder_ops(dim)?;
    let (block, edge) = commutator_block_residual(&ops);
    println!("[a, a^dag] - 1 on the untruncated block: {block:.2e}");
    println!(
        "edge entry (truncation artefact, -(D-1) expected): {:.1}",
        edge.re
    );

    let psi = coherent_state(alpha, dim)?;
    let a = expectation(&psi, &ops.a)?;
    println!("<a> = {a:.6}   alpha = {alpha:.6}");
    for l in 1..=4 {
        println!(
            "<N^({l})> = {:.10}   |alpha|^{} = {:.10}",
            factorial_moment(&psi, l)?,
            2 * l,
            alpha.norm().powi(2 * l as i32)
        );
    }

    let peak = psi
        .populations()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(n, _)| n)
        .unwrap_or(0);
    println!("most probable photon number: {peak}");

    // Asking for too small a space is an error, not a silent truncation.
    match coherent_state(Complex64::new(3.0, 0.0), 15) {
        Ok(_) => println!("unexpectedly accepted D = 15 for |alpha| = 3"),
        Err(e) => println!("D = 15 for |alpha| = 3 rejected: {e}"),
    }
    Ok(())
}
