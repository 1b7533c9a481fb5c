//! Evaluate the nonclassicality criteria on a few reference states: a
//! coherent state sits on the boundary, a number state is antibunched at
//! every order, and a weakly evolved state lands on either side.
//!
//! cargo run --example criteria

use num_complex::Complex64;
use quartic_light::criteria::{
    antibunching_second_order, ba_an_a, hillery_squeezing, hoa_d_from_moments, lee_r,
    quadrature_squeezing, EvaluationPath,
};
use quartic_light::dynamics::{ExactEvolution, MomentSet, STANDARD_MONOMIALS};
use quartic_light::fock::{coherent_state, FockVector, ModelParams};

fn report(label: &str, m: &MomentSet, path: EvaluationPath) -> quartic_light::Result<()> {
    println!("-- {label}");
    for r in [
        quadrature_squeezing(m, path)?,
        hillery_squeezing(m, path)?,
        antibunching_second_order(m, path)?,
    ] {
        println!(
            "  {:<13} {:+.6e}  {}",
            r.name,
            r.value,
            r.classification.as_str()
        );
    }
    let fm = m.factorial_moments(4)?;
    for l in 2..=3 {
        let r = hoa_d_from_moments(&fm, l, path)?;
        println!(
            "  {:<13} {:+.6e}  {}",
            r.name,
            r.value,
            r.classification.as_str()
        );
    }
    match ba_an_a(&fm, 2) {
        Ok(v) => println!("  A_2           {v:+.6e}"),
        Err(e) => println!("  A_2           undefined ({e})"),
    }
    match lee_r(&fm, 2, 2) {
        Ok(v) => println!("  R(2,2)        {v:+.6e}"),
        Err(e) => println!("  R(2,2)        undefined ({e})"),
    }
    Ok(())
}

fn main() -> quartic_light::Result<()> {
    let coherent = coherent_state(Complex64::new(0.0, 1.0), 29)?;
    report(
        "coherent |alpha| = 1",
        &MomentSet::from_state(&coherent, &STANDARD_MONOMIALS),
        EvaluationPath::ExactOracle,
    )?;

    let fock = FockVector::number_state(3, 12)?;
    report(
        "number state |3>",
        &MomentSet::from_state(&fock, &STANDARD_MONOMIALS),
        EvaluationPath::ExactOracle,
    )?;

    let evo = ExactEvolution::new(&ModelParams::new(1.0, std::f64::consts::FRAC_PI_2, 1e-2)?)?;
    for t in [0.8, 2.4] {
        report(
            &format!("evolved, t = {t}"),
            &evo.moments_at(t)?,
            EvaluationPath::ExactOracle,
        )?;
    }
    Ok(())
}
