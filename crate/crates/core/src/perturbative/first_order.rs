//! First-order (in `lambda`) interaction-picture dynamics.
//!
//! With `U_I(t) = 1 - i W(t)`, `W(t) = int_0^t V_I(s) ds` and
//! `V_I(s) = (lambda/16)(a e^{-is} + a^dag e^{is})^4`, any operator evolves as
//! `O_I(t) = U_I^dag O U_I = O + i [W(t), O] + O(lambda^2)`.
//!
//! Two routes are provided:
//!
//! * [`a_interaction_first_order`] assembles the operator `a_I(t)` on the
//!   truncated basis; products of it reproduce moments up to `O(lambda^2)`.
//! * [`first_order_moments`] evaluates `<alpha| O + i[W, O] |alpha>` for
//!   normally ordered `O` in closed form over the coherent state, with no
//!   truncation at all.

use num_complex::Complex64;

use crate::dynamics::{MomentSet, STANDARD_MONOMIALS};
use crate::error::Result;
use crate::fock::{make_ladder_ops, ModelParams, OperatorMatrix};

/// Normal-ordered expansion of `(a + a^dag)^4` as
/// `((creation power, annihilation power), coefficient)`.
pub const QUARTIC_NORMAL_ORDER: [((u32, u32), f64); 9] = [
    ((4, 0), 1.0),
    ((3, 1), 4.0),
    ((2, 2), 6.0),
    ((1, 3), 4.0),
    ((0, 4), 1.0),
    ((2, 0), 6.0),
    ((1, 1), 12.0),
    ((0, 2), 6.0),
    ((0, 0), 3.0),
];

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `int_0^t exp(i k s) ds`
fn phase_integral(k: i32, t: f64) -> Complex64 {
    if k == 0 {
        Complex64::new(t, 0.0)
    } else {
        let k = k as f64;
        (Complex64::from_polar(1.0, k * t) - 1.0) / (I * k)
    }
}

/// `a_I(t) = a - (i lambda/8) [6t a + 6t a^dag a^2 + 6 e^{it} sin t a^dag^2 a
///   + e^{2it} sin 2t a^dag^3 + 6 e^{it} sin t a^dag + 2 e^{-it} sin t a^3]`,
/// i.e. `U_I^dag a U_I` at first order.
pub fn a_interaction_first_order(params: &ModelParams, t: f64) -> Result<OperatorMatrix> {
    params.validate()?;
    let ops = make_ladder_ops(params.dim)?;
    let (a, ad) = (&ops.a, &ops.a_dagger);
    let (s1, s2) = (t.sin(), (2.0 * t).sin());
    let e1 = Complex64::from_polar(1.0, t);
    let e2 = Complex64::from_polar(1.0, 2.0 * t);
    let em1 = Complex64::from_polar(1.0, -t);
    let real = |x: f64| Complex64::new(x, 0.0);

    let terms = [
        (a.clone(), real(6.0 * t)),
        (&ad.clone() * &a.pow(2), real(6.0 * t)),
        (&ad.pow(2) * a, e1 * 6.0 * s1),
        (ad.pow(3), e2 * s2),
        (ad.clone(), e1 * 6.0 * s1),
        (a.pow(3), em1 * 2.0 * s1),
    ];
    let mut bracket = OperatorMatrix::zeros(params.dim);
    for (op, coeff) in &terms {
        bracket = &bracket + &op.scale(*coeff);
    }
    let prefactor = -I * params.lambda / 8.0;
    Ok(a + &bracket.scale(prefactor))
}

/// Moments `<alpha| A^dag^m A^n |alpha>` with `A = a_I(t)` from
/// [`a_interaction_first_order`]. Accurate to `O(lambda^2)`.
pub fn first_order_matrix_moments(params: &ModelParams, t: f64) -> Result<MomentSet> {
    let op = a_interaction_first_order(params, t)?;
    let initial = params.initial_state()?;
    let max_power = STANDARD_MONOMIALS
        .iter()
        .map(|&(m, n)| m.max(n))
        .max()
        .unwrap_or(0);
    let mut lowered = vec![initial];
    for k in 0..max_power as usize {
        let next = lowered[k].apply(&op)?;
        lowered.push(next);
    }
    let mut set = MomentSet::new();
    for &(m, n) in &STANDARD_MONOMIALS {
        set.insert(m, n, lowered[m as usize].inner(&lowered[n as usize])?);
    }
    Ok(set)
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `<alpha| [a^dag^m a^n, a^dag^p a^q] |alpha>` via
/// `a^n a^dag^p = sum_j C(n,j) C(p,j) j! a^dag^(p-j) a^(n-j)`.
fn coherent_commutator(alpha: Complex64, (m, n): (u32, u32), (p, q): (u32, u32)) -> Complex64 {
    let conj = alpha.conj();
    let mono = |c: u32, d: u32| conj.powu(c) * alpha.powu(d);
    let mut total = Complex64::new(0.0, 0.0);
    for j in 0..=n.max(q) {
        let forward = binomial(n, j) * binomial(p, j);
        let backward = binomial(q, j) * binomial(m, j);
        if forward != 0.0 {
            total += mono(m + p - j, n + q - j) * forward * factorial(j);
        }
        if backward != 0.0 {
            total -= mono(m + p - j, n + q - j) * backward * factorial(j);
        }
    }
    total
}

/// First-order interaction-picture moment `<a_I^dag^p a_I^q>(t)` for a
/// coherent input, `alpha*^p alpha^q + i sum_k w_k(t) <[G_k, a^dag^p a^q]>`
/// where `W(t) = sum_k w_k(t) G_k` runs over [`QUARTIC_NORMAL_ORDER`].
pub fn first_order_moment(
    alpha: Complex64,
    lambda: f64,
    t: f64,
    creation: u32,
    annihilation: u32,
) -> Complex64 {
    let base = alpha.conj().powu(creation) * alpha.powu(annihilation);
    let correction: Complex64 = QUARTIC_NORMAL_ORDER
        .iter()
        .filter(|((m, n), _)| *m + *n > 0)
        .map(|&((m, n), c)| {
            let weight = phase_integral(m as i32 - n as i32, t) * (lambda / 16.0 * c);
            weight * coherent_commutator(alpha, (m, n), (creation, annihilation))
        })
        .sum();
    base + I * correction
}

/// [`first_order_moment`] over [`STANDARD_MONOMIALS`].
pub fn first_order_moments(alpha_mag: f64, theta: f64, lambda: f64, t: f64) -> MomentSet {
    let alpha = Complex64::from_polar(alpha_mag, theta);
    let mut set = MomentSet::new();
    for &(m, n) in &STANDARD_MONOMIALS {
        set.insert(m, n, first_order_moment(alpha, lambda, t, m, n));
    }
    set
}
