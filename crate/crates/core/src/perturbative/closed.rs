//! Closed-form first-order witnesses for a coherent input `|alpha| e^{i theta}`.
//!
//! Every expression is linear in `lambda`. Periodic arguments go through
//! [`sin_wrapped`]; the secular `t sin(4 theta)` contribution is evaluated
//! without wrapping because it grows with `t`.
//!
//! These reproduce the published formulas verbatim. Several of them do not
//! agree with the exact dynamics at first order (see the crate README and
//! the acceptance report); [`super::first_order_moments`] is the
//! cross-checked first-order reference.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Arguments of the closed forms: amplitude, phase, coupling and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormInputs {
    pub alpha_mag: f64,
    pub theta: f64,
    pub lambda: f64,
    pub t: f64,
}

impl ClosedFormInputs {
    pub fn new(alpha_mag: f64, theta: f64, lambda: f64, t: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be finite and nonnegative",
            });
        }
        if !alpha_mag.is_finite() || alpha_mag < 0.0 {
            return Err(Error::InvalidParameter {
                name: "alpha_mag",
                value: alpha_mag,
                reason: "must be finite and nonnegative",
            });
        }
        Ok(Self {
            alpha_mag,
            theta,
            lambda,
            t,
        })
    }

    pub fn with_t(self, t: f64) -> Self {
        Self { t, ..self }
    }

    pub fn with_lambda(self, lambda: f64) -> Self {
        Self { lambda, ..self }
    }

    fn r2(&self) -> f64 {
        self.alpha_mag * self.alpha_mag
    }

    fn r4(&self) -> f64 {
        self.r2() * self.r2()
    }
}

/// `sin(x)` with `x` reduced into `[0, 2 pi)` first.
pub fn sin_wrapped(x: f64) -> f64 {
    x.rem_euclid(TAU).sin()
}

// ---- <N(t)> ---------------------------------------------------------------

/// `2|a|^2 (2|a|^2 + 3) sin t sin(2 theta - t)`
pub fn number_term_phase(p: &ClosedFormInputs) -> f64 {
    let (r2, t, th) = (p.r2(), p.t, p.theta);
    2.0 * r2 * (2.0 * r2 + 3.0) * sin_wrapped(t) * sin_wrapped(2.0 * th - t)
}

/// `|a|^4 sin 2t sin(2(2 theta - 2t))`
pub fn number_term_double(p: &ClosedFormInputs) -> f64 {
    let (t, th) = (p.t, p.theta);
    p.r4() * sin_wrapped(2.0 * t) * sin_wrapped(2.0 * (2.0 * th - 2.0 * t))
}

/// Mean photon number `<N(t)>` to first order, as published.
pub fn mean_photon_number(p: &ClosedFormInputs) -> f64 {
    p.r2() - p.lambda / 4.0 * (number_term_phase(p) - number_term_double(p))
}

// ---- (Delta Y1)^2 ---------------------------------------------------------

/// `4|a|^2 (2|a|^2 + 3) sin t sin(2 theta - t)`
pub fn y1_term_minus(p: &ClosedFormInputs) -> f64 {
    let r2 = p.r2();
    4.0 * r2 * (2.0 * r2 + 3.0) * sin_wrapped(p.t) * sin_wrapped(2.0 * p.theta - p.t)
}

/// Secular `12 |a|^4 t sin(4 theta)`.
pub fn y1_term_secular(p: &ClosedFormInputs) -> f64 {
    12.0 * p.r4() * p.t * (4.0 * p.theta).sin()
}

/// `3(2|a|^4 + 4|a|^2 + 1) sin^2 2t`
pub fn y1_term_square(p: &ClosedFormInputs) -> f64 {
    let s = sin_wrapped(2.0 * p.t);
    3.0 * (2.0 * p.r4() + 4.0 * p.r2() + 1.0) * s * s
}

/// `12 |a|^2 (2|a|^2 + 3) sin t sin(2 theta + t)`
pub fn y1_term_plus(p: &ClosedFormInputs) -> f64 {
    let r2 = p.r2();
    12.0 * r2 * (2.0 * r2 + 3.0) * sin_wrapped(p.t) * sin_wrapped(2.0 * p.theta + p.t)
}

/// `2|a|^4 sin 2t sin(2(2 theta - 2t))`
pub fn y1_term_double(p: &ClosedFormInputs) -> f64 {
    2.0 * number_term_double(p)
}

/// Amplitude-squared quadrature variance `(Delta Y1)^2`, as published.
pub fn delta_y1_squared(p: &ClosedFormInputs) -> f64 {
    let bracket = y1_term_minus(p) - y1_term_secular(p) + y1_term_square(p)
        - y1_term_plus(p)
        - y1_term_double(p);
    2.0 * p.r2() + 1.0 - p.lambda / 4.0 * bracket
}

// ---- f = (Delta Y1)^2 - <2N + 1> -------------------------------------------

/// `4|a|^2 (2|a|^2 + 3) sin t sin(t + 2 theta)`
pub fn f_term_phase(p: &ClosedFormInputs) -> f64 {
    let r2 = p.r2();
    4.0 * r2 * (2.0 * r2 + 3.0) * sin_wrapped(p.t) * sin_wrapped(p.t + 2.0 * p.theta)
}

/// Secular `4 |a|^4 t sin(4 theta)`.
pub fn f_term_secular(p: &ClosedFormInputs) -> f64 {
    4.0 * p.r4() * p.t * (4.0 * p.theta).sin()
}

/// `(2|a|^4 + 4|a|^2 + 1) sin^2 2t`
pub fn f_term_square(p: &ClosedFormInputs) -> f64 {
    let s = sin_wrapped(2.0 * p.t);
    (2.0 * p.r4() + 4.0 * p.r2() + 1.0) * s * s
}

/// Amplitude-squared squeezing witness `f`; negative means squeezed in `Y1`.
pub fn squeezing_witness_f(p: &ClosedFormInputs) -> f64 {
    -0.75 * p.lambda * (-f_term_phase(p) - f_term_secular(p) + f_term_square(p))
}

/// `f` at `theta = pi/2`, evaluated from its own reduced expression
/// (`theta` in `p` is ignored). Never positive.
pub fn squeezing_witness_f_special(p: &ClosedFormInputs) -> f64 {
    let (r2, r4) = (p.r2(), p.r4());
    let (s1, s2) = (sin_wrapped(p.t), sin_wrapped(2.0 * p.t));
    -0.75
        * p.lambda
        * (4.0 * r2 * (2.0 * r2 + 3.0) * s1 * s1 + (2.0 * r4 + 4.0 * r2 + 1.0) * s2 * s2)
}

// ---- d(l) -----------------------------------------------------------------

/// Closed-form higher-order antibunching witness `d(l)` for `l` in `1..=3`.
/// Negative means antibunched at order `l`.
pub fn hoa_witness_d(order: usize, p: &ClosedFormInputs) -> Result<f64> {
    let (r2, r4, t, th) = (p.r2(), p.r4(), p.t, p.theta);
    let single = sin_wrapped(t - 2.0 * th) * sin_wrapped(t);
    let double = sin_wrapped(2.0 * (t - 2.0 * th)) * sin_wrapped(2.0 * t);
    match order {
        1 => Ok(0.75 * p.lambda * r2 * (2.0 * (2.0 * r2 + 1.0) * single + r2 * double)),
        2 => Ok(1.5 * p.lambda * r4 * (single + double)),
        3 => Ok(0.75 * p.lambda * r4 * double),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// `d(2)` and `d(3)` reduced at `theta = pi/2` (`theta` in `p` is ignored).
pub fn hoa_witness_d_half_pi(order: usize, p: &ClosedFormInputs) -> Result<f64> {
    let r4 = p.r4();
    let (s1, s2) = (sin_wrapped(p.t), sin_wrapped(2.0 * p.t));
    match order {
        2 => Ok(1.5 * p.lambda * r4 * (-s1 * s1 + s2 * s2)),
        3 => Ok(0.75 * p.lambda * r4 * s2 * s2),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn inputs(alpha_mag: f64, theta: f64, lambda: f64, t: f64) -> ClosedFormInputs {
        ClosedFormInputs::new(alpha_mag, theta, lambda, t).unwrap()
    }

    #[test]
    fn free_limit() {
        let p = inputs(1.3, 0.4, 0.0, 2.2);
        assert_eq!(mean_photon_number(&p), 1.3 * 1.3);
        assert_eq!(delta_y1_squared(&p), 2.0 * 1.3 * 1.3 + 1.0);
        assert_eq!(squeezing_witness_f(&p), 0.0);
        for l in 1..=3 {
            assert_eq!(hoa_witness_d(l, &p).unwrap(), 0.0);
        }
    }

    #[test]
    fn mean_number_examples() {
        for th in [0.0, 0.7, FRAC_PI_2, 2.0] {
            assert_abs_diff_eq!(
                mean_photon_number(&inputs(1.0, th, 0.01, PI)),
                1.0,
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            mean_photon_number(&inputs(1.0, FRAC_PI_4, 0.01, FRAC_PI_2)),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn variance_at_time_zero() {
        let p = inputs(1.7, 0.9, 0.05, 0.0);
        assert_eq!(delta_y1_squared(&p), 2.0 * 1.7 * 1.7 + 1.0);
    }

    #[test]
    fn f_at_half_pi() {
        let p = inputs(1.0, FRAC_PI_2, 0.01, FRAC_PI_2);
        assert_abs_diff_eq!(squeezing_witness_f(&p), -0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(squeezing_witness_f_special(&p), -0.15, epsilon = 1e-15);
        assert_eq!(squeezing_witness_f_special(&p.with_t(0.0)), 0.0);
    }

    #[test]
    fn d_examples() {
        let d1 = hoa_witness_d(1, &inputs(1.0, 0.0, 0.01, FRAC_PI_2)).unwrap();
        assert_abs_diff_eq!(d1, 0.045, epsilon = 1e-15);
        let d3 = hoa_witness_d(3, &inputs(1.0, FRAC_PI_4, 0.01, FRAC_PI_4)).unwrap();
        assert_abs_diff_eq!(d3, -0.0075, epsilon = 1e-15);
    }

    #[test]
    fn unsupported_orders() {
        let p = inputs(1.0, 0.3, 0.01, 1.0);
        assert_eq!(hoa_witness_d(0, &p), Err(Error::UnsupportedOrder(0)));
        assert_eq!(hoa_witness_d(4, &p), Err(Error::UnsupportedOrder(4)));
        assert!(hoa_witness_d_half_pi(1, &p).is_err());
        assert!(ClosedFormInputs::new(1.0, 0.0, -1e-3, 0.0).is_err());
    }

    #[test]
    fn secular_term_is_not_wrapped() {
        let p = inputs(1.0, 0.1, 0.01, 1000.0);
        assert_abs_diff_eq!(
            f_term_secular(&p),
            4.0 * 1000.0 * 0.4f64.sin(),
            epsilon = 1e-9
        );
    }

    #[test]
    fn specializations_on_grid() {
        for k in 0..1000 {
            let t = 4.0 * PI * k as f64 / 999.0;
            for mag in [0.5, 1.0, 2.0] {
                let p = inputs(mag, FRAC_PI_2, 1e-2, t);
                for l in [2, 3] {
                    let general = hoa_witness_d(l, &p).unwrap();
                    let special = hoa_witness_d_half_pi(l, &p).unwrap();
                    assert!((general - special).abs() <= 1e-15, "l={l} t={t}");
                }
                // the unwrapped secular term keeps sin(2 pi) ~ 2.4e-16
                let f = squeezing_witness_f(&p);
                let secular_scale = 3.0 * 1e-2 * mag.powi(4) * t;
                let tol = 1e-15 * (1.0 + secular_scale);
                assert!((f - squeezing_witness_f_special(&p)).abs() <= tol);
            }
        }
    }

    proptest! {
        #[test]
        fn linear_in_lambda(
            mag in 0.0f64..3.0,
            theta in -PI..PI,
            lambda in 0.0f64..0.1,
            t in 0.0f64..20.0,
        ) {
            let p = inputs(mag, theta, lambda, t);
            let q = p.with_lambda(2.0 * lambda);
            let scale = 1.0 + mag.powi(6) * (1.0 + t);
            prop_assert!((squeezing_witness_f(&q) - 2.0 * squeezing_witness_f(&p)).abs() <= 1e-15 * scale);
            for l in 1..=3 {
                let (a, b) = (hoa_witness_d(l, &p).unwrap(), hoa_witness_d(l, &q).unwrap());
                prop_assert!((b - 2.0 * a).abs() <= 1e-15 * scale);
            }
            let dn = mean_photon_number(&q) - mag * mag;
            prop_assert!((dn - 2.0 * (mean_photon_number(&p) - mag * mag)).abs() <= 1e-15 * scale);
        }

        #[test]
        fn coherence_locus(mag in 0.0f64..3.0, theta in -PI..PI, lambda in 0.0f64..0.1) {
            let p = inputs(mag, theta, lambda, 2.0 * theta);
            for l in 1..=3 {
                prop_assert_eq!(hoa_witness_d(l, &p).unwrap(), 0.0);
            }
        }

        #[test]
        fn sign_theorems(mag in 0.0f64..3.0, lambda in 0.0f64..0.1, t in 0.0f64..30.0) {
            prop_assert!(squeezing_witness_f_special(&inputs(mag, 0.0, lambda, t)) <= 0.0);
            for theta in [0.0, PI] {
                for l in 1..=3 {
                    prop_assert!(hoa_witness_d(l, &inputs(mag, theta, lambda, t)).unwrap() >= -1e-15);
                }
            }
            prop_assert!(hoa_witness_d(3, &inputs(mag, FRAC_PI_2, lambda, t)).unwrap() >= -1e-15);
        }
    }
}
