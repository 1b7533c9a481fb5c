//! Nonclassicality witnesses evaluated from moments.
//!
//! Witnesses take a [`MomentSet`] (or a list of factorial moments) rather
//! than a state, so the same code scores exact-evolution moments, the
//! first-order operator solution, and closed-form values alike.

use std::fmt;

use crate::dynamics::MomentSet;
use crate::error::{Error, Result};

/// Default half-width of the classical/nonclassical boundary band.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    Nonclassical,
    Classical,
    Boundary,
}

impl Classification {
    /// `Nonclassical` iff `value < -tol`, `Boundary` iff `|value| <= tol`.
    pub fn of(value: f64, tolerance: f64) -> Self {
        if value < -tolerance {
            Self::Nonclassical
        } else if value.abs() <= tolerance {
            Self::Boundary
        } else {
            Self::Classical
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Nonclassical => "nonclassical",
            Self::Classical => "classical",
            Self::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where the moments behind a witness value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvaluationPath {
    ClosedForm,
    ExactOracle,
    FirstOrderMatrix,
    FirstOrderSeries,
}

impl EvaluationPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::ClosedForm => "closed_form",
            Self::ExactOracle => "exact_oracle",
            Self::FirstOrderMatrix => "first_order_matrix",
            Self::FirstOrderSeries => "first_order_series",
        }
    }
}

impl fmt::Display for EvaluationPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated witness.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub name: String,
    pub value: f64,
    pub classification: Classification,
    pub tolerance: f64,
    pub path: EvaluationPath,
}

impl CriterionReport {
    pub fn new(name: impl Into<String>, value: f64, path: EvaluationPath) -> Self {
        Self::with_tolerance(name, value, BOUNDARY_TOLERANCE, path)
    }

    pub fn with_tolerance(
        name: impl Into<String>,
        value: f64,
        tolerance: f64,
        path: EvaluationPath,
    ) -> Self {
        Self {
            name: name.into(),
            value,
            classification: Classification::of(value, tolerance),
            tolerance,
            path,
        }
    }

    pub fn is_nonclassical(&self) -> bool {
        self.classification == Classification::Nonclassical
    }
}

/// `(Delta X)^2 - 1/2` for `X = (a^dag + a)/sqrt 2`.
pub fn quadrature_squeezing(moments: &MomentSet, path: EvaluationPath) -> Result<CriterionReport> {
    let a = moments.get(0, 1)?;
    let a2 = moments.get(0, 2)?;
    let n = moments.get(1, 1)?.re;
    // <X> = sqrt2 Re<a>, <X^2> = Re<a^2> + <N> + 1/2
    let variance = a2.re + n + 0.5 - 2.0 * a.re * a.re;
    Ok(CriterionReport::new("quadrature", variance - 0.5, path))
}

/// `<a^dag^2 a^2> - <a^dag a>^2`, i.e. `(Delta N)^2 - <N>`; the `l = 1`
/// member of the `d(l)` hierarchy.
pub fn antibunching_second_order(
    moments: &MomentSet,
    path: EvaluationPath,
) -> Result<CriterionReport> {
    let n = moments.factorial(1)?;
    let n2 = moments.factorial(2)?;
    Ok(CriterionReport::new("antibunching", n2 - n * n, path))
}

/// `(Delta Y1)^2` for `Y1 = (a^dag^2 + a^2)/sqrt 2`, using
/// `Y1^2 = (a^4 + a^dag^4 + 2 a^dag^2 a^2 + 4 a^dag a + 2)/2`.
pub fn delta_y1_squared_from_moments(moments: &MomentSet) -> Result<f64> {
    let a2 = moments.get(0, 2)?;
    let a4 = moments.get(0, 4)?;
    let n = moments.factorial(1)?;
    let n2 = moments.factorial(2)?;
    let y1_sq = a4.re + n2 + 2.0 * n + 1.0;
    let y1 = std::f64::consts::SQRT_2 * a2.re;
    Ok(y1_sq - y1 * y1)
}

/// Amplitude-squared squeezing: `(Delta Y1)^2 - <2N + 1>`.
pub fn hillery_squeezing(moments: &MomentSet, path: EvaluationPath) -> Result<CriterionReport> {
    let variance = delta_y1_squared_from_moments(moments)?;
    let n = moments.factorial(1)?;
    Ok(CriterionReport::new(
        "hillery",
        variance - (2.0 * n + 1.0),
        path,
    ))
}

fn factorial_at(factorials: &[f64], order: usize) -> Result<f64> {
    factorials.get(order).copied().ok_or(Error::MissingMoment {
        creation: order as u32,
        annihilation: order as u32,
    })
}

/// Lee ratio `R(l, m) = <N^(l+1)><N^(m-1)> / (<N^(l)><N^(m)>) - 1` over
/// factorial moments indexed from order 0 (`factorials[0] = 1`).
pub fn lee_r(factorials: &[f64], l: usize, m: usize) -> Result<f64> {
    if m < 1 || l < m {
        return Err(Error::InvalidLeeOrder { l, m });
    }
    let numerator = factorial_at(factorials, l + 1)? * factorial_at(factorials, m - 1)?;
    let denominator = factorial_at(factorials, l)? * factorial_at(factorials, m)?;
    if denominator == 0.0 {
        return Err(Error::ZeroDenominator { l, m });
    }
    Ok(numerator / denominator - 1.0)
}

/// `A_l = <N^(l+1)> / (<N^(l)> <N>) - 1`, the `m = 1` Lee ratio.
pub fn ba_an_a(factorials: &[f64], l: usize) -> Result<f64> {
    lee_r(factorials, l, 1)
}

/// `d(l) = <N^(l+1)> - <N>^(l+1)`; negative means antibunched at order `l`.
pub fn hoa_d_from_moments(
    factorials: &[f64],
    l: usize,
    path: EvaluationPath,
) -> Result<CriterionReport> {
    if l < 1 {
        return Err(Error::UnsupportedOrder(l));
    }
    let higher = factorial_at(factorials, l + 1)?;
    let n = factorial_at(factorials, 1)?;
    Ok(CriterionReport::new(
        format!("d{l}"),
        higher - n.powi(l as i32 + 1),
        path,
    ))
}
