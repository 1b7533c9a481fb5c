//! Truncated Fock-space linear algebra.
//!
//! States live in the span of the number states `|0>, ..., |D-1>`. All
//! operators are dense `D x D` complex matrices; at the dimensions used here
//! (a few hundred at most) dense products are fast enough.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Probability mass allowed beyond the truncation edge for a coherent state.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Bound on `||(a - alpha)|alpha>||` for a constructed coherent state.
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default truncation for a coherent amplitude: `ceil(|a|^2 + 8|a| + 20)`.
pub fn default_dim(alpha_mag: f64) -> usize {
    (alpha_mag * alpha_mag + 8.0 * alpha_mag + 20.0).ceil() as usize
}

/// State vector over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: DVector<Complex64>,
}

impl FockVector {
    pub fn from_amplitudes(amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::DimensionTooSmall {
                dim: amplitudes.len(),
                min: 2,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Number state `|n>`.
    pub fn number_state(n: usize, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { dim, min: 2 });
        }
        if n >= dim {
            return Err(Error::DimensionTooSmall { dim, min: n + 1 });
        }
        let mut amplitudes = DVector::from_element(dim, ZERO);
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::number_state(0, dim)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> DVector<Complex64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// Occupation probabilities `|c_n|^2`.
    pub fn populations(&self) -> impl Iterator<Item = f64> + '_ {
        self.amplitudes.iter().map(|c| c.norm_sqr())
    }

    /// `<self|other>`
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn apply(&self, op: &OperatorMatrix) -> Result<FockVector> {
        check_dim(op.dim(), self.dim())?;
        Ok(FockVector {
            amplitudes: &op.entries * &self.amplitudes,
        })
    }
}

/// Dense operator over the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_entries(entries: DMatrix<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        if entries.nrows() < 2 {
            return Err(Error::DimensionTooSmall {
                dim: entries.nrows(),
                min: 2,
            });
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: DMatrix::from_element(dim, dim, ZERO),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            entries: &self.entries * factor,
        }
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &OperatorMatrix) -> Self {
        Self {
            entries: &self.entries * &other.entries - &other.entries * &self.entries,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.entries == self.entries.adjoint()
    }
}

impl std::ops::Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries * &rhs.entries,
        }
    }
}

impl std::ops::Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl std::ops::Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: Self) -> OperatorMatrix {
        OperatorMatrix {
            entries: &self.entries - &rhs.entries,
        }
    }
}

/// Annihilation, creation and number operators for one truncated mode.
#[derive(Debug, Clone)]
pub struct LadderOps {
    pub a: OperatorMatrix,
    pub a_dagger: OperatorMatrix,
    pub number: OperatorMatrix,
}

impl LadderOps {
    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Field quadrature `(a^dag + a) / sqrt 2`.
    pub fn position(&self) -> OperatorMatrix {
        (&self.a_dagger + &self.a).scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))
    }
}

/// `a[n-1][n] = sqrt n`, `a^dag = a^H`, `N = diag(0..D)`.
pub fn make_ladder_ops(dim: usize) -> Result<LadderOps> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    let mut a = DMatrix::from_element(dim, dim, ZERO);
    let mut number = DMatrix::from_element(dim, dim, ZERO);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
        number[(n, n)] = Complex64::new(n as f64, 0.0);
    }
    let a = OperatorMatrix { entries: a };
    let a_dagger = a.adjoint();
    Ok(LadderOps {
        a,
        a_dagger,
        number: OperatorMatrix { entries: number },
    })
}

/// Largest deviation of `[a, a^dag]` from the identity on the leading
/// `(D-1) x (D-1)` block, together with the edge entry `(D-1, D-1)`, which
/// equals `-(D-1)` up to rounding.
pub fn commutator_block_residual(ops: &LadderOps) -> (f64, Complex64) {
    let dim = ops.dim();
    let c = ops.a.commutator(&ops.a_dagger);
    let mut worst: f64 = 0.0;
    for i in 0..dim - 1 {
        for j in 0..dim - 1 {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((c.entries()[(i, j)] - want).norm());
        }
    }
    (worst, c.entries()[(dim - 1, dim - 1)])
}

/// Poisson mass left outside the first `dim` number states, `1 - sum_{n<D} p_n`,
/// accumulated from the top so it does not cancel catastrophically.
pub fn coherent_tail_mass(alpha_mag: f64, dim: usize) -> f64 {
    let mean = alpha_mag * alpha_mag;
    if mean == 0.0 {
        return 0.0;
    }
    // Sum p_n for n >= dim with p_n built in log space; terms decay
    // geometrically once n exceeds the mean, so a bounded loop suffices.
    let mut log_p = -mean + dim as f64 * mean.ln() - ln_factorial(dim);
    let mut total = 0.0;
    let mut n = dim;
    loop {
        let p = log_p.exp();
        total += p;
        n += 1;
        log_p += mean.ln() - (n as f64).ln();
        if (n as f64) > mean && p < total * 1e-17 {
            break;
        }
        if n > dim + 100_000 {
            break;
        }
    }
    total
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Coherent state `|alpha>`, built by the recurrence
/// `c_{n+1} = c_n alpha / sqrt(n+1)` from `c_0 = exp(-|alpha|^2/2)` and
/// renormalized over the retained basis.
pub fn coherent_state(alpha: Complex64, dim: usize) -> Result<FockVector> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall { dim, min: 2 });
    }
    let alpha_mag = alpha.norm();
    let tail_mass = coherent_tail_mass(alpha_mag, dim);
    if tail_mass >= TAIL_TOLERANCE {
        return Err(Error::TruncationTooSmall {
            alpha_mag,
            dim,
            tail_mass,
            tolerance: TAIL_TOLERANCE,
        });
    }
    let mut amplitudes = DVector::from_element(dim, ZERO);
    amplitudes[0] = Complex64::new((-0.5 * alpha_mag * alpha_mag).exp(), 0.0);
    for n in 0..dim - 1 {
        amplitudes[n + 1] = amplitudes[n] * alpha / ((n + 1) as f64).sqrt();
    }
    let norm = amplitudes.norm();
    amplitudes.unscale_mut(norm);
    Ok(FockVector { amplitudes })
}

/// `<psi|O|psi>`
pub fn expectation(state: &FockVector, op: &OperatorMatrix) -> Result<Complex64> {
    check_dim(op.dim(), state.dim())?;
    Ok(state.amplitudes.dotc(&(&op.entries * &state.amplitudes)))
}

/// `<N(N-1)...(N-l+1)> = sum_n n(n-1)...(n-l+1) |c_n|^2`
pub fn factorial_moment(state: &FockVector, order: usize) -> Result<f64> {
    let dim = state.dim();
    if order == 0 {
        return Ok(state.populations().sum());
    }
    if order >= dim {
        return Err(Error::OrderExceedsDimension { order, dim });
    }
    Ok(state
        .populations()
        .enumerate()
        .skip(order)
        .map(|(n, p)| falling_factorial(n, order) * p)
        .sum())
}

/// `n (n-1) ... (n-k+1)`
pub fn falling_factorial(n: usize, k: usize) -> f64 {
    (0..k).map(|j| n.saturating_sub(j) as f64).product()
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Physical parameters: input amplitude `|alpha| e^{i theta}`, quartic
/// coupling `lambda`, and the truncation dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha_mag: f64,
    pub theta: f64,
    pub lambda: f64,
    pub dim: usize,
}

impl ModelParams {
    /// Parameters with the default truncation for `alpha_mag`.
    pub fn new(alpha_mag: f64, theta: f64, lambda: f64) -> Result<Self> {
        Self::with_dim(alpha_mag, theta, lambda, default_dim(alpha_mag.max(0.0)))
    }

    pub fn with_dim(alpha_mag: f64, theta: f64, lambda: f64, dim: usize) -> Result<Self> {
        let params = Self {
            alpha_mag,
            theta,
            lambda,
            dim,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha_mag >= 0.0 && self.alpha_mag.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "alpha_mag",
                value: self.alpha_mag,
                reason: "must be finite and nonnegative",
            });
        }
        if !self.theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: self.theta,
                reason: "must be finite",
            });
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: self.lambda,
                reason: "must be finite and nonnegative",
            });
        }
        let min = default_dim(self.alpha_mag);
        if self.dim < min {
            return Err(Error::DimensionTooSmall { dim: self.dim, min });
        }
        Ok(())
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_mag, self.theta)
    }

    pub fn initial_state(&self) -> Result<FockVector> {
        coherent_state(self.alpha(), self.dim)
    }
}
