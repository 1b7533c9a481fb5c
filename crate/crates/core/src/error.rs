use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation dimension {dim} is too small (need at least {min})")]
    DimensionTooSmall { dim: usize, min: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(
        "coherent amplitude |alpha| = {alpha_mag} needs more than {dim} Fock states \
         (tail mass {tail_mass:e} exceeds {tolerance:e})"
    )]
    TruncationTooSmall {
        alpha_mag: f64,
        dim: usize,
        tail_mass: f64,
        tolerance: f64,
    },

    #[error("factorial moment of order {order} is not resolvable in dimension {dim}")]
    OrderExceedsDimension { order: usize, dim: usize },

    #[error("invalid model parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error(
        "antibunching order {0} is unavailable: the first-order operator solution only \
         resolves d(l) for l in 1..=3"
    )]
    UnsupportedOrder(usize),

    #[error("moment <a^dag^{creation} a^{annihilation}> was not recorded")]
    MissingMoment { creation: u32, annihilation: u32 },

    #[error("Lee ratio R({l},{m}) has a vanishing denominator")]
    ZeroDenominator { l: usize, m: usize },

    #[error("Lee ratio needs l >= m >= 1, got l = {l}, m = {m}")]
    InvalidLeeOrder { l: usize, m: usize },

    #[error("symmetric eigendecomposition did not converge (dim {0})")]
    EigenFailure(usize),
}
