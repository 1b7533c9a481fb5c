//! Nonclassical light from a quartic anharmonic oscillator.
//!
//! A single field mode in an inversion-symmetric third-order medium is
//! modelled by `H = (a^dag a + 1/2) + (lambda/16)(a^dag + a)^4`. The crate
//! provides
//!
//! * [`fock`]: truncated number-basis states and ladder operators,
//! * [`dynamics`]: exact evolution of a coherent input by diagonalizing `H`,
//!   with interaction-picture moments,
//! * [`perturbative`]: the first-order operator solution and the published
//!   closed-form witnesses, plus a first-order moment series,
//! * [`criteria`]: squeezing and (higher-order) antibunching witnesses that
//!   consume moments from any of those sources,
//! * [`sweep`]: parameter sweeps, CSV output and perturbative-vs-exact
//!   scaling reports (driven by the `quartic-sweep` binary).

pub mod criteria;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod perturbative;
pub mod sweep;

pub use error::{Error, Result};
