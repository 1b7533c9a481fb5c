//! Parameter sweeps over `(|alpha|, theta, lambda, t)`.
//!
//! A [`SweepSpec`] is assembled from built-in defaults, an optional flat
//! `key = value` config file and command-line overrides, in that order of
//! increasing precedence. [`run_sweep`] evaluates every grid point, and the
//! rows are written as CSV by [`write_csv`] with fixed ordering and
//! shortest round-trip number formatting, so identical specs give
//! byte-identical files.

mod report;
mod run;
mod spec;

pub use report::{
    compare_report, convergence_check, ConvergenceReport, ScalingEntry, ScalingReport,
    ScalingVerdict, ERROR_FLOOR, MIN_SCALING_SLOPE,
};
pub use run::{
    evaluate_point, format_number, run_sweep, write_csv, SweepOutput, SweepRow, SweepSummary,
    WitnessSummary, CSV_HEADER,
};
pub use spec::{
    parse_angle, parse_grid, DimChoice, Mode, ReferenceSource, SpecOverrides, SweepError,
    SweepSpec, TimeGrid, Witness,
};
