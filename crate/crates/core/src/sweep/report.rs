use std::collections::BTreeMap;
use std::fmt;

use super::run::{run_sweep, SweepRow};
use super::spec::{Mode, SweepError, SweepSpec, Witness};
use crate::dynamics::ExactEvolution;
use crate::fock::ModelParams;

/// Minimum log-log slope of error vs lambda for a first-order-accurate
/// closed form.
pub const MIN_SCALING_SLOPE: f64 = 1.8;

/// Errors below this (times the witness scale) are treated as numerical
/// noise and left out of the slope fit.
pub const ERROR_FLOOR: f64 = 1e-12;

/// Drift bound for the truncation-doubling check.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingVerdict {
    Pass,
    Fail,
    /// All but one error sits at the numerical floor.
    FloorLimited,
    /// Fewer than two lambda values, or less than a decade between them.
    Insufficient,
}

impl ScalingVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::Fail => "FAIL",
            Self::FloorLimited => "floor-limited",
            Self::Insufficient => "insufficient",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingEntry {
    pub alpha_mag: f64,
    pub theta: f64,
    pub witness: Witness,
    pub lambdas: Vec<f64>,
    /// Max over the time grid of `|closed form - exact|`, per lambda.
    pub max_errors: Vec<f64>,
    pub slope: Option<f64>,
    pub verdict: ScalingVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub entries: Vec<ScalingEntry>,
}

impl ScalingReport {
    /// Group compare-mode rows by `(alpha, theta, witness)` and fit the
    /// error slope across the positive lambda values.
    pub fn from_rows(rows: &[SweepRow]) -> Self {
        type Key = (u64, u64, Witness);
        let mut groups: BTreeMap<Key, BTreeMap<u64, (f64, f64)>> = BTreeMap::new();
        let mut order: Vec<Key> = Vec::new();
        for row in rows {
            let Some(err) = row.abs_error.filter(|_| row.lambda > 0.0) else {
                continue;
            };
            let key = (row.alpha_mag.to_bits(), row.theta.to_bits(), row.witness);
            if !groups.contains_key(&key) {
                order.push(key);
            }
            let scale = row.value().map_or(0.0, f64::abs);
            let slot = groups
                .entry(key)
                .or_default()
                .entry(row.lambda.to_bits())
                .or_insert((0.0, 0.0));
            slot.0 = slot.0.max(err);
            slot.1 = slot.1.max(scale);
        }
        let entries = order
            .into_iter()
            .map(|key| {
                let by_lambda = &groups[&key];
                let mut points: Vec<(f64, f64, f64)> = by_lambda
                    .iter()
                    .map(|(&bits, &(err, scale))| (f64::from_bits(bits), err, scale))
                    .collect();
                points.sort_by(|a, b| a.0.total_cmp(&b.0));
                fit_entry(f64::from_bits(key.0), f64::from_bits(key.1), key.2, &points)
            })
            .collect();
        Self { entries }
    }

    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.verdict != ScalingVerdict::Fail)
    }

    pub fn worst_slope(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(|e| e.slope)
            .fold(None, |acc: Option<f64>, s| {
                Some(acc.map_or(s, |a| a.min(s)))
            })
    }
}

impl fmt::Display for ScalingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let slope = e.slope.map_or("-".to_string(), |s| format!("{s:.3}"));
            writeln!(
                f,
                "scaling |alpha|={} theta={} {:>10}: slope={} verdict={}",
                e.alpha_mag,
                e.theta,
                e.witness.name(),
                slope,
                e.verdict.as_str()
            )?;
        }
        Ok(())
    }
}

fn fit_entry(
    alpha_mag: f64,
    theta: f64,
    witness: Witness,
    points: &[(f64, f64, f64)],
) -> ScalingEntry {
    let lambdas: Vec<f64> = points.iter().map(|p| p.0).collect();
    let max_errors: Vec<f64> = points.iter().map(|p| p.1).collect();
    let span_ok = lambdas.len() >= 2
        && lambdas.first().copied().unwrap_or(0.0) > 0.0
        && lambdas[lambdas.len() - 1] / lambdas[0] >= 10.0 * (1.0 - 1e-12);
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, err, scale)| *err > ERROR_FLOOR * scale.max(1.0))
        .map(|&(l, e, _)| (l.log10(), e.log10()))
        .collect();
    let (slope, verdict) = if !span_ok {
        (None, ScalingVerdict::Insufficient)
    } else if usable.len() < 2 {
        (None, ScalingVerdict::FloorLimited)
    } else {
        let s = least_squares_slope(&usable);
        let verdict = if s >= MIN_SCALING_SLOPE {
            ScalingVerdict::Pass
        } else {
            ScalingVerdict::Fail
        };
        (Some(s), verdict)
    };
    ScalingEntry {
        alpha_mag,
        theta,
        witness,
        lambdas,
        max_errors,
        slope,
        verdict,
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Run `spec` in compare mode and fit the lambda scaling of each witness.
pub fn compare_report(spec: &SweepSpec) -> Result<ScalingReport, SweepError> {
    if spec.mode != Mode::Compare {
        return Err(SweepError::spec(
            "mode",
            "scaling report needs mode = compare",
        ));
    }
    let mut lambdas: Vec<f64> = spec.lambda.iter().copied().filter(|&l| l > 0.0).collect();
    lambdas.sort_by(f64::total_cmp);
    lambdas.dedup();
    if lambdas.len() < 2 || lambdas[lambdas.len() - 1] / lambdas[0] < 10.0 * (1.0 - 1e-12) {
        return Err(SweepError::spec(
            "lambda",
            "scaling fit needs at least two positive couplings a decade or more apart",
        ));
    }
    let out = run_sweep(spec)?;
    Ok(ScalingReport::from_rows(&out.rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub max_drift: f64,
    pub samples: usize,
    pub passed: bool,
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "convergence: {} samples, max relative drift {:.3e} ({})",
            self.samples,
            self.max_drift,
            if self.passed { "pass" } else { "FAIL" }
        )
    }
}

/// Re-evaluate a sample of grid points at twice the truncation dimension
/// and report the largest moment drift, `|m_2D - m_D| / max(|m_D|, 1)`.
pub fn convergence_check(spec: &SweepSpec) -> Result<ConvergenceReport, SweepError> {
    spec.validate()?;
    if spec.mode == Mode::ClosedForm {
        return Err(SweepError::spec(
            "mode",
            "convergence check needs mode = exact or compare",
        ));
    }
    let times = spec.t_grid.points();
    let stride = (times.len() / 8).max(1);
    let sampled: Vec<f64> = times.iter().copied().step_by(stride).collect();
    let mut max_drift: f64 = 0.0;
    let mut samples = 0;
    for &alpha in &spec.alpha {
        let dim = spec.dim.resolve(alpha);
        for &theta in &spec.theta {
            for &lambda in &spec.lambda {
                let base = ModelParams::with_dim(alpha, theta, lambda, dim)?;
                let doubled = ModelParams {
                    dim: 2 * dim,
                    ..base
                };
                let small = ExactEvolution::new(&base)?;
                let large = ExactEvolution::new(&doubled)?;
                for &t in &sampled {
                    let m1 = small.moments_at(t)?;
                    let m2 = large.moments_at(t)?;
                    for ((c, a), v) in m1.iter() {
                        let w = m2.get(c, a)?;
                        max_drift = max_drift.max((v - w).norm() / v.norm().max(1.0));
                    }
                    samples += 1;
                }
            }
        }
    }
    Ok(ConvergenceReport {
        max_drift,
        samples,
        passed: max_drift < CONVERGENCE_TOLERANCE,
    })
}
