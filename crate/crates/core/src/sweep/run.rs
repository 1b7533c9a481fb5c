use std::io::Write;

use rayon::prelude::*;

use super::report::{ScalingReport, ScalingVerdict};
use super::spec::{Mode, ReferenceSource, SweepError, SweepSpec, Witness};
use crate::criteria::{
    hillery_squeezing, hoa_d_from_moments, quadrature_squeezing, Classification, EvaluationPath,
    BOUNDARY_TOLERANCE,
};
use crate::dynamics::{ExactEvolution, MomentSet};
use crate::fock::ModelParams;
use crate::perturbative::{self, ClosedFormInputs};

pub const CSV_HEADER: [&str; 9] = [
    "alpha_mag",
    "theta",
    "lambda",
    "t",
    "witness",
    "value_cf",
    "value_exact",
    "abs_error",
    "classification",
];

/// Shortest decimal string that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub alpha_mag: f64,
    pub theta: f64,
    pub lambda: f64,
    pub t: f64,
    pub witness: Witness,
    pub value_cf: Option<f64>,
    pub value_exact: Option<f64>,
    pub abs_error: Option<f64>,
    pub classification: Option<Classification>,
}

impl SweepRow {
    /// The value used for classification and summaries: exact when
    /// available, closed form otherwise.
    pub fn value(&self) -> Option<f64> {
        self.value_exact.or(self.value_cf)
    }

    fn record(&self) -> [String; 9] {
        let opt = |v: Option<f64>| v.map(format_number).unwrap_or_default();
        [
            format_number(self.alpha_mag),
            format_number(self.theta),
            format_number(self.lambda),
            format_number(self.t),
            self.witness.name().to_string(),
            opt(self.value_cf),
            opt(self.value_exact),
            opt(self.abs_error),
            self.classification
                .map(|c| c.as_str().to_string())
                .unwrap_or_default(),
        ]
    }
}

/// Min/max and sign changes of one witness over the time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSummary {
    pub alpha_mag: f64,
    pub theta: f64,
    pub lambda: f64,
    pub witness: Witness,
    pub min: f64,
    pub max: f64,
    pub zero_crossings: usize,
    pub max_abs_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub witnesses: Vec<WitnessSummary>,
    pub scaling: Option<ScalingReport>,
}

impl std::fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.witnesses {
            write!(
                f,
                "|alpha|={} theta={} lambda={} {:>10}: min={:+.6e} max={:+.6e} crossings={}",
                s.alpha_mag,
                s.theta,
                s.lambda,
                s.witness.name(),
                s.min,
                s.max,
                s.zero_crossings
            )?;
            if let Some(e) = s.max_abs_error {
                write!(f, " max_abs_error={e:.3e}")?;
            }
            writeln!(f)?;
        }
        if let Some(report) = &self.scaling {
            write!(f, "{report}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

fn published_value(witness: Witness, p: &ClosedFormInputs) -> Option<f64> {
    use perturbative::closed::*;
    match witness {
        Witness::F => Some(squeezing_witness_f(p)),
        Witness::D1 => hoa_witness_d(1, p).ok(),
        Witness::D2 => hoa_witness_d(2, p).ok(),
        Witness::D3 => hoa_witness_d(3, p).ok(),
        Witness::N => Some(mean_photon_number(p)),
        Witness::Hillery => Some(delta_y1_squared(p) - (2.0 * mean_photon_number(p) + 1.0)),
        // no published closed form for the ordinary quadrature
        Witness::Quadrature => None,
    }
}

fn moment_value(witness: Witness, moments: &MomentSet, path: EvaluationPath) -> crate::Result<f64> {
    let d = |l: usize| -> crate::Result<f64> {
        let fm = moments.factorial_moments(l as u32 + 1)?;
        Ok(hoa_d_from_moments(&fm, l, path)?.value)
    };
    match witness {
        Witness::F | Witness::Hillery => Ok(hillery_squeezing(moments, path)?.value),
        Witness::D1 => d(1),
        Witness::D2 => d(2),
        Witness::D3 => d(3),
        Witness::N => Ok(moments.factorial(1)?),
        Witness::Quadrature => Ok(quadrature_squeezing(moments, path)?.value),
    }
}

/// Closed-form and (optionally) exact values of one witness at one point.
pub fn evaluate_point(
    witness: Witness,
    inputs: &ClosedFormInputs,
    reference: ReferenceSource,
    exact: Option<&MomentSet>,
) -> crate::Result<(Option<f64>, Option<f64>)> {
    let series = || {
        perturbative::first_order_moments(inputs.alpha_mag, inputs.theta, inputs.lambda, inputs.t)
    };
    let cf = match reference {
        ReferenceSource::Published => match published_value(witness, inputs) {
            Some(v) => Some(v),
            None => Some(moment_value(
                witness,
                &series(),
                EvaluationPath::FirstOrderSeries,
            )?),
        },
        ReferenceSource::Series => Some(moment_value(
            witness,
            &series(),
            EvaluationPath::FirstOrderSeries,
        )?),
    };
    let exact = exact
        .map(|m| moment_value(witness, m, EvaluationPath::ExactOracle))
        .transpose()?;
    Ok((cf, exact))
}

fn check_preconditions(spec: &SweepSpec) -> Result<(), SweepError> {
    spec.validate()?;
    if spec.mode == Mode::ClosedForm {
        return Ok(());
    }
    for &alpha in &spec.alpha {
        let params = ModelParams::with_dim(alpha, 0.0, 0.0, spec.dim.resolve(alpha))?;
        params.initial_state()?;
    }
    Ok(())
}

fn sweep_block(
    spec: &SweepSpec,
    alpha: f64,
    theta: f64,
    lambda: f64,
    times: &[f64],
) -> Result<Vec<SweepRow>, SweepError> {
    let evolution = match spec.mode {
        Mode::ClosedForm => None,
        Mode::Exact | Mode::Compare => {
            let params = ModelParams::with_dim(alpha, theta, lambda, spec.dim.resolve(alpha))?;
            Some(ExactEvolution::new(&params)?)
        }
    };
    let mut rows = Vec::with_capacity(times.len() * spec.witnesses.len());
    for &t in times {
        let inputs = ClosedFormInputs::new(alpha, theta, lambda, t)?;
        let moments = evolution.as_ref().map(|e| e.moments_at(t)).transpose()?;
        for &witness in &spec.witnesses {
            let (cf, exact) = evaluate_point(witness, &inputs, spec.reference, moments.as_ref())?;
            let abs_error = match (spec.mode, cf, exact) {
                (Mode::Compare, Some(c), Some(e)) => Some((c - e).abs()),
                _ => None,
            };
            let classification = witness
                .is_witness()
                .then(|| {
                    exact
                        .or(cf)
                        .map(|v| Classification::of(v, BOUNDARY_TOLERANCE))
                })
                .flatten();
            rows.push(SweepRow {
                alpha_mag: alpha,
                theta,
                lambda,
                t,
                witness,
                value_cf: cf,
                value_exact: exact,
                abs_error,
                classification,
            });
        }
    }
    Ok(rows)
}

/// Evaluate every grid point. Rows come out in grid order
/// (alpha, theta, lambda, t, witness) regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput, SweepError> {
    check_preconditions(spec)?;
    let times = spec.t_grid.points();
    let blocks: Vec<(f64, f64, f64)> = spec
        .alpha
        .iter()
        .flat_map(|&a| {
            spec.theta
                .iter()
                .flat_map(move |&th| spec.lambda.iter().map(move |&l| (a, th, l)))
        })
        .collect();
    let rows = blocks
        .par_iter()
        .map(|&(a, th, l)| sweep_block(spec, a, th, l, &times))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let summary = summarize(spec, &rows);
    Ok(SweepOutput { rows, summary })
}

fn summarize(spec: &SweepSpec, rows: &[SweepRow]) -> SweepSummary {
    let per_block = spec.witnesses.len() * spec.t_grid.steps;
    let mut witnesses = Vec::new();
    for block in rows.chunks(per_block.max(1)) {
        for (offset, &witness) in spec.witnesses.iter().enumerate() {
            let series: Vec<&SweepRow> = block
                .iter()
                .skip(offset)
                .step_by(spec.witnesses.len())
                .collect();
            let values: Vec<f64> = series.iter().filter_map(|r| r.value()).collect();
            if values.is_empty() {
                continue;
            }
            let crossings = values
                .iter()
                .map(|&v| Classification::of(v, BOUNDARY_TOLERANCE))
                .filter(|c| *c != Classification::Boundary)
                .collect::<Vec<_>>()
                .windows(2)
                .filter(|w| w[0] != w[1])
                .count();
            let max_abs_error = series
                .iter()
                .filter_map(|r| r.abs_error)
                .fold(None, |acc: Option<f64>, e| {
                    Some(acc.map_or(e, |a| a.max(e)))
                });
            witnesses.push(WitnessSummary {
                alpha_mag: series[0].alpha_mag,
                theta: series[0].theta,
                lambda: series[0].lambda,
                witness,
                min: values.iter().copied().fold(f64::INFINITY, f64::min),
                max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                zero_crossings: crossings,
                max_abs_error,
            });
        }
    }
    let scaling = (spec.mode == Mode::Compare)
        .then(|| ScalingReport::from_rows(rows))
        .filter(|r| {
            r.entries
                .iter()
                .any(|e| e.verdict != ScalingVerdict::Insufficient)
        });
    SweepSummary { witnesses, scaling }
}

/// Write rows with [`CSV_HEADER`]; absent fields are empty.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), SweepError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.write_record(row.record())?;
    }
    writer.flush().map_err(|source| SweepError::Io {
        path: "<csv output>".into(),
        source,
    })?;
    Ok(())
}
