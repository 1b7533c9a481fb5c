use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, PI, TAU};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::error::Error;

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid value for `{key}`: {reason}")]
    Spec { key: String, reason: String },

    #[error(transparent)]
    Numerical(#[from] Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl SweepError {
    pub fn spec(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::Spec {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// Process exit status: 2 for spec errors, 3 for numerical
    /// preconditions, 4 for i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Spec { .. } => 2,
            Self::Numerical(_) => 3,
            Self::Io { .. } | Self::Csv(_) => 4,
        }
    }
}

type SpecResult<T> = std::result::Result<T, SweepError>;

/// Parse an angle in radians. Accepts plain numbers and the tokens
/// `pi`, `2pi`, `pi/2`, `3pi/4`, `-pi/3`, ... evaluated exactly where a
/// correctly rounded constant exists.
pub fn parse_angle(token: &str) -> Option<f64> {
    let s = token.trim().to_ascii_lowercase();
    if let Ok(v) = s.parse::<f64>() {
        return v.is_finite().then_some(v);
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s.trim_start_matches('+').trim()),
    };
    let (numerator, denominator) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<u32>().ok().filter(|&d| d > 0)?),
        None => (body, 1),
    };
    let multiple = numerator.strip_suffix("pi")?.trim().trim_end_matches('*');
    let multiple: u32 = if multiple.is_empty() {
        1
    } else {
        multiple.parse().ok()?
    };
    let value = match (multiple, denominator) {
        (1, 1) => PI,
        (2, 1) => TAU,
        (1, 2) => FRAC_PI_2,
        (1, 3) => FRAC_PI_3,
        (1, 4) => FRAC_PI_4,
        (1, 6) => FRAC_PI_6,
        (1, 8) => FRAC_PI_8,
        (k, d) => PI * k as f64 / d as f64,
    };
    Some(if negative { -value } else { value })
}

/// Comma-separated list of values; angle tokens are accepted when `angles`.
pub fn parse_grid(key: &str, text: &str, angles: bool) -> SpecResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|tok| {
            let parsed = if angles {
                parse_angle(tok)
            } else {
                tok.parse::<f64>().ok().filter(|v| v.is_finite())
            };
            parsed.ok_or_else(|| SweepError::spec(key, format!("cannot parse `{tok}`")))
        })
        .collect::<SpecResult<Vec<_>>>()?;
    if values.is_empty() {
        return Err(SweepError::spec(key, "grid is empty"));
    }
    Ok(values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    ClosedForm,
    Exact,
    Compare,
}

impl FromStr for Mode {
    type Err = SweepError;

    fn from_str(s: &str) -> SpecResult<Self> {
        match s.trim() {
            "closed_form" | "closed-form" => Ok(Self::ClosedForm),
            "exact" => Ok(Self::Exact),
            "compare" => Ok(Self::Compare),
            other => Err(SweepError::spec(
                "mode",
                format!("unknown mode `{other}` (closed_form, exact, compare)"),
            )),
        }
    }
}

/// Source of the `value_cf` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceSource {
    /// Published closed forms, verbatim.
    Published,
    /// First-order moment series ([`crate::perturbative::first_order_moments`]).
    Series,
}

impl FromStr for ReferenceSource {
    type Err = SweepError;

    fn from_str(s: &str) -> SpecResult<Self> {
        match s.trim() {
            "published" => Ok(Self::Published),
            "series" => Ok(Self::Series),
            other => Err(SweepError::spec(
                "closed-form",
                format!("unknown source `{other}` (published, series)"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    F,
    D1,
    D2,
    D3,
    N,
    Quadrature,
    Hillery,
}

impl Witness {
    pub const ALL: [Witness; 7] = [
        Self::F,
        Self::D1,
        Self::D2,
        Self::D3,
        Self::N,
        Self::Quadrature,
        Self::Hillery,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::F => "f",
            Self::D1 => "d1",
            Self::D2 => "d2",
            Self::D3 => "d3",
            Self::N => "N",
            Self::Quadrature => "quadrature",
            Self::Hillery => "hillery",
        }
    }

    /// `N` is an observable, not a nonclassicality witness.
    pub fn is_witness(&self) -> bool {
        !matches!(self, Self::N)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Witness {
    type Err = SweepError;

    fn from_str(s: &str) -> SpecResult<Self> {
        match s.trim() {
            "f" => Ok(Self::F),
            "d1" => Ok(Self::D1),
            "d2" => Ok(Self::D2),
            "d3" => Ok(Self::D3),
            "N" | "n" => Ok(Self::N),
            "quadrature" => Ok(Self::Quadrature),
            "hillery" => Ok(Self::Hillery),
            other => Err(SweepError::spec(
                "witness",
                format!("unknown witness `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimChoice {
    Auto,
    Fixed(usize),
}

impl DimChoice {
    pub fn resolve(&self, alpha_mag: f64) -> usize {
        match *self {
            Self::Auto => crate::fock::default_dim(alpha_mag),
            Self::Fixed(d) => d,
        }
    }
}

impl FromStr for DimChoice {
    type Err = SweepError;

    fn from_str(s: &str) -> SpecResult<Self> {
        match s.trim() {
            "auto" => Ok(Self::Auto),
            other => other.parse::<usize>().map(Self::Fixed).map_err(|_| {
                SweepError::spec("dim", format!("expected integer or `auto`, got `{other}`"))
            }),
        }
    }
}

/// Inclusive evenly spaced time grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn points(&self) -> Vec<f64> {
        let last = self.steps - 1;
        (0..self.steps)
            .map(|k| {
                if k == last {
                    self.end
                } else {
                    self.start + (self.end - self.start) * (k as f64 / last as f64)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub alpha: Vec<f64>,
    pub theta: Vec<f64>,
    pub lambda: Vec<f64>,
    pub t_grid: TimeGrid,
    pub dim: DimChoice,
    pub mode: Mode,
    pub witnesses: Vec<Witness>,
    pub reference: ReferenceSource,
    pub output_path: Option<PathBuf>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            alpha: vec![1.0],
            theta: vec![FRAC_PI_2],
            lambda: vec![1e-2],
            t_grid: TimeGrid {
                start: 0.0,
                end: TAU,
                steps: 101,
            },
            dim: DimChoice::Auto,
            mode: Mode::ClosedForm,
            witnesses: Witness::ALL.to_vec(),
            reference: ReferenceSource::Published,
            output_path: None,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> SpecResult<()> {
        if self.t_grid.steps < 2 {
            return Err(SweepError::spec("t-steps", "need at least 2 time steps"));
        }
        if !(self.t_grid.start.is_finite() && self.t_grid.end.is_finite()) {
            return Err(SweepError::spec("t-start", "time bounds must be finite"));
        }
        for (key, grid) in [
            ("alpha", &self.alpha),
            ("theta", &self.theta),
            ("lambda", &self.lambda),
        ] {
            if grid.is_empty() {
                return Err(SweepError::spec(key, "grid is empty"));
            }
        }
        if let Some(bad) = self.alpha.iter().find(|a| !a.is_finite() || **a < 0.0) {
            return Err(SweepError::spec(
                "alpha",
                format!("amplitude {bad} must be finite and nonnegative"),
            ));
        }
        if let Some(bad) = self.lambda.iter().find(|l| !l.is_finite() || **l < 0.0) {
            return Err(SweepError::spec(
                "lambda",
                format!("coupling {bad} must be finite and nonnegative"),
            ));
        }
        if self.witnesses.is_empty() {
            return Err(SweepError::spec("witness", "no witnesses selected"));
        }
        if let DimChoice::Fixed(d) = self.dim {
            if d < 2 {
                return Err(SweepError::spec("dim", "dimension must be at least 2"));
            }
        }
        Ok(())
    }

    /// Number of rows a run will emit.
    pub fn row_count(&self) -> usize {
        self.alpha.len()
            * self.theta.len()
            * self.lambda.len()
            * self.t_grid.steps
            * self.witnesses.len()
    }

    /// Defaults, then `config` file keys, then `flags`.
    pub fn resolve(config: Option<&Path>, flags: &SpecOverrides) -> SpecResult<Self> {
        let mut spec = Self::default();
        if let Some(path) = config {
            let text = std::fs::read_to_string(path).map_err(|source| SweepError::Io {
                path: path.display().to_string(),
                source,
            })?;
            SpecOverrides::parse_config(&text)?.apply(&mut spec)?;
        }
        flags.apply(&mut spec)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Unparsed per-key overrides, as given on the command line or in a config
/// file. Keys mirror the long flag names.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpecOverrides {
    pub alpha: Option<String>,
    pub theta: Option<String>,
    pub lambda: Option<String>,
    pub t_start: Option<String>,
    pub t_end: Option<String>,
    pub t_steps: Option<String>,
    pub dim: Option<String>,
    pub mode: Option<String>,
    pub witness: Vec<String>,
    pub closed_form: Option<String>,
    pub out: Option<String>,
}

impl SpecOverrides {
    /// `key = value` lines; `#` starts a comment. `witness` may repeat.
    pub fn parse_config(text: &str) -> SpecResult<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                SweepError::spec(format!("line {}", lineno + 1), "expected `key = value`")
            })?;
            let (key, value) = (key.trim(), value.trim().to_string());
            let slot = match key {
                "alpha" => &mut out.alpha,
                "theta" => &mut out.theta,
                "lambda" => &mut out.lambda,
                "t-start" => &mut out.t_start,
                "t-end" => &mut out.t_end,
                "t-steps" => &mut out.t_steps,
                "dim" => &mut out.dim,
                "mode" => &mut out.mode,
                "closed-form" => &mut out.closed_form,
                "out" => &mut out.out,
                "witness" => {
                    out.witness.push(value);
                    continue;
                }
                other => return Err(SweepError::spec(other, "unknown config key")),
            };
            *slot = Some(value);
        }
        Ok(out)
    }

    pub fn apply(&self, spec: &mut SweepSpec) -> SpecResult<()> {
        if let Some(v) = &self.alpha {
            spec.alpha = parse_grid("alpha", v, false)?;
        }
        if let Some(v) = &self.theta {
            spec.theta = parse_grid("theta", v, true)?;
        }
        if let Some(v) = &self.lambda {
            spec.lambda = parse_grid("lambda", v, false)?;
        }
        if let Some(v) = &self.t_start {
            spec.t_grid.start = parse_angle(v)
                .ok_or_else(|| SweepError::spec("t-start", format!("cannot parse `{v}`")))?;
        }
        if let Some(v) = &self.t_end {
            spec.t_grid.end = parse_angle(v)
                .ok_or_else(|| SweepError::spec("t-end", format!("cannot parse `{v}`")))?;
        }
        if let Some(v) = &self.t_steps {
            spec.t_grid.steps = v
                .trim()
                .parse()
                .map_err(|_| SweepError::spec("t-steps", format!("expected integer, got `{v}`")))?;
        }
        if let Some(v) = &self.dim {
            spec.dim = v.parse()?;
        }
        if let Some(v) = &self.mode {
            spec.mode = v.parse()?;
        }
        if let Some(v) = &self.closed_form {
            spec.reference = v.parse()?;
        }
        if !self.witness.is_empty() {
            let mut witnesses = Vec::new();
            for item in self.witness.iter().flat_map(|w| w.split(',')) {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let w: Witness = item.parse()?;
                if !witnesses.contains(&w) {
                    witnesses.push(w);
                }
            }
            spec.witnesses = witnesses;
        }
        if let Some(v) = &self.out {
            spec.output_path = Some(PathBuf::from(v));
        }
        Ok(())
    }
}
