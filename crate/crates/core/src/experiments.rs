//! Parameter sweeps over generated graphs and least-squares fits of the
//! resulting `(X, Y)` clouds.
//!
//! Trial `t` of every grid point uses seed `base_seed + t`. Aggregates take
//! the mean of `M_q` over trials before any logarithm; per-trial logs are
//! kept in [`TrialRow`] so the other convention can be recomputed.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{generate, GeneratorConfig};
use crate::graph::Graph;
use crate::metrics::{milgram_profiles, separation_number_with, MilgramProfile};
use crate::strings::StringCounter;

/// One graph, one `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub kind: &'static str,
    pub parameter: f64,
    pub seed: u64,
    pub q: usize,
    pub s_bar: u64,
    pub m_q: f64,
    pub log_ratio: Option<f64>,
    /// `C(3) ..= C(q)`.
    pub c_values: Vec<f64>,
    pub degenerate: Vec<bool>,
    pub x: f64,
    pub y: Option<f64>,
    /// Separation number of this trial's graph (over the whole `q` range).
    pub q_star: Option<usize>,
}

/// Mean over trials at one `(parameter, q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub kind: &'static str,
    pub parameter: f64,
    pub q: usize,
    pub trials: usize,
    pub mean_m_q: f64,
    pub std_m_q: f64,
    /// `log10(mean M_q / N)`.
    pub log_ratio: Option<f64>,
    pub mean_x: f64,
    pub std_x: f64,
    /// `log10(mean M_q)`.
    pub y: Option<f64>,
    /// Smallest `q` whose mean `M_q / N` reaches 1.
    pub q_star: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialFailure {
    pub kind: &'static str,
    pub parameter: f64,
    pub seed: u64,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SweepResult {
    pub n_nodes: Vec<usize>,
    pub q_min: usize,
    pub q_max: usize,
    pub rows: Vec<TrialRow>,
    pub aggregates: Vec<AggregateRow>,
    pub failures: Vec<TrialFailure>,
}

/// Which rows feed a fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitPoints {
    /// Trial means: `(mean X, log10 mean M_q)` per grid point.
    Aggregate,
    /// Every trial separately.
    Trials,
}

impl SweepResult {
    /// `(X, Y)` points, optionally restricted to one `q`. Rows with an
    /// undefined `Y` are skipped.
    pub fn xy_points(&self, q: Option<usize>, source: FitPoints) -> Vec<(f64, f64)> {
        let keep = |row_q: usize| row_q >= 3 && q.is_none_or(|q| q == row_q);
        match source {
            FitPoints::Aggregate => self
                .aggregates
                .iter()
                .filter(|r| keep(r.q))
                .filter_map(|r| r.y.map(|y| (r.mean_x, y)))
                .collect(),
            FitPoints::Trials => self
                .rows
                .iter()
                .filter(|r| keep(r.q))
                .filter_map(|r| r.y.map(|y| (r.x, y)))
                .collect(),
        }
    }

    /// One fit per `q ≥ 3` in the sweep.
    pub fn fit_per_q(
        &self,
        model: FitModel,
        source: FitPoints,
    ) -> BTreeMap<usize, Result<FitResult>> {
        (self.q_min.max(3)..=self.q_max)
            .map(|q| (q, fit(model, &self.xy_points(Some(q), source))))
            .collect()
    }

    /// One fit over every `q ≥ 3` at once.
    pub fn fit_pooled(&self, model: FitModel, source: FitPoints) -> Result<FitResult> {
        fit(model, &self.xy_points(None, source))
    }

    /// Per-trial separation numbers at one parameter value, in seed order.
    pub fn trial_separation_numbers(&self, parameter: f64) -> Vec<Option<usize>> {
        let mut seen = BTreeMap::new();
        for r in self.rows.iter().filter(|r| r.parameter == parameter) {
            seen.entry(r.seed).or_insert(r.q_star);
        }
        seen.into_values().collect()
    }

    /// Separation number of the trial-mean curve at one parameter value.
    pub fn aggregate_separation_number(&self, parameter: f64) -> Option<usize> {
        self.aggregates
            .iter()
            .find(|r| r.parameter == parameter)
            .and_then(|r| r.q_star)
    }

    pub fn aggregates_at(&self, parameter: f64) -> impl Iterator<Item = &AggregateRow> {
        self.aggregates
            .iter()
            .filter(move |r| r.parameter == parameter)
    }
}

/// Full sweep description.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub grid: Vec<GeneratorConfig>,
    /// Smallest `q` emitted in rows (2 for Milgram curves, 3 for `X`–`Y`).
    pub q_min: usize,
    pub q_max: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub counter: StringCounter,
}

impl Sweep {
    pub fn new(grid: Vec<GeneratorConfig>, q_max: usize, trials: usize, base_seed: u64) -> Self {
        Self {
            grid,
            q_min: 2,
            q_max,
            trials,
            base_seed,
            counter: StringCounter::default(),
        }
    }

    pub fn run(&self) -> Result<SweepResult> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be ≥ 1".into()));
        }
        if self.q_max < self.q_min.max(2) {
            return Err(Error::Range(format!(
                "q range {}..={} is empty",
                self.q_min, self.q_max
            )));
        }
        if self.q_max > self.counter.max_edges() {
            return Err(Error::Range(format!(
                "q_max = {} exceeds the string-length ceiling {}",
                self.q_max,
                self.counter.max_edges()
            )));
        }
        for cfg in &self.grid {
            cfg.validate()?;
        }

        let jobs: Vec<(usize, u64)> = (0..self.grid.len())
            .flat_map(|point| (0..self.trials as u64).map(move |t| (point, t)))
            .collect();
        let outcomes: Vec<(usize, u64, Result<Vec<MilgramProfile>>)> = jobs
            .into_par_iter()
            .map(|(point, t)| {
                let seed = self.base_seed.wrapping_add(t);
                let cfg = self.grid[point].clone().with_seed(seed);
                let profiles =
                    generate(&cfg).and_then(|g| milgram_profiles(&g, self.q_max, &self.counter));
                (point, seed, profiles)
            })
            .collect();

        let mut result = SweepResult {
            n_nodes: self.grid.iter().map(|c| c.n_nodes).collect(),
            q_min: self.q_min,
            q_max: self.q_max,
            ..Default::default()
        };
        let mut per_point: Vec<Vec<Vec<MilgramProfile>>> = vec![Vec::new(); self.grid.len()];
        for (point, seed, outcome) in outcomes {
            let cfg = &self.grid[point];
            match outcome {
                Ok(profiles) => {
                    let q_star = profiles.iter().find(|p| p.satisfies_milgram()).map(|p| p.q);
                    for p in profiles.iter().filter(|p| p.q >= self.q_min) {
                        result.rows.push(trial_row(cfg, seed, p, q_star));
                    }
                    per_point[point].push(profiles);
                }
                Err(e) => result.failures.push(TrialFailure {
                    kind: cfg.kind(),
                    parameter: cfg.parameter(),
                    seed,
                    message: e.to_string(),
                }),
            }
        }
        for (point, trials) in per_point.iter().enumerate() {
            let cfg = &self.grid[point];
            if trials.is_empty() {
                return Err(Error::Generation(format!(
                    "every trial failed for {} at parameter {}",
                    cfg.kind(),
                    cfg.parameter()
                )));
            }
            result
                .aggregates
                .extend(aggregate_rows(cfg, trials, self.q_min));
        }

        let order = |kind: &str, parameter: f64| (kind.to_owned(), ordered(parameter));
        result
            .rows
            .sort_by_key(|r| (order(r.kind, r.parameter), r.seed, r.q));
        result
            .aggregates
            .sort_by_key(|r| (order(r.kind, r.parameter), r.q));
        result
            .failures
            .sort_by_key(|r| (order(r.kind, r.parameter), r.seed));
        Ok(result)
    }
}

/// Total order key for finite sweep parameters.
fn ordered(x: f64) -> i64 {
    let bits = x.to_bits() as i64;
    bits ^ (((bits >> 63) as u64) >> 1) as i64
}

fn trial_row(
    cfg: &GeneratorConfig,
    seed: u64,
    p: &MilgramProfile,
    q_star: Option<usize>,
) -> TrialRow {
    TrialRow {
        kind: cfg.kind(),
        parameter: cfg.parameter(),
        seed,
        q: p.q,
        s_bar: p.s_bar,
        m_q: p.m_q_f64(),
        log_ratio: p.log_ratio,
        c_values: p.c_values.values().map(|c| c.value).collect(),
        degenerate: p.c_values.values().map(|c| c.degenerate).collect(),
        x: p.x,
        y: p.y,
        q_star,
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn aggregate_rows(
    cfg: &GeneratorConfig,
    trials: &[Vec<MilgramProfile>],
    q_min: usize,
) -> Vec<AggregateRow> {
    let n = cfg.n_nodes as f64;
    let q_count = trials[0].len();
    let stats: Vec<(usize, f64, f64, f64, f64)> = (0..q_count)
        .map(|i| {
            let m: Vec<f64> = trials.iter().map(|t| t[i].m_q_f64()).collect();
            let x: Vec<f64> = trials.iter().map(|t| t[i].x).collect();
            let (mean_m, std_m) = mean_std(&m);
            let (mean_x, std_x) = mean_std(&x);
            (trials[0][i].q, mean_m, std_m, mean_x, std_x)
        })
        .collect();
    let q_star = stats.iter().find(|s| s.1 / n >= 1.0).map(|s| s.0);
    stats
        .into_iter()
        .filter(|s| s.0 >= q_min)
        .map(|(q, mean_m, std_m, mean_x, std_x)| {
            let positive = mean_m > 0.0;
            AggregateRow {
                kind: cfg.kind(),
                parameter: cfg.parameter(),
                q,
                trials: trials.len(),
                mean_m_q: mean_m,
                std_m_q: std_m,
                log_ratio: positive.then(|| (mean_m / n).log10()),
                mean_x,
                std_x,
                y: positive.then(|| mean_m.log10()),
                q_star,
            }
        })
        .collect()
}

/// Milgram curves: rows for every `q` in `2..=q_max`.
pub fn sweep_milgram(
    grid: &[GeneratorConfig],
    q_max: usize,
    trials: usize,
    base_seed: u64,
) -> Result<SweepResult> {
    Sweep::new(grid.to_vec(), q_max, trials, base_seed).run()
}

/// `X`–`Y` clouds: rows for every `q` in `3..=q_max`.
pub fn sweep_xy(
    grid: &[GeneratorConfig],
    q_max: usize,
    trials: usize,
    base_seed: u64,
) -> Result<SweepResult> {
    let mut sweep = Sweep::new(grid.to_vec(), q_max, trials, base_seed);
    sweep.q_min = 3;
    sweep.run()
}

/// Separation numbers at one grid point, without counting longer strings
/// than the answer needs.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparationSurvey {
    pub kind: &'static str,
    pub parameter: f64,
    pub n_nodes: usize,
    pub seeds: Vec<u64>,
    /// Per-trial `q*`, `None` when not reached by `q_max`.
    pub trial_q_star: Vec<Option<usize>>,
    /// `(q, mean M_q)` for `q = 2 ..` as far as was counted.
    pub mean_m_q: Vec<(usize, f64)>,
    /// Separation number of the trial-mean curve.
    pub q_star: Option<usize>,
}

impl SeparationSurvey {
    /// Share of trials with no separation number up to `q_max`.
    pub fn not_found_fraction(&self) -> f64 {
        let missing = self.trial_q_star.iter().filter(|q| q.is_none()).count();
        missing as f64 / self.trial_q_star.len() as f64
    }
}

/// Per-trial and mean-curve separation numbers for every grid point.
///
/// Each trial is first counted only up to its own crossing; the mean curve
/// then needs every trial up to the latest of those crossings (or `q_max`).
pub fn separation_survey(
    grid: &[GeneratorConfig],
    q_max: usize,
    trials: usize,
    base_seed: u64,
    counter: &StringCounter,
) -> Result<Vec<SeparationSurvey>> {
    if trials == 0 {
        return Err(Error::Config("trials must be ≥ 1".into()));
    }
    if !(2..=counter.max_edges()).contains(&q_max) {
        return Err(Error::Range(format!(
            "q_max = {q_max} outside 2..={}",
            counter.max_edges()
        )));
    }
    for cfg in grid {
        cfg.validate()?;
    }
    let s_bars = |g: &Graph, q_to: usize| -> Result<Vec<u64>> {
        let spectrum = counter.spectrum(g, q_to - 1)?;
        (2..=q_to).map(|q| spectrum.s_bar(q)).collect()
    };
    grid.iter()
        .map(|cfg| {
            let n = cfg.n_nodes;
            let seeds: Vec<u64> = (0..trials as u64)
                .map(|t| base_seed.wrapping_add(t))
                .collect();
            let first: Vec<(Graph, Option<usize>)> = seeds
                .par_iter()
                .map(|&seed| {
                    let g = generate(&cfg.clone().with_seed(seed))?;
                    let q_star = separation_number_with(&g, q_max, counter)?;
                    Ok((g, q_star))
                })
                .collect::<Result<_>>()?;
            let reach = |q_to: usize| -> Result<Vec<(usize, f64)>> {
                let curves: Vec<Vec<u64>> = first
                    .par_iter()
                    .map(|(g, _)| s_bars(g, q_to))
                    .collect::<Result<_>>()?;
                Ok((2..=q_to)
                    .map(|q| {
                        let total: f64 = curves.iter().map(|c| c[q - 2] as f64).sum();
                        (q, total / (trials as f64 * n as f64))
                    })
                    .collect())
            };
            let crossing = |curve: &[(usize, f64)]| {
                curve.iter().find(|(_, m)| m / n as f64 >= 1.0).map(|c| c.0)
            };
            let latest = first
                .iter()
                .map(|(_, q)| q.unwrap_or(q_max))
                .max()
                .unwrap_or(q_max);
            let mut mean_m_q = reach(latest)?;
            if crossing(&mean_m_q).is_none() && latest < q_max {
                mean_m_q = reach(q_max)?;
            }
            Ok(SeparationSurvey {
                kind: cfg.kind(),
                parameter: cfg.parameter(),
                n_nodes: n,
                seeds,
                trial_q_star: first.iter().map(|(_, q)| *q).collect(),
                q_star: crossing(&mean_m_q),
                mean_m_q,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitModel {
    /// `Y = A·X + B`
    Linear,
    /// `Y = D·log10(X) + E`
    LogLinear,
}

impl FitModel {
    pub fn name(self) -> &'static str {
        match self {
            FitModel::Linear => "linear",
            FitModel::LogLinear => "loglinear",
        }
    }
}

impl std::str::FromStr for FitModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(FitModel::Linear),
            "loglinear" | "log-linear" => Ok(FitModel::LogLinear),
            other => Err(Error::Fit(format!("unknown model `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub model: FitModel,
    /// Slope: `A` or `D`.
    pub coeff_1: f64,
    /// Intercept: `B` or `E`.
    pub coeff_2: f64,
    pub r_squared: f64,
    /// All `y` equal; `r_squared` is reported as 1.
    pub constant_fit: bool,
    /// `c = A·ln 10` (linear) or `d = −D` (log-linear).
    pub derived: f64,
    pub n_points: usize,
}

impl FitResult {
    pub fn derived_name(&self) -> &'static str {
        match self.model {
            FitModel::Linear => "c",
            FitModel::LogLinear => "d",
        }
    }

    fn coeff_names(&self) -> (&'static str, &'static str) {
        match self.model {
            FitModel::Linear => ("A", "B"),
            FitModel::LogLinear => ("D", "E"),
        }
    }
}

impl fmt::Display for FitResult {
    /// `key = value` lines.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.coeff_names();
        writeln!(f, "model = {}", self.model.name())?;
        writeln!(f, "{a} = {}", fmt_real(self.coeff_1))?;
        writeln!(f, "{b} = {}", fmt_real(self.coeff_2))?;
        writeln!(f, "{} = {}", self.derived_name(), fmt_real(self.derived))?;
        writeln!(f, "r_squared = {}", fmt_real(self.r_squared))?;
        writeln!(f, "constant_fit = {}", self.constant_fit)?;
        writeln!(f, "n_points = {}", self.n_points)
    }
}

/// Twelve significant digits, no trailing zeros, `.` decimal point.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..=11).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        trim_zeros(&fixed)
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s.to_owned()
    }
}

pub fn fit(model: FitModel, points: &[(f64, f64)]) -> Result<FitResult> {
    match model {
        FitModel::Linear => fit_linear(points),
        FitModel::LogLinear => fit_loglinear(points),
    }
}

/// Ordinary least squares `Y = A·X + B`.
pub fn fit_linear(points: &[(f64, f64)]) -> Result<FitResult> {
    let (slope, intercept, r_squared, constant_fit) = ols(points)?;
    Ok(FitResult {
        model: FitModel::Linear,
        coeff_1: slope,
        coeff_2: intercept,
        r_squared,
        constant_fit,
        derived: slope * std::f64::consts::LN_10,
        n_points: points.len(),
    })
}

/// Ordinary least squares `Y = D·log10(X) + E`.
pub fn fit_loglinear(points: &[(f64, f64)]) -> Result<FitResult> {
    let logged = points
        .iter()
        .enumerate()
        .map(|(row, &(x, y))| {
            if x > 0.0 && x.is_finite() {
                Ok((x.log10(), y))
            } else {
                Err(Error::Domain { row, x })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (slope, intercept, r_squared, constant_fit) = ols(&logged)?;
    Ok(FitResult {
        model: FitModel::LogLinear,
        coeff_1: slope,
        coeff_2: intercept,
        r_squared,
        constant_fit,
        derived: -slope,
        n_points: points.len(),
    })
}

/// Returns `(slope, intercept, r², constant_y)`.
fn ols(points: &[(f64, f64)]) -> Result<(f64, f64, f64, bool)> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "at least 3 points required, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 || points.iter().all(|p| p.0 == points[0].0) {
        return Err(Error::Fit(
            "degenerate abscissa: all x values are equal".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if ss_tot == 0.0 {
        return Ok((slope, intercept, 1.0, true));
    }
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum();
    let r_squared = (1.0 - ss_res / ss_tot).clamp(0.0, 1.0);
    Ok((slope, intercept, r_squared, false))
}
