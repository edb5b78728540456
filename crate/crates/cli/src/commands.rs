use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use netstrings::experiments::{fit, fmt_real, FitPoints, Sweep};
use netstrings::generators::generate_with_report;
use netstrings::metrics::profile_from_spectrum;
use netstrings::strings::{DEFAULT_MAX_EDGES, HARD_MAX_EDGES};
use netstrings::{Error, FitModel, GeneratorConfig, Graph, Model, StringCounter, SweepResult};

use crate::args::{
    Figure, FitArgs, GenerateArgs, GraphModel, MetricsArgs, PlotArgs, SweepArgs, SweepModel,
    DEFAULT_ALPHA_GRID, DEFAULT_GAMMA_GRID,
};
use crate::svg::{self, Chart, Series};

pub const MAX_Q_ENV: &str = "NETSTRINGS_MAX_Q";

/// Longest string length any command may request.
pub fn q_ceiling() -> Result<usize> {
    match std::env::var(MAX_Q_ENV) {
        Err(_) => Ok(DEFAULT_MAX_EDGES),
        Ok(raw) => {
            let value: usize = raw
                .trim()
                .parse()
                .with_context(|| format!("{MAX_Q_ENV} = `{raw}` is not an integer"))?;
            if value > HARD_MAX_EDGES {
                bail!("{MAX_Q_ENV} = {value} exceeds the hard limit {HARD_MAX_EDGES}");
            }
            Ok(value.max(DEFAULT_MAX_EDGES))
        }
    }
}

fn counter_for(q_max: usize) -> Result<StringCounter> {
    let ceiling = q_ceiling()?;
    if !(2..=ceiling).contains(&q_max) {
        bail!("q_max = {q_max} outside 2..={ceiling} (raise the ceiling with {MAX_Q_ENV}, at most {HARD_MAX_EDGES})");
    }
    Ok(StringCounter::new().with_max_edges(ceiling)?)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    match out {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn opt_real(v: Option<f64>) -> String {
    v.map(fmt_real).unwrap_or_default()
}

fn opt_int(v: Option<usize>) -> String {
    v.map(|q| q.to_string()).unwrap_or_default()
}

pub fn generate(args: &GenerateArgs) -> Result<()> {
    let p = &args.params;
    let seed = args.shared.seed;
    let model = match args.model {
        GraphModel::Sf => Model::ScaleFree {
            gamma: args.gamma,
            k_min: p.kmin,
            k_max: p.kmax,
        },
        GraphModel::Nw | GraphModel::Ws => Model::NewmanWatts {
            k_base: p.kbase,
            alpha: args.alpha,
            rewire: args.model == GraphModel::Ws,
        },
        GraphModel::Er => Model::ErdosRenyi { edge_prob: args.p },
    };
    let cfg = GeneratorConfig {
        n_nodes: p.n,
        seed,
        model,
    };
    let (g, report) = generate_with_report(&cfg)?;

    let mut header = vec![
        "netstrings generate".to_owned(),
        format!("model = {}", cfg.kind()),
        format!("n = {}", cfg.n_nodes),
        format!("seed = {seed}"),
    ];
    match cfg.model {
        Model::ScaleFree { gamma, k_min, .. } => {
            header.push(format!("gamma = {}", fmt_real(gamma)));
            header.push(format!("kmin = {k_min}"));
            header.push(format!("kmax = {}", opt_int(cfg.resolved_k_max())));
        }
        Model::NewmanWatts { k_base, alpha, .. } => {
            header.push(format!("kbase = {k_base}"));
            header.push(format!("alpha = {}", fmt_real(alpha)));
        }
        Model::ErdosRenyi { edge_prob } => header.push(format!("p = {}", fmt_real(edge_prob))),
        Model::RingLattice { .. } | Model::Complete => {}
    }
    header.push(format!("edges = {}", g.edge_count()));
    header.push(format!("discarded_stubs = {}", report.discarded_stubs));
    header.push(format!("skipped_moves = {}", report.skipped_moves));

    let mut out = sink(args.shared.out.as_deref())?;
    out.write_all(g.to_edge_list_with_comments(&header).as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Graph::from_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

pub const METRICS_HEADER: [&str; 12] = [
    "q",
    "S_bar",
    "Tr_Rq",
    "Delta_q",
    "C_q",
    "M_q",
    "log10_Mq_over_N",
    "X",
    "Y",
    "C_q_degenerate",
    "X_degenerate",
    "Y_undefined",
];

pub fn metrics(args: &MetricsArgs) -> Result<()> {
    let g = read_graph(&args.input)?;
    let counter = counter_for(args.qmax)?;
    let spectrum = counter.spectrum(&g, args.qmax)?;

    let mut csv = csv::Writer::from_writer(sink(args.shared.out.as_deref())?);
    csv.write_record(METRICS_HEADER)?;
    for q in 2..=args.qmax {
        let stats = spectrum.statistics(q)?;
        let profile = profile_from_spectrum(&spectrum, q)?;
        let c_q = profile.c_values.get(&q);
        csv.write_record([
            q.to_string(),
            profile.s_bar.to_string(),
            stats.trace_r.to_string(),
            stats.delta.to_string(),
            opt_real(c_q.map(|c| c.value)),
            fmt_real(profile.m_q_f64()),
            opt_real(profile.log_ratio),
            fmt_real(profile.x),
            opt_real(profile.y),
            c_q.is_some_and(|c| c.degenerate).to_string(),
            profile.c_values.values().any(|c| c.degenerate).to_string(),
            profile.y.is_none().to_string(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

fn sweep_grid(args: &SweepArgs) -> Vec<GeneratorConfig> {
    let p = &args.params;
    match args.model {
        SweepModel::Sf => args
            .gamma_grid
            .clone()
            .unwrap_or_else(|| DEFAULT_GAMMA_GRID.to_vec())
            .into_iter()
            .map(|gamma| GeneratorConfig {
                n_nodes: p.n,
                seed: 0,
                model: Model::ScaleFree {
                    gamma,
                    k_min: p.kmin,
                    k_max: p.kmax,
                },
            })
            .collect(),
        SweepModel::Nw => args
            .alpha_grid
            .clone()
            .unwrap_or_else(|| DEFAULT_ALPHA_GRID.to_vec())
            .into_iter()
            .map(|alpha| GeneratorConfig::newman_watts(p.n, p.kbase, alpha, 0))
            .collect(),
    }
}

pub const TRIALS_HEADER: [&str; 13] = [
    "kind",
    "parameter",
    "seed",
    "q",
    "S_bar",
    "M_q",
    "log10_Mq_over_N",
    "C_q",
    "C_q_degenerate",
    "X",
    "X_degenerate",
    "Y",
    "q_star",
];

pub const AGGREGATE_HEADER: [&str; 11] = [
    "kind",
    "parameter",
    "q",
    "trials",
    "mean_M_q",
    "std_M_q",
    "log10_Mq_over_N",
    "mean_X",
    "std_X",
    "Y",
    "q_star",
];

pub fn write_trials(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(TRIALS_HEADER)?;
    for r in &result.rows {
        let c_q = (r.q >= 3).then(|| *r.c_values.last().expect("C(q) present for q ≥ 3"));
        let c_deg = r.q >= 3 && *r.degenerate.last().expect("flag present");
        csv.write_record([
            r.kind.to_owned(),
            fmt_real(r.parameter),
            r.seed.to_string(),
            r.q.to_string(),
            r.s_bar.to_string(),
            fmt_real(r.m_q),
            opt_real(r.log_ratio),
            opt_real(c_q),
            c_deg.to_string(),
            fmt_real(r.x),
            r.degenerate.iter().any(|&d| d).to_string(),
            opt_real(r.y),
            opt_int(r.q_star),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_aggregates(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(AGGREGATE_HEADER)?;
    for r in &result.aggregates {
        csv.write_record([
            r.kind.to_owned(),
            fmt_real(r.parameter),
            r.q.to_string(),
            r.trials.to_string(),
            fmt_real(r.mean_m_q),
            fmt_real(r.std_m_q),
            opt_real(r.log_ratio),
            fmt_real(r.mean_x),
            fmt_real(r.std_x),
            opt_real(r.y),
            opt_int(r.q_star),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_failures(result: &SweepResult, out: impl Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["kind", "parameter", "seed", "message"])?;
    for f in &result.failures {
        csv.write_record([
            f.kind.to_owned(),
            fmt_real(f.parameter),
            f.seed.to_string(),
            f.message.clone(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

/// Fit summary: per-`q` and pooled fits on trial-mean points, plus the
/// separation numbers of every grid point.
pub fn fit_summary(result: &SweepResult, model: FitModel) -> String {
    let mut text = String::new();
    let mut block = |label: String, outcome: netstrings::Result<netstrings::FitResult>| {
        text.push_str(&format!("[{label}]\npoints = aggregate\n"));
        match outcome {
            Ok(f) => text.push_str(&f.to_string()),
            Err(e) => text.push_str(&format!("model = {}\nerror = {e}\n", model.name())),
        }
        text.push('\n');
    };
    for (q, outcome) in result.fit_per_q(model, FitPoints::Aggregate) {
        block(format!("{} q={q}", model.name()), outcome);
    }
    block(
        format!("{} pooled", model.name()),
        result.fit_pooled(model, FitPoints::Aggregate),
    );

    text.push_str("[separation]\n");
    let mut parameters: Vec<(&str, f64)> = result
        .aggregates
        .iter()
        .map(|r| (r.kind, r.parameter))
        .collect();
    parameters.dedup();
    for (kind, parameter) in parameters {
        let trials = result.trial_separation_numbers(parameter);
        let missing = trials.iter().filter(|q| q.is_none()).count();
        text.push_str(&format!(
            "{kind} {} q_star = {} not_found = {missing}/{}\n",
            fmt_real(parameter),
            result
                .aggregate_separation_number(parameter)
                .map_or("none".to_owned(), |q| q.to_string()),
            trials.len()
        ));
    }
    text
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let grid = sweep_grid(args);
    let mut sweep = Sweep::new(grid, args.qmax, args.trials, args.shared.seed);
    sweep.counter = counter_for(args.qmax)?;
    let result = sweep.run()?;

    let dir = args
        .shared
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let create = |name: &str| -> Result<io::BufWriter<fs::File>> {
        let path = dir.join(name);
        let file =
            fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        Ok(io::BufWriter::new(file))
    };
    write_trials(&result, create("trials.csv")?)?;
    write_aggregates(&result, create("aggregate.csv")?)?;
    write_failures(&result, create("failures.csv")?)?;
    let model = match args.model {
        SweepModel::Sf => FitModel::Linear,
        SweepModel::Nw => FitModel::LogLinear,
    };
    create("fits.txt")?.write_all(fit_summary(&result, model).as_bytes())?;
    if args.plot {
        let table = read_table(&dir.join("aggregate.csv"))?;
        create("milgram.svg")?.write_all(figure(&table, Figure::Milgram)?.as_bytes())?;
        create("xy.svg")?.write_all(figure(&table, Figure::Xy)?.as_bytes())?;
    }
    if !result.failures.is_empty() {
        eprintln!(
            "netstrings: {} trial(s) failed; see {}",
            result.failures.len(),
            dir.join("failures.csv").display()
        );
    }
    Ok(())
}

/// Header plus rows, each row tagged with its line number in the file.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<(u64, Vec<String>)>,
}

impl Table {
    /// Index of the first of `names` present in the header.
    pub fn column(&self, names: &[&str]) -> Result<usize> {
        names
            .iter()
            .find_map(|n| self.header.iter().position(|h| h == n))
            .ok_or_else(|| anyhow!("missing column `{}`", names[0]))
    }
}

pub fn read_table(path: &Path) -> Result<Table> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let header = reader
        .headers()?
        .iter()
        .map(|h| h.trim().to_owned())
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.with_context(|| format!("reading {}", path.display()))?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push((line, record.iter().map(|f| f.trim().to_owned()).collect()));
    }
    Ok(Table { header, rows })
}

fn parse_real(text: &str, line: u64, column: &str) -> Result<f64> {
    text.parse()
        .map_err(|_| anyhow!("line {line}: column `{column}` holds `{text}`, not a number"))
}

pub fn fit_cmd(args: &FitArgs) -> Result<()> {
    let model: FitModel = args.model.parse()?;
    let table = read_table(&args.input)?;
    let x_names: Vec<&str> = if args.xcol == "x" {
        vec!["x", "X", "mean_X"]
    } else {
        vec![&args.xcol]
    };
    let y_names: Vec<&str> = if args.ycol == "y" {
        vec!["y", "Y"]
    } else {
        vec![&args.ycol]
    };
    let xi = table.column(&x_names)?;
    let yi = table.column(&y_names)?;

    let mut points = Vec::new();
    let mut lines = Vec::new();
    let mut skipped = 0;
    for (line, row) in &table.rows {
        let (xs, ys) = (
            row.get(xi).map_or("", String::as_str),
            row.get(yi).map_or("", String::as_str),
        );
        if xs.is_empty() || ys.is_empty() {
            skipped += 1;
            continue;
        }
        points.push((
            parse_real(xs, *line, &table.header[xi])?,
            parse_real(ys, *line, &table.header[yi])?,
        ));
        lines.push(*line);
    }
    if skipped > 0 {
        eprintln!("netstrings: skipped {skipped} row(s) with an empty x or y");
    }
    let result = fit(model, &points).map_err(|e| match e {
        Error::Domain { row, x } => anyhow!(
            "line {}: x = {} is not positive, so log10 x is undefined for the {} model",
            lines[row],
            fmt_real(x),
            model.name()
        ),
        other => other.into(),
    })?;
    let mut out = sink(args.shared.out.as_deref())?;
    write!(out, "{result}")?;
    out.flush()?;
    Ok(())
}

/// SVG for one of the two figure layouts, drawn from an aggregate (or
/// trial) sweep table.
pub fn figure(table: &Table, figure: Figure) -> Result<String> {
    let qi = table.column(&["q"])?;
    let number = |row: &(u64, Vec<String>), i: usize| -> Result<Option<f64>> {
        let text = row.1.get(i).map_or("", String::as_str);
        if text.is_empty() {
            return Ok(None);
        }
        parse_real(text, row.0, &table.header[i]).map(Some)
    };
    let chart = match figure {
        Figure::Milgram => {
            let pi = table.column(&["parameter"])?;
            let li = table.column(&["log10_Mq_over_N"])?;
            let ki = table.column(&["kind"])?;
            let mut series: BTreeMap<(String, i64), Series> = BTreeMap::new();
            for row in &table.rows {
                let (Some(q), Some(p), Some(l)) =
                    (number(row, qi)?, number(row, pi)?, number(row, li)?)
                else {
                    continue;
                };
                let kind = row.1[ki].clone();
                let symbol = if kind == "scale-free" { "γ" } else { "α" };
                series
                    .entry((kind.clone(), (p * 1e9).round() as i64))
                    .or_insert_with(|| Series {
                        label: format!("{symbol} = {}", fmt_real(p)),
                        points: Vec::new(),
                        connect: true,
                    })
                    .points
                    .push((q, l));
            }
            Chart {
                title: "Separation number q against log10(M_q/N)".into(),
                x_label: "q".into(),
                y_label: "log10(M_q / N)".into(),
                series: series.into_values().collect(),
                thresholds: vec![0.0],
            }
        }
        Figure::Xy => {
            let xi = table.column(&["mean_X", "X"])?;
            let yi = table.column(&["Y"])?;
            let mut series: BTreeMap<i64, Series> = BTreeMap::new();
            for row in &table.rows {
                let (Some(q), Some(x), Some(y)) =
                    (number(row, qi)?, number(row, xi)?, number(row, yi)?)
                else {
                    continue;
                };
                if q < 3.0 {
                    continue;
                }
                series
                    .entry(q as i64)
                    .or_insert_with(|| Series {
                        label: format!("q = {q}"),
                        points: Vec::new(),
                        connect: false,
                    })
                    .points
                    .push((x, y));
            }
            Chart {
                title: "X = Σ C(p) against Y = log10 M_q".into(),
                x_label: "X".into(),
                y_label: "Y".into(),
                series: series.into_values().collect(),
                thresholds: Vec::new(),
            }
        }
    };
    Ok(svg::render(&chart))
}

pub fn plot(args: &PlotArgs) -> Result<()> {
    let table = read_table(&args.input)?;
    let mut out = sink(args.shared.out.as_deref())?;
    out.write_all(figure(&table, args.figure)?.as_bytes())?;
    out.flush()?;
    Ok(())
}
