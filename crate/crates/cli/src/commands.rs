use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use trisample::analysis::{rse_sweep, sample_size_for_rse, RseRow, SampleSizeRequest};
use trisample::estimators::estimate;
use trisample::exact::compute_metrics;
use trisample::{load_edge_list_file, Graph, GraphMetrics, Method, SamplingPlan};

use crate::Format;

fn load(path: &Path) -> Result<Graph> {
    load_edge_list_file(path).with_context(|| format!("loading {}", path.display()))
}

fn render_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    Ok(String::from_utf8(writer.into_inner()?)?)
}

fn render_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// Column order of the dataset table. Ratios are empty when Δ = 0.
#[derive(Serialize)]
struct StatsCsvRow {
    n: u64,
    m: u64,
    delta: u64,
    lambda: u64,
    #[serde(rename = "C")]
    c: f64,
    tri_per_edge: f64,
    phi_over_3delta: Option<f64>,
    #[serde(rename = "K_over_delta")]
    k_over_delta: Option<f64>,
}

#[derive(Serialize)]
struct StatsJson {
    #[serde(flatten)]
    row: StatsCsvRow,
    phi: u64,
    #[serde(rename = "K")]
    k: u64,
}

fn stats_row(m: &GraphMetrics) -> StatsCsvRow {
    let has_triangles = m.triangles > 0;
    StatsCsvRow {
        n: m.n,
        m: m.m,
        delta: m.triangles,
        lambda: m.wedges,
        c: m.clustering_coefficient(),
        tri_per_edge: m.triangles_per_edge(),
        phi_over_3delta: has_triangles.then(|| m.phi_over_3delta()),
        k_over_delta: has_triangles.then(|| m.k_over_delta()),
    }
}

pub fn run_stats(path: &Path, format: Format) -> Result<String> {
    let g = load(path)?;
    let metrics = compute_metrics(&g);
    match format {
        Format::Csv => render_csv(&[stats_row(&metrics)]),
        Format::Json => render_json(&StatsJson {
            row: stats_row(&metrics),
            phi: metrics.phi,
            k: metrics.shared_edge_pairs,
        }),
    }
}

pub fn run_estimate(path: &Path, plan: &SamplingPlan, timing: bool, format: Format) -> Result<String> {
    let g = load(path)?;
    let mut result = estimate(&g, plan)?;
    if !timing {
        result.elapsed_seconds = None;
    }
    match format {
        Format::Csv => render_csv(&[result]),
        Format::Json => render_json(&result),
    }
}

#[derive(Serialize)]
struct SweepCsvRow {
    method: Method,
    p: Option<f64>,
    k: Option<u64>,
    sampled: f64,
    empirical_rse: f64,
    exact_rse: f64,
    approx_rse: f64,
    mean_estimate: f64,
    runs: usize,
}

impl From<&RseRow> for SweepCsvRow {
    fn from(r: &RseRow) -> Self {
        SweepCsvRow {
            method: r.method,
            p: r.p,
            k: r.k,
            sampled: r.sampled,
            empirical_rse: r.empirical_rse,
            exact_rse: r.exact_rse,
            approx_rse: r.approx_rse,
            mean_estimate: r.mean_estimate,
            runs: r.runs,
        }
    }
}

pub fn run_rse_sweep(path: &Path, methods: &[Method], ps: &[f64], runs: usize, seed: u64, format: Format) -> Result<String> {
    let g = load(path)?;
    let metrics = compute_metrics(&g);
    let report = rse_sweep(&g, &metrics, methods, ps, runs, seed)?;
    match format {
        Format::Csv => render_csv(&report.rows.iter().map(SweepCsvRow::from).collect::<Vec<_>>()),
        Format::Json => render_json(&report),
    }
}

pub enum MetricsSource {
    Graph(PathBuf),
    Inline(GraphMetrics),
}

/// Parses `n,m,delta,lambda,phi,K`. Values may use exponent notation and
/// are rounded to the nearest integer.
pub fn parse_inline_metrics(text: &str) -> Result<GraphMetrics> {
    let values: Vec<f64> = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().with_context(|| format!("invalid metric value {t:?}"))
        })
        .collect::<Result<_>>()?;
    if values.len() != 6 {
        bail!("--metrics takes six values n,m,delta,lambda,phi,K; got {}", values.len());
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        bail!("--metrics values must be finite and non-negative");
    }
    let v: Vec<u64> = values.iter().map(|x| x.round() as u64).collect();
    Ok(GraphMetrics::from_counts(v[0], v[1], v[2], v[3], v[4], v[5]))
}

#[derive(Serialize)]
struct SampleSizeRow {
    target_rse: f64,
    m: u64,
    es: u64,
    ws: Option<u64>,
    ews: u64,
    ws_over_ews: Option<f64>,
}

pub fn run_sample_size(source: MetricsSource, rse: f64, format: Format) -> Result<String> {
    let metrics = match source {
        MetricsSource::Graph(path) => compute_metrics(&load(&path)?),
        MetricsSource::Inline(metrics) => metrics,
    };
    let request = SampleSizeRequest::new(rse, metrics)?;
    let ews = sample_size_for_rse(&request, Method::Ews)?;
    let es = sample_size_for_rse(&request, Method::Es)?;
    let ws = match sample_size_for_rse(&request, Method::Ws) {
        Ok(size) => Some(size),
        Err(trisample::Error::DegenerateClustering) => {
            eprintln!("warning: clustering coefficient is zero; ws sample size unavailable");
            None
        }
        Err(e) => return Err(e.into()),
    };
    let row = SampleSizeRow {
        target_rse: rse,
        m: metrics.m,
        es,
        ws,
        ews,
        ws_over_ews: ws.map(|w| w as f64 / ews as f64),
    };
    match format {
        Format::Csv => render_csv(&[row]),
        Format::Json => render_json(&row),
    }
}
