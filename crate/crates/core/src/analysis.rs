//! Closed-form RSE theory, sample-size inversion and the empirical RSE
//! harness.
//!
//! Notation: Δ triangles, Λ wedges, C = 3Δ/Λ, φ = Σ_t (σ(t) − 3), K pairs of
//! triangles sharing an edge, m edges, p the edge-sampling probability. WS
//! is evaluated at the equivalent rate `p = k/m`.
//!
//! The empirical RSE centres run estimates on their own mean μ and
//! normalises by the exact Δ: `sqrt(Σ(Δ_i − μ)² / r) / Δ`. A biased
//! estimator therefore does not pay for its bias here.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimators::{Estimator, Method, SampleRate, SamplingPlan};
use crate::exact::GraphMetrics;
use crate::graph::Graph;

// Radicands this close to zero are rounding noise around an exact zero.
const RADICAND_SLACK: f64 = 1e-12;

fn sqrt_nonnegative(radicand: f64, scale: f64, what: &'static str) -> Result<f64> {
    if radicand >= 0.0 {
        Ok(radicand.sqrt())
    } else if radicand >= -RADICAND_SLACK * scale.abs().max(1.0) {
        Ok(0.0)
    } else {
        Err(Error::Domain(what))
    }
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

fn check_triangles(delta: f64) -> Result<()> {
    if delta > 0.0 {
        Ok(())
    } else {
        Err(Error::UndefinedRse)
    }
}

/// Exact RSE of τ: `sqrt(pφ − p²(3Δ + 2K)) / 3pΔ`.
pub fn rse_tau_exact(p: f64, delta: f64, k: f64, phi: f64) -> Result<f64> {
    check_p(p)?;
    check_triangles(delta)?;
    let positive = p * phi;
    let radicand = positive - p * p * (3.0 * delta + 2.0 * k);
    Ok(sqrt_nonnegative(radicand, positive, "negative variance for tau")? / (3.0 * p * delta))
}

/// `sqrt(φ / 9pΔ²)`.
pub fn rse_tau_approx(p: f64, delta: f64, phi: f64) -> Result<f64> {
    check_p(p)?;
    check_triangles(delta)?;
    Ok((phi / (9.0 * p * delta * delta)).sqrt())
}

/// Exact RSE of ω for `k = pm` wedges drawn without replacement:
/// `sqrt((1 − C)/(pmC) · (1 − (pm − 1)/(Λ − 1)))`.
///
/// The finite-population factor is clamped at zero when `pm > Λ`, where
/// drawing without replacement would exhaust the wedge set.
pub fn rse_omega_exact(p: f64, m: f64, c: f64, wedges: f64) -> Result<f64> {
    let base = omega_base(p, m, c)?;
    let k = p * m;
    if k < 1.0 {
        return Err(Error::Domain("exact wedge-sampling RSE needs pm >= 1"));
    }
    let factor = if wedges > 1.0 {
        (1.0 - (k - 1.0) / (wedges - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok((base * factor).sqrt())
}

/// `sqrt((1 − C) / pmC)`.
pub fn rse_omega_approx(p: f64, m: f64, c: f64) -> Result<f64> {
    Ok(omega_base(p, m, c)?.sqrt())
}

fn omega_base(p: f64, m: f64, c: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::DegenerateClustering);
    }
    if p <= 0.0 || m <= 0.0 || c > 1.0 {
        return Err(Error::Domain("wedge-sampling RSE needs p, m > 0 and C in (0, 1]"));
    }
    Ok((1.0 - c) / (p * m * c))
}

/// RSE of ρ from the variance `3Δ(p² − p⁴) + 8K(p³ − p⁴)`.
///
/// This variance omits the covariance between the three closed wedges of a
/// single triangle; see [`rse_rho_full`] for the variance that includes it.
pub fn rse_rho_exact(p: f64, delta: f64, k: f64) -> Result<f64> {
    check_p(p)?;
    check_triangles(delta)?;
    let (p2, p3, p4) = (p * p, p * p * p, p * p * p * p);
    let variance = 3.0 * delta * (p2 - p4) + 8.0 * k * (p3 - p4);
    Ok(sqrt_nonnegative(variance, 3.0 * delta * p2, "negative variance for rho")? / (3.0 * p2 * delta))
}

/// `sqrt(1/(3p²Δ) + 8K/(9pΔ²))`.
pub fn rse_rho_approx(p: f64, delta: f64, k: f64) -> Result<f64> {
    check_p(p)?;
    check_triangles(delta)?;
    Ok((1.0 / (3.0 * p * p * delta) + 8.0 * k / (9.0 * p * delta * delta)).sqrt())
}

/// RSE of ρ including the within-triangle covariances:
/// `Var ρ = 3Δ(p² − p⁴) + (6Δ + 8K)(p³ − p⁴)`.
///
/// Any two closed wedges of one triangle share exactly one edge and are
/// jointly present with probability p³; there are 3 such pairs per triangle.
pub fn rse_rho_full(p: f64, delta: f64, k: f64) -> Result<f64> {
    check_p(p)?;
    check_triangles(delta)?;
    let (p2, p3, p4) = (p * p, p * p * p, p * p * p * p);
    let variance = 3.0 * delta * (p2 - p4) + (6.0 * delta + 8.0 * k) * (p3 - p4);
    Ok(sqrt_nonnegative(variance, 3.0 * delta * p2, "negative variance for rho")? / (3.0 * p2 * delta))
}

/// Exact and approximate theoretical RSE of `method` at edge rate `p`.
pub fn theoretical_rse(method: Method, p: f64, metrics: &GraphMetrics) -> Result<(f64, f64)> {
    let delta = metrics.triangles as f64;
    let k = metrics.shared_edge_pairs as f64;
    let phi = metrics.phi as f64;
    let m = metrics.m as f64;
    Ok(match method {
        Method::Ews => (rse_tau_exact(p, delta, k, phi)?, rse_tau_approx(p, delta, phi)?),
        Method::Es => (rse_rho_exact(p, delta, k)?, rse_rho_approx(p, delta, k)?),
        Method::Ws => {
            let c = metrics.clustering_coefficient();
            (
                rse_omega_exact(p, m, c, metrics.wedges as f64)?,
                rse_omega_approx(p, m, c)?,
            )
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSizeRequest {
    pub target_rse: f64,
    pub metrics: GraphMetrics,
}

impl SampleSizeRequest {
    pub fn new(target_rse: f64, metrics: GraphMetrics) -> Result<Self> {
        if !(target_rse > 0.0 && target_rse <= 1.0) {
            return Err(Error::Domain("target RSE must lie in (0, 1]"));
        }
        if metrics.m == 0 || metrics.triangles == 0 {
            return Err(Error::UndefinedRse);
        }
        Ok(SampleSizeRequest { target_rse, metrics })
    }
}

/// Entities (edges for EWS and ES, wedges for WS) needed for the
/// approximate RSE to reach the target, rounded up.
pub fn sample_size_for_rse(request: &SampleSizeRequest, method: Method) -> Result<u64> {
    let r2 = request.target_rse * request.target_rse;
    let metrics = &request.metrics;
    let m = metrics.m as f64;
    let delta = metrics.triangles as f64;
    let size = match method {
        Method::Ews => m * metrics.phi as f64 / (9.0 * r2 * delta * delta),
        Method::Ws => {
            let c = metrics.clustering_coefficient();
            if c <= 0.0 {
                return Err(Error::DegenerateClustering);
            }
            (1.0 - c) / (r2 * c)
        }
        Method::Es => {
            // r² = x²/(3Δ) + x·8K/(9Δ²) with x = 1/p; positive root in the
            // cancellation-free form 2c/(b + sqrt(b² + 4ac)).
            let a = 1.0 / (3.0 * delta);
            let b = 8.0 * metrics.shared_edge_pairs as f64 / (9.0 * delta * delta);
            let disc = b * b + 4.0 * a * r2;
            if disc <= 0.0 {
                return Err(Error::Domain("non-positive discriminant"));
            }
            let x = 2.0 * r2 / (b + disc.sqrt());
            m / x
        }
    };
    Ok((size.ceil() as u64).max(1))
}

/// Approximate RSE of `method` with `size` sampled entities.
pub fn approx_rse_for_size(method: Method, size: u64, metrics: &GraphMetrics) -> Result<f64> {
    let m = metrics.m as f64;
    let p = size as f64 / m;
    let delta = metrics.triangles as f64;
    match method {
        Method::Ews => rse_tau_approx(p.min(1.0), delta, metrics.phi as f64),
        Method::Es => rse_rho_approx(p.min(1.0), delta, metrics.shared_edge_pairs as f64),
        Method::Ws => rse_omega_approx(p, m, metrics.clustering_coefficient()),
    }
}

/// One configuration of the empirical harness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RseRow {
    pub method: Method,
    pub p: Option<f64>,
    pub k: Option<u64>,
    /// Mean sampled entities per run.
    pub sampled: f64,
    pub empirical_rse: f64,
    pub exact_rse: f64,
    pub approx_rse: f64,
    pub mean_estimate: f64,
    pub runs: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RseReport {
    pub rows: Vec<RseRow>,
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Mean and RMS deviation about the mean.
pub fn mean_and_rms_deviation(values: &[f64]) -> (f64, f64) {
    let r = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / r;
    let ss = compensated_sum(values.iter().map(|x| (x - mean) * (x - mean)));
    (mean, (ss / r).sqrt())
}

/// Per-trial estimates of a plan, in trial order. Trial `i` runs on
/// `RandomSource::new(plan.seed).derive(i)`.
pub fn run_trials(g: &Graph, plan: &SamplingPlan) -> Result<Vec<(f64, u64)>> {
    let estimator = Estimator::new(g, *plan)?;
    Ok((0..plan.runs as u64)
        .into_par_iter()
        .map(|i| {
            let r = estimator.run_trial(i);
            (r.estimate, r.entities_sampled)
        })
        .collect())
}

pub fn empirical_rse(g: &Graph, plan: &SamplingPlan, metrics: &GraphMetrics) -> Result<RseRow> {
    if plan.runs < 2 {
        return Err(Error::InvalidPlan("empirical RSE needs at least 2 runs"));
    }
    if metrics.triangles == 0 {
        return Err(Error::UndefinedRse);
    }
    let trials = run_trials(g, plan)?;
    let estimates: Vec<f64> = trials.iter().map(|t| t.0).collect();
    let (mean, rms) = mean_and_rms_deviation(&estimates);
    let sampled = compensated_sum(trials.iter().map(|t| t.1 as f64)) / trials.len() as f64;

    let (p, k, theory_p) = match plan.rate {
        SampleRate::Probability(p) => (Some(p.get()), None, p.get()),
        SampleRate::Wedges(k) => (None, Some(k), k as f64 / metrics.m as f64),
    };
    let (exact_rse, approx_rse) = theoretical_rse(plan.method, theory_p, metrics)?;
    Ok(RseRow {
        method: plan.method,
        p,
        k,
        sampled,
        empirical_rse: rms / metrics.triangles as f64,
        exact_rse,
        approx_rse,
        mean_estimate: mean,
        runs: plan.runs,
        seed: plan.seed,
    })
}

/// Wedge count matched to edge rate `p`: `⌈pm⌉`.
pub fn wedges_for_rate(p: f64, m: u64) -> u64 {
    ((p * m as f64).ceil() as u64).max(1)
}

/// One row per `(method, p)`, method-major. Every row uses `seed`.
pub fn rse_sweep(
    g: &Graph,
    metrics: &GraphMetrics,
    methods: &[Method],
    ps: &[f64],
    runs: usize,
    seed: u64,
) -> Result<RseReport> {
    if ps.is_empty() {
        return Err(Error::InvalidPlan("sweep needs at least one p"));
    }
    if methods.is_empty() {
        return Err(Error::InvalidPlan("sweep needs at least one method"));
    }
    let mut rows = Vec::with_capacity(methods.len() * ps.len());
    for &method in methods {
        for &p in ps {
            let plan = match method {
                Method::Ws => {
                    check_p(p)?;
                    SamplingPlan::new(method, None, Some(wedges_for_rate(p, metrics.m)), seed, runs)?
                }
                _ => SamplingPlan::new(method, Some(p), None, seed, runs)?,
            };
            let mut row = empirical_rse(g, &plan, metrics)?;
            row.p = Some(p);
            rows.push(row);
        }
    }
    Ok(RseReport { rows })
}
