//! Sampling estimators for the triangle count.
//!
//! * EWS: edge-based wedge sampling. Bernoulli(p) edge sample, one random
//!   wedge per sampled edge hinged at its lower-degree endpoint, and a
//!   closure check in the full graph. Estimate `τ / 3p`.
//! * ES: Bernoulli(p) edge sample, count every wedge of the sample whose
//!   closing edge exists in the full graph. Estimate `Λ̂⁺ / 3p²`.
//! * WS: `k` wedges drawn uniformly (with replacement) from all Λ wedges.
//!   Estimate `ωΛ / 3k`.
//!
//! Each estimator is split into a sampling step driven by a [`RandomSource`]
//! and a deterministic tally over the sampled entities, so that the tallies
//! can also be fed hand-picked samples.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};
use crate::rng::RandomSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Ews,
    Es,
    Ws,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ews, Method::Es, Method::Ws];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ews => "ews",
            Method::Es => "es",
            Method::Ws => "ws",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ews" => Ok(Method::Ews),
            "es" => Ok(Method::Es),
            "ws" => Ok(Method::Ws),
            other => Err(format!("unknown method {other:?} (expected ews, es or ws)")),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Edge-sampling probability in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p <= 1.0 {
            Ok(Probability(p))
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The per-method sample size: a probability for EWS/ES, a wedge count for WS.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SampleRate {
    Probability(Probability),
    Wedges(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingPlan {
    pub method: Method,
    pub rate: SampleRate,
    pub seed: u64,
    pub runs: usize,
}

impl SamplingPlan {
    /// Validates that exactly the parameter the method needs is present.
    pub fn new(method: Method, p: Option<f64>, k: Option<u64>, seed: u64, runs: usize) -> Result<Self> {
        if runs < 1 {
            return Err(Error::InvalidPlan("runs must be at least 1"));
        }
        let rate = match (method, p, k) {
            (Method::Ews | Method::Es, Some(p), None) => SampleRate::Probability(Probability::new(p)?),
            (Method::Ews | Method::Es, _, _) => {
                return Err(Error::InvalidPlan("ews and es take a sampling probability p and no k"))
            }
            (Method::Ws, None, Some(k)) if k >= 1 => SampleRate::Wedges(k),
            (Method::Ws, None, Some(_)) => return Err(Error::InvalidWedgeCount),
            (Method::Ws, _, _) => return Err(Error::InvalidPlan("ws takes a wedge count k and no p")),
        };
        Ok(SamplingPlan {
            method,
            rate,
            seed,
            runs,
        })
    }
}

/// Outcome of one estimator run.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateResult {
    pub method: Method,
    pub rate: SampleRate,
    pub seed: u64,
    /// τ for EWS, Λ̂⁺ for ES, ω for WS.
    pub raw_statistic: u64,
    /// Edges for EWS and ES, wedges for WS.
    pub entities_sampled: u64,
    pub estimate: f64,
    pub elapsed_seconds: Option<f64>,
}

impl Serialize for EstimateResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EstimateResult", 7)?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("p_or_k", &self.rate)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("raw", &self.raw_statistic)?;
        st.serialize_field("sampled", &self.entities_sampled)?;
        st.serialize_field("estimate", &self.estimate)?;
        st.serialize_field("seconds", &self.elapsed_seconds)?;
        st.end()
    }
}

impl EstimateResult {
    pub fn from_ews(tau: u64, sampled: u64, p: Probability, seed: u64) -> Self {
        EstimateResult {
            method: Method::Ews,
            rate: SampleRate::Probability(p),
            seed,
            raw_statistic: tau,
            entities_sampled: sampled,
            estimate: tau as f64 / (3.0 * p.get()),
            elapsed_seconds: None,
        }
    }

    pub fn from_es(closed: u64, sampled: u64, p: Probability, seed: u64) -> Self {
        let p = p.get();
        EstimateResult {
            method: Method::Es,
            rate: SampleRate::Probability(Probability(p)),
            seed,
            raw_statistic: closed,
            entities_sampled: sampled,
            estimate: closed as f64 / (3.0 * p * p),
            elapsed_seconds: None,
        }
    }

    pub fn from_ws(closed: u64, k: u64, wedges: u64, seed: u64) -> Self {
        EstimateResult {
            method: Method::Ws,
            rate: SampleRate::Wedges(k),
            seed,
            raw_statistic: closed,
            entities_sampled: k,
            estimate: closed as f64 * wedges as f64 / (3.0 * k as f64),
            elapsed_seconds: None,
        }
    }

    fn timed(mut self, start: Instant) -> Self {
        self.elapsed_seconds = Some(start.elapsed().as_secs_f64());
        self
    }
}

/// Includes each canonical edge independently with probability `p`, in
/// canonical edge order.
///
/// For `p < 1` the gaps between selected edges are drawn geometrically, so
/// the cost is `O(n + pm)` random draws instead of `m`.
pub fn bernoulli_edge_sample(g: &Graph, p: Probability, rng: &mut RandomSource) -> Vec<Edge> {
    let p = p.get();
    if p >= 1.0 {
        return g.edges().collect();
    }
    let n = g.vertex_count();
    let expected = (p * g.edge_count() as f64) as usize;
    let mut out = Vec::with_capacity(expected + expected / 8 + 16);
    let (mut u, mut pos) = (0usize, 0usize);
    'draw: loop {
        let mut skip = rng.geometric_skip(p);
        loop {
            if u >= n {
                break 'draw;
            }
            let forward = g.forward_neighbors(u as VertexId);
            let remaining = (forward.len() - pos) as u64;
            if skip < remaining {
                pos += skip as usize;
                out.push(Edge {
                    u: u as VertexId,
                    v: forward[pos],
                });
                pos += 1;
                continue 'draw;
            }
            skip -= remaining;
            u += 1;
            pos = 0;
        }
    }
    out
}

/// Picks `w` uniformly from the neighbors of `hinge` other than `exclude`.
/// `hinge` must have degree at least 2 and `exclude` must be a neighbor.
#[inline]
pub fn uniform_wedge_partner(g: &Graph, hinge: VertexId, exclude: VertexId, rng: &mut RandomSource) -> VertexId {
    let list = g.neighbors(hinge);
    let skip = list.binary_search(&exclude).expect("exclude is a neighbor of hinge");
    let mut i = rng.uniform_index(list.len() - 1);
    if i >= skip {
        i += 1;
    }
    list[i]
}

/// EWS tally over a fixed edge sample.
///
/// `pick(hinge, other)` returns the far end of the wedge extending each
/// edge at its lower-degree endpoint. Edges whose hinge is a pendant vertex
/// add nothing: they lie on no triangle.
pub fn ews_tau<F>(g: &Graph, sample: &[Edge], mut pick: F) -> u64
where
    F: FnMut(VertexId, VertexId) -> VertexId,
{
    let mut tau = 0u64;
    for &e in sample {
        let (hinge, other) = g.low_degree_endpoint(e);
        let d = g.degree(hinge);
        if d < 2 {
            continue;
        }
        let w = pick(hinge, other);
        debug_assert!(w != other && g.has_edge(hinge, w));
        if g.has_edge(other, w) {
            tau += d as u64 - 1;
        }
    }
    tau
}

pub fn ews_estimate(g: &Graph, p: Probability, rng: &mut RandomSource) -> EstimateResult {
    let start = Instant::now();
    let seed = rng.seed();
    let sample = bernoulli_edge_sample(g, p, rng);
    let tau = ews_tau(g, &sample, |hinge, other| uniform_wedge_partner(g, hinge, other, rng));
    EstimateResult::from_ews(tau, sample.len() as u64, p, seed).timed(start)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SampledWedges {
    pub wedges: u64,
    pub closed: u64,
}

/// Enumerates each wedge of the sampled subgraph once, at its hinge, and
/// counts those whose closing edge is present in `g`.
pub fn closed_wedges_in_sample(g: &Graph, sample: &[Edge]) -> SampledWedges {
    let mut half_edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(sample.len() * 2);
    for e in sample {
        half_edges.push((e.u, e.v));
        half_edges.push((e.v, e.u));
    }
    half_edges.sort_unstable();
    half_edges.dedup();

    let mut out = SampledWedges::default();
    for group in half_edges.chunk_by(|a, b| a.0 == b.0) {
        for (i, &(_, a)) in group.iter().enumerate() {
            for &(_, b) in &group[i + 1..] {
                out.wedges += 1;
                if g.has_edge(a, b) {
                    out.closed += 1;
                }
            }
        }
    }
    out
}

pub fn es_estimate(g: &Graph, p: Probability, rng: &mut RandomSource) -> EstimateResult {
    let start = Instant::now();
    let seed = rng.seed();
    let sample = bernoulli_edge_sample(g, p, rng);
    let wedges = closed_wedges_in_sample(g, &sample);
    EstimateResult::from_es(wedges.closed, sample.len() as u64, p, seed).timed(start)
}

/// Draws wedges uniformly from all wedges of a graph.
///
/// Hinges are chosen in proportion to `C(d_v, 2)` through a cumulative
/// table (binary search), then an unordered pair of distinct neighbors is
/// chosen uniformly.
#[derive(Clone, Debug)]
pub struct WedgeSampler {
    cumulative: Vec<u64>,
}

/// A wedge `ends.0 - hinge - ends.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub hinge: VertexId,
    pub ends: (VertexId, VertexId),
}

impl WedgeSampler {
    pub fn new(g: &Graph) -> Result<Self> {
        let mut acc = 0u64;
        let cumulative: Vec<u64> = (0..g.vertex_count() as VertexId)
            .map(|v| {
                let d = g.degree(v) as u64;
                acc += d * d.saturating_sub(1) / 2;
                acc
            })
            .collect();
        if acc == 0 {
            return Err(Error::NoWedges);
        }
        Ok(WedgeSampler { cumulative })
    }

    pub fn cumulative(&self) -> &[u64] {
        &self.cumulative
    }

    pub fn total_wedges(&self) -> u64 {
        *self.cumulative.last().expect("non-empty graph")
    }

    pub fn sample(&self, g: &Graph, rng: &mut RandomSource) -> Wedge {
        let target = rng.uniform_below(self.total_wedges());
        let hinge = self.cumulative.partition_point(|&c| c <= target) as VertexId;
        let list = g.neighbors(hinge);
        let i = rng.uniform_index(list.len());
        let mut j = rng.uniform_index(list.len() - 1);
        if j >= i {
            j += 1;
        }
        Wedge {
            hinge,
            ends: (list[i], list[j]),
        }
    }
}

/// ω: the number of closed wedges among `wedges`.
pub fn ws_closed_count(g: &Graph, wedges: impl IntoIterator<Item = Wedge>) -> u64 {
    wedges
        .into_iter()
        .filter(|w| g.has_edge(w.ends.0, w.ends.1))
        .count() as u64
}

pub fn ws_estimate(g: &Graph, k: u64, rng: &mut RandomSource) -> Result<EstimateResult> {
    let sampler = WedgeSampler::new(g)?;
    ws_estimate_with(g, &sampler, k, rng)
}

/// WS with a prebuilt sampler, for repeated runs on one graph.
pub fn ws_estimate_with(g: &Graph, sampler: &WedgeSampler, k: u64, rng: &mut RandomSource) -> Result<EstimateResult> {
    if k < 1 {
        return Err(Error::InvalidWedgeCount);
    }
    let start = Instant::now();
    let seed = rng.seed();
    let omega = ws_closed_count(g, (0..k).map(|_| sampler.sample(g, rng)));
    Ok(EstimateResult::from_ws(omega, k, sampler.total_wedges(), seed).timed(start))
}

/// A plan bound to a graph, with any per-graph preprocessing done once.
pub struct Estimator<'g> {
    graph: &'g Graph,
    plan: SamplingPlan,
    wedge_sampler: Option<WedgeSampler>,
}

impl<'g> Estimator<'g> {
    pub fn new(graph: &'g Graph, plan: SamplingPlan) -> Result<Self> {
        let wedge_sampler = match plan.method {
            Method::Ws => Some(WedgeSampler::new(graph)?),
            _ => None,
        };
        Ok(Estimator {
            graph,
            plan,
            wedge_sampler,
        })
    }

    pub fn plan(&self) -> &SamplingPlan {
        &self.plan
    }

    pub fn run(&self, rng: &mut RandomSource) -> EstimateResult {
        match (self.plan.rate, &self.wedge_sampler) {
            (SampleRate::Probability(p), _) if self.plan.method == Method::Ews => ews_estimate(self.graph, p, rng),
            (SampleRate::Probability(p), _) => es_estimate(self.graph, p, rng),
            (SampleRate::Wedges(k), Some(sampler)) => {
                ws_estimate_with(self.graph, sampler, k, rng).expect("k validated by the plan")
            }
            (SampleRate::Wedges(_), None) => unreachable!("ws plans always carry a sampler"),
        }
    }

    /// Trial `i` of the plan, on the child stream `derive(i)` of the plan seed.
    pub fn run_trial(&self, trial: u64) -> EstimateResult {
        let mut rng = RandomSource::new(self.plan.seed).derive(trial);
        self.run(&mut rng)
    }
}

/// Runs a single estimate on the plan's base seed.
pub fn estimate(g: &Graph, plan: &SamplingPlan) -> Result<EstimateResult> {
    let estimator = Estimator::new(g, *plan)?;
    Ok(estimator.run(&mut RandomSource::new(plan.seed)))
}
