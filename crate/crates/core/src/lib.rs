//! Triangle-count estimation for large sparse graphs.
//!
//! The crate offers an exact counter ([`exact`]), three sampling estimators
//! ([`estimators`]): edge-based wedge sampling (EWS), edge sampling with
//! closed-wedge counting (ES) and uniform wedge sampling (WS), plus the
//! variance theory and trial harness that compare them ([`analysis`]).

pub mod analysis;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod graph;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};
pub use estimators::{EstimateResult, Method, Probability, SampleRate, SamplingPlan};
pub use exact::GraphMetrics;
pub use graph::{load_edge_list, load_edge_list_file, Edge, Graph, VertexId};
pub use rng::RandomSource;
