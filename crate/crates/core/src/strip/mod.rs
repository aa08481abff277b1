//! The STRIP deletion process on a k-core.
//!
//! Vertices are split into W0 (degree k in the initial core), W1 (fell to
//! degree at most k later) and R (degree above k). A vertex is deletable if
//! in the initial core it has degree above 2k (D1) or lies outside W0 with
//! at least `ceil(k/2)` W0 neighbours (D2), or if now it has degree below k
//! (D3), lies in R with two or more distinct W1 neighbours (D4), or lies in
//! W1 next to a W1 vertex or a deletable R vertex (D5). Deletable is
//! permanent (D6). Each iteration removes the least-id deletable vertex.

mod state;
mod trace;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::analytics;
use crate::graph::Graph;

pub use state::{IterationRecord, Potential, StripState};
pub use trace::{trace_csv, TRACE_HEADER};
pub use verify::{enforce_parity, verify_k, KReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("vertex {vertex} has degree {degree} < k = {k}; STRIP needs a k-core")]
    MinDegree { vertex: u32, degree: usize, k: u32 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct StripConfig {
    pub k: u32,
    pub cap_multiplier: f64,
    /// Replaces `e^(-k/200)` in the iteration cap only.
    pub beta_override: Option<f64>,
    /// Vertex count the cap scales with; the core size when unset.
    pub n_ref: Option<usize>,
    /// Check the start-of-iteration properties around every change.
    pub debug_checks: bool,
    pub record_trace: bool,
}

impl StripConfig {
    pub fn new(k: u32) -> Self {
        StripConfig {
            k,
            cap_multiplier: 1.0,
            beta_override: None,
            n_ref: None,
            debug_checks: cfg!(debug_assertions),
            record_trace: true,
        }
    }

    /// `k^7 e^(-k/200)`, the weight of D in the potential.
    pub fn potential_weight(&self) -> f64 {
        (self.k as f64).powi(7) * analytics::beta(self.k)
    }

    pub fn cap(&self, core_n: usize) -> usize {
        let beta = self.beta_override.unwrap_or_else(|| analytics::beta(self.k));
        let n = self.n_ref.unwrap_or(core_n) as f64;
        (self.cap_multiplier * beta * n).ceil().max(0.0) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltReason {
    QEmpty,
    CapReached,
}

impl HaltReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            HaltReason::QEmpty => "q_empty",
            HaltReason::CapReached => "cap_reached",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum K4Action {
    None,
    /// Core id of the removed vertex.
    Deleted(u32),
    Failed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StripResult {
    pub k: u32,
    pub k_graph: Graph,
    /// K id to core id.
    pub vertex_map: Vec<u32>,
    pub halted: HaltReason,
    pub trace: Vec<IterationRecord>,
    pub k4_action: K4Action,
    pub initial_potential: Potential,
    pub iterations: usize,
    pub cap: usize,
    pub observation_violations: usize,
    /// Iterations that put more than `4k^2` vertices into Q.
    pub enqueue_bound_violations: usize,
}

#[derive(Serialize)]
struct StripSummary<'a> {
    k: u32,
    halted: &'a str,
    iterations: usize,
    cap: usize,
    k_size: usize,
    k_edges: usize,
    k4_action: K4Action,
    initial_x: f64,
    observation_violations: usize,
    enqueue_bound_violations: usize,
    report: KReport,
}

impl StripResult {
    /// JSON summary; `n` is the vertex count used for K3.
    pub fn summary_json(&self, n: usize) -> String {
        let s = StripSummary {
            k: self.k,
            halted: self.halted.as_str(),
            iterations: self.iterations,
            cap: self.cap,
            k_size: self.k_graph.n(),
            k_edges: self.k_graph.edge_count(),
            k4_action: self.k4_action,
            initial_x: self.initial_potential.x,
            observation_violations: self.observation_violations,
            enqueue_bound_violations: self.enqueue_bound_violations,
            report: verify_k(&self.k_graph, self.k, n),
        };
        serde_json::to_string_pretty(&s).expect("plain data serializes")
    }
}

/// Runs STRIP from the initial partition until Q is empty or the cap is hit.
pub fn run_strip(core: &Graph, config: &StripConfig) -> Result<StripResult, StripError> {
    let mut st = StripState::new(core, config)?;
    let cap = config.cap(core.n());
    let k = config.k;
    let bound = 4 * (k as usize) * (k as usize);
    let initial_potential = st.potential();
    let mut observation_violations = 0;
    if config.debug_checks {
        observation_violations += st.all_observation_violations();
        assert_eq!(st.recompute_potential(), initial_potential, "initial potential");
    }
    let mut trace = Vec::new();
    let mut enqueue_bound_violations = 0;
    while st.q_len() > 0 && st.iteration() < cap {
        let rec = st.step().expect("Q is nonempty");
        if rec.enqueued > bound {
            enqueue_bound_violations += 1;
        }
        if config.debug_checks {
            observation_violations += st.observation_violations(st.last_changed_region());
            debug_assert_eq!(st.recompute_potential(), st.potential(), "potential at iteration {}", rec.iteration);
        }
        if config.record_trace {
            trace.push(rec);
        }
    }
    let halted = if st.q_len() == 0 { HaltReason::QEmpty } else { HaltReason::CapReached };
    let (k_graph, vertex_map) = st.remaining();
    Ok(StripResult {
        k,
        k_graph,
        vertex_map,
        halted,
        trace,
        k4_action: K4Action::None,
        initial_potential,
        iterations: st.iteration(),
        cap,
        observation_violations,
        enqueue_bound_violations,
    })
}
