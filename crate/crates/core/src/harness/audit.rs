use std::str::FromStr;

use serde::Serialize;

use super::pipeline::CapPolicy;
use crate::analytics::{self, ThresholdParams};
use crate::graph::Graph;
use crate::kcore::{audit_lw0, branching_ratio, k_core};
use crate::kfactor::{audit_properties, PropertyAuditConfig};
use crate::strip::{run_strip, trace_csv, StripConfig, StripError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    /// Initial-core quantities against their reference lines.
    Lw0,
    /// P1-P6 on the input taken as K.
    P,
    /// Empirical W0 branching ratio of the input's k-core.
    Elbr,
    /// A checked STRIP run on the input's k-core.
    Trace,
}

impl FromStr for AuditKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lw0" => Ok(AuditKind::Lw0),
            "P" | "p" => Ok(AuditKind::P),
            "elbr" => Ok(AuditKind::Elbr),
            "trace" => Ok(AuditKind::Trace),
            _ => Err(format!("unknown audit {s:?}; expected lw0, P, elbr or trace")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditOptions {
    pub k: u32,
    /// Vertex count of the graph the input came from; the input's own
    /// vertex count when unset.
    pub n: Option<usize>,
    /// Edge density of the source `G(n, c/n)`, for the predicted branching ratio.
    pub c: Option<f64>,
    pub property: PropertyAuditConfig,
    pub cap: CapPolicy,
}

impl AuditOptions {
    pub fn new(k: u32) -> Self {
        AuditOptions { k, n: None, c: None, property: PropertyAuditConfig::default(), cap: CapPolicy::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ElbrReport {
    pub k: u32,
    pub core_size: usize,
    /// `None` when W0 spans no edges.
    pub ratio: Option<f64>,
    pub one_minus_alpha: f64,
    pub below_one: Option<bool>,
    pub below_one_minus_alpha: Option<bool>,
    /// `g(x)` at the `x` belonging to `c`, when `c` is given.
    pub predicted: Option<f64>,
    pub abs_diff: Option<f64>,
}

pub fn elbr_report(g: &Graph, k: u32, c: Option<f64>) -> ElbrReport {
    let core = k_core(g, k).core;
    let ratio = branching_ratio(&core, k);
    let alpha = ThresholdParams::new(k).map(|p| p.alpha).unwrap_or(f64::NAN);
    let predicted = c.and_then(|c| analytics::x_of_c(c, k).and_then(|x| analytics::g_branching(x, k)).ok());
    ElbrReport {
        k,
        core_size: core.n(),
        ratio,
        one_minus_alpha: 1.0 - alpha,
        below_one: ratio.map(|r| r < 1.0),
        below_one_minus_alpha: ratio.map(|r| r < 1.0 - alpha),
        predicted,
        abs_diff: ratio.zip(predicted).map(|(r, p)| (r - p).abs()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceReport {
    pub k: u32,
    pub core_size: usize,
    pub halted: &'static str,
    pub iterations: usize,
    pub cap: usize,
    pub k_size: usize,
    pub observation_violations: usize,
    pub enqueue_bound_violations: usize,
    /// Logged steps where `X != A + k B + k^7 beta D` exactly.
    pub potential_mismatches: usize,
}

/// A report as JSON, plus the trace CSV for the trace audit.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditOutput {
    pub json: String,
    pub csv: Option<String>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AuditError {
    #[error(transparent)]
    Strip(#[from] StripError),
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

pub fn audit(g: &Graph, kind: AuditKind, opts: &AuditOptions) -> Result<AuditOutput, AuditError> {
    let k = opts.k;
    let n = opts.n.unwrap_or(g.n());
    match kind {
        AuditKind::Lw0 => {
            let core = k_core(g, k).core;
            Ok(AuditOutput { json: json(&audit_lw0(&core, n, k)), csv: None })
        }
        AuditKind::P => {
            let mut cfg = opts.property.clone();
            cfg.n_ref = cfg.n_ref.or(opts.n);
            Ok(AuditOutput { json: audit_properties(g, k, &cfg).to_json(), csv: None })
        }
        AuditKind::Elbr => Ok(AuditOutput { json: json(&elbr_report(g, k, opts.c)), csv: None }),
        AuditKind::Trace => {
            let core = k_core(g, k).core;
            let cfg = StripConfig {
                cap_multiplier: opts.cap.cap_multiplier,
                beta_override: opts.cap.beta_override,
                n_ref: Some(n),
                debug_checks: true,
                record_trace: true,
                ..StripConfig::new(k)
            };
            let r = run_strip(&core, &cfg)?;
            let w = cfg.potential_weight();
            let kf = k as f64;
            let potential_mismatches =
                r.trace.iter().filter(|t| t.x != t.a as f64 + kf * t.b as f64 + w * t.d as f64).count();
            let report = TraceReport {
                k,
                core_size: core.n(),
                halted: r.halted.as_str(),
                iterations: r.iterations,
                cap: r.cap,
                k_size: r.k_graph.n(),
                observation_violations: r.observation_violations,
                enqueue_bound_violations: r.enqueue_bound_violations,
                potential_mismatches,
            };
            Ok(AuditOutput { json: json(&report), csv: Some(trace_csv(&r.trace)) })
        }
    }
}
