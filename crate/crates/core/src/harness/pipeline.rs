use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use crate::graph::Graph;
use crate::harness::format::fmt_real;
use crate::kcore::k_core;
use crate::kfactor::{find_k_factor, FactorCertificate};
use crate::randgraph::{gen_gnp, sample_configuration};
use crate::seed::derive_seed;
use crate::strip::{enforce_parity, run_strip, verify_k, StripConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// STRIP runs on the k-core itself.
    #[default]
    Simple,
    /// STRIP runs on a uniform configuration with the core's degrees.
    Multigraph,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Simple => "simple",
            Mode::Multigraph => "multigraph",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "simple" => Ok(Mode::Simple),
            "multigraph" => Ok(Mode::Multigraph),
            _ => Err(format!("unknown mode {s:?}; expected simple or multigraph")),
        }
    }
}

/// How the STRIP iteration cap is set: `ceil(multiplier * beta * n)` where
/// `beta` is `e^(-k/200)` unless overridden.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapPolicy {
    pub cap_multiplier: f64,
    pub beta_override: Option<f64>,
}

impl Default for CapPolicy {
    /// The desk-scale default, a cap of `n/10`.
    fn default() -> Self {
        CapPolicy { cap_multiplier: 1.0, beta_override: Some(0.1) }
    }
}

impl CapPolicy {
    /// The cap with the constant from the stripping analysis.
    pub fn exact() -> Self {
        CapPolicy { cap_multiplier: 1.0, beta_override: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineParams {
    pub n: usize,
    pub c: f64,
    pub k: u32,
    pub seed: u64,
    pub mode: Mode,
    pub cap: CapPolicy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub c: f64,
    pub trial: u32,
    pub seed: u64,
    pub core_size: usize,
    /// `q_empty`, `cap_reached`, `empty_core` or `error`.
    pub strip_halted_reason: &'static str,
    pub k_size: usize,
    pub k1: bool,
    pub k2: bool,
    pub k3: bool,
    pub k4: bool,
    pub factor_found: bool,
    pub iterations: usize,
    pub error: String,
    pub wall_ms: f64,
}

pub const CSV_HEADER: &str =
    "c,trial,seed,core_size,strip_halted_reason,k_size,k1,k2,k3,k4,factor_found,iterations,error";

impl ScanRecord {
    /// One CSV line without the trailing newline; wall time is appended as
    /// a `wall_ms` column only when asked for.
    pub fn csv_row(&self, with_time: bool) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt_real(self.c),
            self.trial,
            self.seed,
            self.core_size,
            self.strip_halted_reason,
            self.k_size,
            self.k1,
            self.k2,
            self.k3,
            self.k4,
            self.factor_found,
            self.iterations,
            self.error.replace([',', '\n'], ";")
        );
        if with_time {
            let _ = write!(s, ",{}", fmt_real(self.wall_ms));
        }
        s
    }

    /// Equality of everything but wall time.
    pub fn same_outcome(&self, other: &ScanRecord) -> bool {
        ScanRecord { wall_ms: 0.0, ..self.clone() } == ScanRecord { wall_ms: 0.0, ..other.clone() }
    }
}

pub fn records_csv(records: &[ScanRecord], with_time: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    if with_time {
        out.push_str(",wall_ms");
    }
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row(with_time));
        out.push('\n');
    }
    out
}

/// A pipeline run: the record, plus the graph K and its certificate when
/// one was found.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub record: ScanRecord,
    pub k_graph: Option<Graph>,
    pub certificate: Option<FactorCertificate>,
}

/// `G(n, c/n)`, its k-core, STRIP, the parity fix, the K1-K4 check and the
/// k-factor search on K. Stage failures land in `record.error`. The factor
/// search runs only when K1 and K4 hold.
pub fn run_pipeline(p: &PipelineParams) -> PipelineOutcome {
    run_pipeline_trial(p, 0)
}

pub(crate) fn run_pipeline_trial(p: &PipelineParams, trial: u32) -> PipelineOutcome {
    let start = Instant::now();
    let mut rec = ScanRecord {
        c: p.c,
        trial,
        seed: p.seed,
        core_size: 0,
        strip_halted_reason: "empty_core",
        k_size: 0,
        k1: false,
        k2: false,
        k3: false,
        k4: false,
        factor_found: false,
        iterations: 0,
        error: String::new(),
        wall_ms: 0.0,
    };
    let finish = |mut rec: ScanRecord, k_graph, certificate| {
        rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        PipelineOutcome { record: rec, k_graph, certificate }
    };
    if p.n == 0 || !(p.c >= 0.0) {
        rec.strip_halted_reason = "error";
        rec.error = format!("invalid parameters n = {}, c = {}", p.n, p.c);
        return finish(rec, None, None);
    }
    let g = gen_gnp(p.n, p.c, derive_seed(p.seed, "gnp", 0));
    let core = k_core(&g, p.k).core;
    rec.core_size = core.n();
    if core.n() == 0 {
        return finish(rec, None, None);
    }
    let host = match p.mode {
        Mode::Simple => core,
        Mode::Multigraph => match sample_configuration(&core.degrees(), derive_seed(p.seed, "configuration", 0)) {
            Ok(cfg) => cfg.to_multigraph(),
            Err(e) => {
                rec.strip_halted_reason = "error";
                rec.error = e.to_string();
                return finish(rec, None, None);
            }
        },
    };
    let cfg = StripConfig {
        cap_multiplier: p.cap.cap_multiplier,
        beta_override: p.cap.beta_override,
        n_ref: Some(p.n),
        debug_checks: false,
        record_trace: false,
        ..StripConfig::new(p.k)
    };
    let result = match run_strip(&host, &cfg) {
        Ok(r) => enforce_parity(r, p.k),
        Err(e) => {
            rec.strip_halted_reason = "error";
            rec.error = e.to_string();
            return finish(rec, None, None);
        }
    };
    rec.strip_halted_reason = result.halted.as_str();
    rec.iterations = result.iterations;
    let kg = result.k_graph;
    rec.k_size = kg.n();
    let report = verify_k(&kg, p.k, p.n);
    (rec.k1, rec.k2, rec.k3, rec.k4) = (report.k1, report.k2, report.k3, report.k4);
    let mut certificate = None;
    if kg.n() > 0 && report.k1 && report.k4 {
        match find_k_factor(&kg, p.k) {
            Ok(c) => {
                rec.factor_found = c.is_some();
                certificate = c;
            }
            Err(e) => rec.error = e.to_string(),
        }
    }
    finish(rec, Some(kg), certificate)
}
