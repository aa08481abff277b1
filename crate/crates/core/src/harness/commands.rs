//! The `kflab` command line. Exit codes: 0 on success, 2 on input errors,
//! 3 when the input is infeasible for the request (including "no k-factor").

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::audit::{audit, AuditKind, AuditOptions};
use super::pipeline::{CapPolicy, Mode};
use super::scan::{scan, ScanConfig};
use crate::analytics::{self, ThresholdParams};
use crate::graph::Graph;
use crate::kcore::k_core;
use crate::kfactor::{find_k_factor, KFactorError, PropertyAuditConfig};
use crate::randgraph::{gen_gnp, sample_configuration, sample_simple_with_degrees};
use crate::seed::derive_seed;
use crate::strip::{enforce_parity, run_strip, trace_csv, StripConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "kflab", version, about = "k-cores, STRIP and k-factors of sparse random graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate G(n, c/n), or a configuration-model graph on given degrees.
    Gen(GenArgs),
    /// Extract the k-core of an edge-list graph.
    Core(CoreArgs),
    /// Run STRIP on a k-core.
    Strip(StripArgs),
    /// Search for a k-factor.
    Factor(FactorArgs),
    /// Run the full pipeline over a grid of densities.
    Scan(ScanArgs),
    /// Reports on a graph: lw0, P, elbr or trace.
    Audit(AuditArgs),
    /// Print the threshold constants and, given c, the core law.
    Law(LawArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CapArgs {
    #[arg(long, default_value_t = 1.0)]
    pub cap_multiplier: f64,
    /// Replaces e^(-k/200) in the iteration cap; `exact` keeps it.
    #[arg(long, default_value = "0.1")]
    pub beta_override: String,
}

impl CapArgs {
    fn policy(&self) -> Result<CapPolicy, String> {
        let beta_override = match self.beta_override.as_str() {
            "exact" | "none" => None,
            s => Some(s.parse::<f64>().map_err(|e| format!("--beta-override {s:?}: {e}"))?),
        };
        Ok(CapPolicy { cap_multiplier: self.cap_multiplier, beta_override })
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sample a configuration on the degree sequence of this edge list
    /// instead of G(n, c/n).
    #[arg(long)]
    pub degrees_from: Option<PathBuf>,
    /// With --degrees-from: resample until simple, or keep the multigraph.
    #[arg(long, default_value = "simple")]
    pub mode: Mode,
    #[arg(long, default_value_t = 1000)]
    pub max_attempts: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CoreArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the membership and degree-histogram JSON here.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StripArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: u32,
    /// Vertex count of the source graph; used for the cap and for K3.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value = "simple")]
    pub mode: Mode,
    /// Seed of the configuration in multigraph mode.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub cap: CapArgs,
    /// Edge list of K.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub debug_checks: bool,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub emit_certificate: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub c_from: f64,
    #[arg(long)]
    pub c_to: f64,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "simple")]
    pub mode: Mode,
    #[command(flatten)]
    pub cap: CapArgs,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output directory for scan.csv and summary.json; CSV to stdout when unset.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for one certificate per successful trial.
    #[arg(long)]
    pub emit_certificate: Option<PathBuf>,
    /// Add a wall_ms column.
    #[arg(long)]
    pub wall_time: bool,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub which: AuditKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon0: f64,
    #[arg(long, default_value_t = 0.1)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1000)]
    pub budget: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub cap: CapArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Trace CSV destination for `--which trace`.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct LawArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub c: Option<f64>,
    /// Largest degree in the printed law.
    #[arg(long)]
    pub i_max: Option<u32>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError { code: EXIT_INPUT, message: e.to_string() }
}

fn infeasible<E: std::fmt::Display>(e: E) -> CliError {
    CliError { code: EXIT_INFEASIBLE, message: e.to_string() }
}

fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let f = fs::File::open(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    Graph::read_edge_list(io::BufReader::new(f)).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(input),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes") + "\n"
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Gen(a) => gen(a, out, err),
        Command::Core(a) => core(a, out, err),
        Command::Strip(a) => strip(a, out, err),
        Command::Factor(a) => factor(a, out),
        Command::Scan(a) => scan_cmd(a, out, err),
        Command::Audit(a) => audit_cmd(a, out),
        Command::Law(a) => law(a, out),
    }
}

fn gen(a: GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let g = match &a.degrees_from {
        Some(p) => {
            let degrees = read_graph(p)?.degrees();
            match a.mode {
                Mode::Simple => {
                    let s = sample_simple_with_degrees(&degrees, a.seed, a.max_attempts).map_err(infeasible)?;
                    let _ = writeln!(err, "simple after {} attempts", s.attempts);
                    s.configuration.to_multigraph()
                }
                Mode::Multigraph => sample_configuration(&degrees, a.seed).map_err(infeasible)?.to_multigraph(),
            }
        }
        None => {
            let (Some(n), Some(c)) = (a.n, a.c) else {
                return Err(input("gen needs --n and --c, or --degrees-from"));
            };
            if !(c >= 0.0) {
                return Err(input("--c must be nonnegative"));
            }
            gen_gnp(n, c, a.seed)
        }
    };
    emit(a.out.as_deref(), &g.to_edge_list(), out)
}

fn core(a: CoreArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.input)?;
    let r = k_core(&g, a.k);
    let _ = writeln!(err, "{}-core: {} of {} vertices", a.k, r.size(), g.n());
    if let Some(p) = &a.sidecar {
        fs::write(p, r.sidecar_json()).map_err(input)?;
    }
    emit(a.out.as_deref(), &r.core.to_edge_list(), out)
}

fn strip(a: StripArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.input)?;
    let host = match a.mode {
        Mode::Simple => g,
        Mode::Multigraph => sample_configuration(&g.degrees(), derive_seed(a.seed, "configuration", 0))
            .map_err(infeasible)?
            .to_multigraph(),
    };
    let n = a.n.unwrap_or(host.n());
    let cap = a.cap.policy().map_err(input)?;
    let cfg = StripConfig {
        cap_multiplier: cap.cap_multiplier,
        beta_override: cap.beta_override,
        n_ref: Some(n),
        debug_checks: a.debug_checks,
        record_trace: a.trace.is_some(),
        ..StripConfig::new(a.k)
    };
    let r = enforce_parity(run_strip(&host, &cfg).map_err(infeasible)?, a.k);
    if let Some(p) = &a.trace {
        fs::write(p, trace_csv(&r.trace)).map_err(input)?;
    }
    if let Some(p) = &a.out {
        fs::write(p, r.k_graph.to_edge_list()).map_err(input)?;
    }
    let _ = writeln!(err, "halted: {} after {} iterations", r.halted.as_str(), r.iterations);
    emit(None, &(r.summary_json(n) + "\n"), out)
}

fn factor(a: FactorArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.input)?;
    match find_k_factor(&g, a.k) {
        Ok(Some(cert)) => {
            if let Some(p) = &a.emit_certificate {
                fs::write(p, cert.to_json()).map_err(input)?;
            }
            let _ = writeln!(out, "found {}-factor with {} edges", a.k, cert.edges.len());
            Ok(())
        }
        Ok(None) => Err(infeasible(format!("no {}-factor", a.k))),
        Err(e @ KFactorError::LoopNotSupported(_)) => Err(input(e)),
        Err(e) => Err(infeasible(e)),
    }
}

fn scan_cmd(a: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cfg = ScanConfig {
        k: a.k,
        n: a.n,
        c_from: a.c_from,
        c_to: a.c_to,
        steps: a.steps,
        trials: a.trials,
        base_seed: a.seed,
        mode: a.mode,
        cap: a.cap.policy().map_err(input)?,
        threads: a.threads,
        keep_certificates: a.emit_certificate.is_some(),
    };
    let res = scan(&cfg).map_err(input)?;
    match &a.out {
        Some(dir) => {
            let files = res.write(dir, a.emit_certificate.as_deref(), a.wall_time).map_err(input)?;
            let _ = writeln!(err, "wrote {} files under {}", files.len(), dir.display());
        }
        None => {
            if let Some(cd) = &a.emit_certificate {
                res.write(cd, Some(cd), a.wall_time).map_err(input)?;
            }
            emit(None, &res.csv(a.wall_time), out)?;
        }
    }
    Ok(())
}

fn audit_cmd(a: AuditArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.input)?;
    let opts = AuditOptions {
        k: a.k,
        n: a.n,
        c: a.c,
        property: PropertyAuditConfig {
            epsilon0: a.epsilon0,
            gamma: a.gamma,
            sample_budget: a.budget,
            n_ref: None,
            seed: a.seed,
        },
        cap: a.cap.policy().map_err(input)?,
    };
    let r = audit(&g, a.which, &opts).map_err(infeasible)?;
    if let (Some(p), Some(csv)) = (&a.trace, &r.csv) {
        fs::write(p, csv).map_err(input)?;
    }
    emit(a.out.as_deref(), &(r.json + "\n"), out)
}

#[derive(Serialize)]
struct LawReport {
    params: ThresholdParams,
    x_k: f64,
    c_k_asymptotic: f64,
    law: Option<analytics::CoreLaw>,
}

fn law(a: LawArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let t = analytics::c_k_threshold(a.k).map_err(input)?;
    let params = ThresholdParams::new(a.k).map_err(input)?;
    let law = match a.c {
        Some(c) => Some(t.core_law(c, a.i_max.unwrap_or(a.k + 10)).map_err(input)?),
        None => None,
    };
    let r = LawReport { params, x_k: t.x_k, c_k_asymptotic: analytics::c_k_asymptotic(a.k as f64), law };
    emit(None, &json(&r), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let mut full = vec!["kflab"];
        full.extend_from_slice(args);
        let code = run(full, &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn law_prints_constants() {
        let (code, out, _) = call(&["law", "--k", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["params"]["c_k"].as_f64().unwrap() - 3.35092).abs() < 1e-4);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&["core", "--k", "3"]).0, 2);
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["core", "--in", "/nonexistent/g.edges", "--k", "3"]).0, 2);
        assert_eq!(call(&["gen", "--n", "5"]).0, 2);
    }

    #[test]
    fn gen_core_factor_round() {
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.edges");
        let c = dir.path().join("c.edges");
        let cert = dir.path().join("cert.json");
        let s = |p: &PathBuf| p.to_str().unwrap().to_string();
        assert_eq!(call(&["gen", "--n", "300", "--c", "8", "--seed", "1", "--out", &s(&g)]).0, 0);
        assert_eq!(call(&["core", "--in", &s(&g), "--k", "3", "--out", &s(&c)]).0, 0);
        let (code, _, _) = call(&["factor", "--in", &s(&c), "--k", "3", "--emit-certificate", &s(&cert)]);
        assert!(code == 0 || code == 3);
        if code == 0 {
            let cf = crate::kfactor::FactorCertificate::from_json(&fs::read_to_string(&cert).unwrap()).unwrap();
            let host = Graph::parse_edge_list(&fs::read_to_string(&c).unwrap()).unwrap();
            assert!(crate::kfactor::verify_k_factor(&host, &cf.edges, 3));
        }
    }

    #[test]
    fn factor_infeasible_exits_3() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bowtie.edges");
        fs::write(&p, "5 6\n0 1\n0 2\n1 2\n2 3\n2 4\n3 4\n").unwrap();
        assert_eq!(call(&["factor", "--in", p.to_str().unwrap(), "--k", "2"]).0, 3);
    }
}
