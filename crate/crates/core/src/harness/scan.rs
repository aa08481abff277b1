use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::pipeline::{records_csv, run_pipeline_trial, CapPolicy, Mode, PipelineParams, ScanRecord};
use crate::analytics::ThresholdParams;
use crate::kfactor::FactorCertificate;
use crate::seed::derive_seed;

/// Environment variable that overrides the scan thread count.
pub const THREADS_ENV: &str = "KFLAB_THREADS";

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub k: u32,
    pub n: usize,
    pub c_from: f64,
    pub c_to: f64,
    /// Grid points, endpoints included; one point means `c_from` alone.
    pub steps: usize,
    pub trials: u32,
    pub base_seed: u64,
    pub mode: Mode,
    pub cap: CapPolicy,
    /// Worker threads; rayon's default when unset.
    pub threads: Option<usize>,
    /// Keep certificates for successful trials.
    pub keep_certificates: bool,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error("thread pool: {0}")]
    Pool(String),
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |m: &str| Err(ScanError::Config(m.into()));
        if !(self.c_from < self.c_to) {
            return bad("c_from must be below c_to");
        }
        if self.c_from < 0.0 {
            return bad("c_from must be nonnegative");
        }
        if self.steps == 0 {
            return bad("steps must be at least 1");
        }
        if self.trials == 0 {
            return bad("trials must be at least 1");
        }
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.c_from];
        }
        let h = (self.c_to - self.c_from) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| if i + 1 == self.steps { self.c_to } else { self.c_from + h * i as f64 }).collect()
    }

    /// Seed of trial `trial` at grid index `ci`.
    pub fn trial_seed(&self, ci: usize, trial: u32) -> u64 {
        derive_seed(self.base_seed, "trial", ((ci as u64) << 32) | trial as u64)
    }

    pub fn params(&self, ci: usize, trial: u32) -> PipelineParams {
        PipelineParams {
            n: self.n,
            c: self.grid()[ci],
            k: self.k,
            seed: self.trial_seed(ci, trial),
            mode: self.mode,
            cap: self.cap,
        }
    }

    fn thread_count(&self) -> Option<usize> {
        std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse().ok()).filter(|&t| t > 0).or(self.threads)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub c: f64,
    pub trials: u32,
    pub factor_found: f64,
    pub q_empty: f64,
    pub empty_core: f64,
    pub mean_core_size: f64,
    pub mean_k_size: f64,
    pub errors: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub k: u32,
    pub n: usize,
    pub mode: &'static str,
    pub cap_multiplier: f64,
    pub beta_override: Option<f64>,
    /// The window constants, for comparison with the grid.
    pub params: Option<ThresholdParams>,
    pub points: Vec<GridSummary>,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ScanOutput {
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    /// `(grid index, trial, certificate)` when certificates were kept.
    pub certificates: Vec<(usize, u32, FactorCertificate)>,
}

impl ScanOutput {
    pub fn csv(&self, with_time: bool) -> String {
        records_csv(&self.records, with_time)
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("plain data serializes")
    }

    /// Writes `scan.csv` and `summary.json` into `dir`, and one
    /// `c{index}_t{trial}.json` per certificate into `cert_dir`.
    pub fn write(&self, dir: &Path, cert_dir: Option<&Path>, with_time: bool) -> std::io::Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut written = vec![dir.join("scan.csv"), dir.join("summary.json")];
        fs::write(&written[0], self.csv(with_time))?;
        fs::write(&written[1], self.summary_json())?;
        if let Some(cd) = cert_dir {
            fs::create_dir_all(cd)?;
            for (ci, t, cert) in &self.certificates {
                let p = cd.join(format!("c{ci}_t{t}.json"));
                fs::write(&p, cert.to_json())?;
                written.push(p);
            }
        }
        Ok(written)
    }
}

/// Runs every `(grid point, trial)` pair in parallel. Records come back
/// sorted by `(c, trial)` and do not depend on the thread count.
pub fn scan(cfg: &ScanConfig) -> Result<ScanOutput, ScanError> {
    cfg.validate()?;
    let grid = cfg.grid();
    let jobs: Vec<(usize, u32)> =
        (0..grid.len()).flat_map(|ci| (0..cfg.trials).map(move |t| (ci, t))).collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.thread_count() {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| ScanError::Pool(e.to_string()))?;
    let mut results: Vec<(usize, u32, ScanRecord, Option<FactorCertificate>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(ci, t)| {
                let out = run_pipeline_trial(&cfg.params(ci, t), t);
                let cert = if cfg.keep_certificates { out.certificate } else { None };
                (ci, t, out.record, cert)
            })
            .collect()
    });
    results.sort_by_key(|r| (r.0, r.1));

    let mut points = Vec::with_capacity(grid.len());
    let mut errors = Vec::new();
    for (ci, &c) in grid.iter().enumerate() {
        let rs: Vec<&ScanRecord> = results.iter().filter(|r| r.0 == ci).map(|r| &r.2).collect();
        let tf = rs.len() as f64;
        let frac = |f: &dyn Fn(&ScanRecord) -> bool| rs.iter().filter(|r| f(r)).count() as f64 / tf;
        let mut errs = 0;
        for r in &rs {
            if !r.error.is_empty() {
                errs += 1;
                errors.push(format!("c index {ci}, trial {}: {}", r.trial, r.error));
            }
        }
        points.push(GridSummary {
            c,
            trials: rs.len() as u32,
            factor_found: frac(&|r| r.factor_found),
            q_empty: frac(&|r| r.strip_halted_reason == "q_empty"),
            empty_core: frac(&|r| r.strip_halted_reason == "empty_core"),
            mean_core_size: rs.iter().map(|r| r.core_size as f64).sum::<f64>() / tf,
            mean_k_size: rs.iter().map(|r| r.k_size as f64).sum::<f64>() / tf,
            errors: errs,
        });
    }
    let summary = ScanSummary {
        k: cfg.k,
        n: cfg.n,
        mode: cfg.mode.as_str(),
        cap_multiplier: cfg.cap.cap_multiplier,
        beta_override: cfg.cap.beta_override,
        params: ThresholdParams::new(cfg.k).ok(),
        points,
        errors,
    };
    let mut records = Vec::with_capacity(results.len());
    let mut certificates = Vec::new();
    for (ci, t, rec, cert) in results {
        records.push(rec);
        if let Some(c) = cert {
            certificates.push((ci, t, c));
        }
    }
    Ok(ScanOutput { records, summary, certificates })
}
