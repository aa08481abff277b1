//! Closed-form quantities around the k-core threshold: the function
//! `f(x) = x / P(Po(x) >= k-1)` whose minimum is `c_k`, the limiting core
//! law, the W0 branching ratio `g`, and the tail bounds used as diagnostics.
//!
//! Everything here is a pure function of its arguments.

pub mod poisson;

use serde::Serialize;
use thiserror::Error;

pub use poisson::{lower_tail, pmf, upper_tail};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
}

/// `e^(-k/200)`.
pub fn beta(k: u32) -> f64 {
    (-(k as f64) / 200.0).exp()
}

/// The window constants for one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdParams {
    pub k: u32,
    pub beta: f64,
    /// `k^9 * beta`.
    pub alpha: f64,
    pub c_k: f64,
    /// `c_k + k^10 * beta`.
    pub c_min: f64,
    /// `c_k + k^(-1/2)`.
    pub c_max: f64,
}

impl ThresholdParams {
    pub fn new(k: u32) -> Result<Self, AnalyticsError> {
        let t = c_k_threshold(k)?;
        let kf = k as f64;
        let beta = beta(k);
        Ok(ThresholdParams {
            k,
            beta,
            alpha: kf.powi(9) * beta,
            c_k: t.c_k,
            c_min: t.c_k + kf.powi(10) * beta,
            c_max: t.c_k + kf.powf(-0.5),
        })
    }
}

/// Minimizer and minimum of `f` for one `k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub k: u32,
    pub c_k: f64,
    pub x_k: f64,
}

/// Limiting core law at average degree `c`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoreLaw {
    pub k: u32,
    pub c: f64,
    /// Largest root of `f(x) = c`.
    pub x: f64,
    pub x_k: f64,
    pub c_k: f64,
    /// `P(Po(x) >= k)`, the limiting core fraction.
    pub zeta: f64,
    /// `lambda[j] = P(Po(x) = k + j)` for `k + j <= i_max`.
    pub lambda: Vec<f64>,
    /// `P(Po(x) > i_max)`, the mass not listed in `lambda`.
    pub tail_mass: f64,
}

impl CoreLaw {
    /// Limiting fraction of all `n` vertices that sit in the core with degree `i`.
    pub fn lambda_at(&self, i: u32) -> f64 {
        if i < self.k {
            return 0.0;
        }
        self.lambda.get((i - self.k) as usize).copied().unwrap_or(0.0)
    }
}

fn check_k(k: u32) -> Result<(), AnalyticsError> {
    if k < 3 {
        return Err(AnalyticsError::Domain(format!("k must be at least 3, got {k}")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<(), AnalyticsError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(AnalyticsError::Domain(format!("x must be positive and finite, got {x}")));
    }
    Ok(())
}

/// `f(x) = x / (1 - e^(-x) sum_{i<=k-2} x^i/i!)`. Returns `+inf` once the
/// denominator underflows (x near zero).
pub fn f_of_x(x: f64, k: u32) -> Result<f64, AnalyticsError> {
    check_x(x)?;
    let denom = upper_tail(x, k.saturating_sub(1) as u64);
    if denom <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(x / denom)
}

/// Sign-carrying numerator of `f'(x)`: `P(Po(x) >= k-1) - x P(Po(x) = k-2)`.
fn derivative_numerator(x: f64, k: u32) -> f64 {
    upper_tail(x, (k - 1) as u64) - x * pmf((k - 2) as u64, x)
}

/// Analytic `f'(x)`.
pub fn f_prime(x: f64, k: u32) -> Result<f64, AnalyticsError> {
    check_x(x)?;
    let denom = upper_tail(x, (k - 1) as u64);
    Ok(derivative_numerator(x, k) / (denom * denom))
}

/// Locates the minimizer `x_k` of `f` and `c_k = f(x_k)`.
///
/// A coarse scan over `x = k/2, k/2 + 0.1, ..., 3k` brackets the minimum,
/// ternary search narrows the bracket to 1e-3, and bisection on the sign
/// of `f'` finishes: `f` is too flat at its minimum for comparisons of `f`
/// alone to resolve `x_k` much further.
pub fn c_k_threshold(k: u32) -> Result<Threshold, AnalyticsError> {
    check_k(k)?;
    let kf = k as f64;
    let start = kf / 2.0;
    let steps = ((3.0 * kf - start) / 0.1).round() as usize;
    let grid = |i: usize| start + 0.1 * i as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..=steps {
        let v = f_of_x(grid(i), k)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    if best.0 == 0 || best.0 == steps {
        return Err(AnalyticsError::Convergence(format!(
            "minimum of f for k={k} not interior to the scan range"
        )));
    }
    let (mut lo, mut hi) = (grid(best.0 - 1), grid(best.0 + 1));
    // Comparisons of f stay reliable down to this width at every k.
    while hi - lo > 1e-3 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f_of_x(m1, k)? < f_of_x(m2, k)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    if !(derivative_numerator(lo, k) < 0.0 && derivative_numerator(hi, k) > 0.0) {
        lo = grid(best.0 - 1);
        hi = grid(best.0 + 1);
    }
    if !(derivative_numerator(lo, k) < 0.0 && derivative_numerator(hi, k) > 0.0) {
        return Err(AnalyticsError::Convergence(format!(
            "derivative of f does not change sign on [{lo}, {hi}] for k={k}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if derivative_numerator(mid, k) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x_k = 0.5 * (lo + hi);
    Ok(Threshold { k, c_k: f_of_x(x_k, k)?, x_k })
}

/// `k + (k q)^(1/2) + (k/q)^(1/2) + (q-1)/3` with `q = log k - log 2pi`.
///
/// Below `k = 7` the expansion is outside its regime (`q <= 0` for
/// `k <= 6`, giving NaN); a warning is logged and the raw value returned.
pub fn c_k_asymptotic(k: f64) -> f64 {
    if k < 7.0 {
        log::warn!("c_k asymptotic expansion evaluated at k = {k}, below its regime");
    }
    let q = k.ln() - (2.0 * std::f64::consts::PI).ln();
    k + (k * q).sqrt() + (k / q).sqrt() + (q - 1.0) / 3.0
}

impl Threshold {
    fn search_cap(&self) -> f64 {
        self.x_k + 10.0 * (self.k as f64).ln() + 10.0
    }

    /// Greatest root of `f(x) = c`.
    pub fn x_of_c(&self, c: f64) -> Result<f64, AnalyticsError> {
        if !c.is_finite() {
            return Err(AnalyticsError::Domain(format!("c must be finite, got {c}")));
        }
        // Tolerate the rounding in f(x_k) itself.
        if (c - self.c_k).abs() <= 4.0 * f64::EPSILON * self.c_k {
            return Ok(self.x_k);
        }
        if c < self.c_k {
            return Err(AnalyticsError::Domain(format!(
                "c = {c} is below c_{} = {}; f(x) = c has no root",
                self.k, self.c_k
            )));
        }
        let mut lo = self.x_k;
        let mut hi = self.search_cap();
        if f_of_x(hi, self.k)? < c {
            return Err(AnalyticsError::Convergence(format!(
                "root of f(x) = {c} is beyond x = {hi} for k={}",
                self.k
            )));
        }
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if f_of_x(mid, self.k)? < c {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(if c - f_of_x(lo, self.k)? <= f_of_x(hi, self.k)? - c { lo } else { hi })
    }

    pub fn core_law(&self, c: f64, i_max: u32) -> Result<CoreLaw, AnalyticsError> {
        let x = self.x_of_c(c)?;
        let k = self.k;
        let lambda: Vec<f64> = (k..=i_max.max(k)).map(|i| pmf(i as u64, x)).collect();
        Ok(CoreLaw {
            k,
            c,
            x,
            x_k: self.x_k,
            c_k: self.c_k,
            zeta: upper_tail(x, k as u64),
            tail_mass: upper_tail(x, i_max.max(k) as u64 + 1),
            lambda,
        })
    }
}

pub fn x_of_c(c: f64, k: u32) -> Result<f64, AnalyticsError> {
    c_k_threshold(k)?.x_of_c(c)
}

pub fn core_law(c: f64, k: u32, i_max: u32) -> Result<CoreLaw, AnalyticsError> {
    c_k_threshold(k)?.core_law(c, i_max)
}

/// Branching ratio of the degree-k part of the core:
/// `k(k-1) P(Po(x) = k) / (x P(Po(x) >= k-1))`.
pub fn g_branching(x: f64, k: u32) -> Result<f64, AnalyticsError> {
    check_x(x)?;
    let kf = k as f64;
    Ok(kf * (kf - 1.0) * pmf(k as u64, x) / (x * upper_tail(x, k.saturating_sub(1) as u64)))
}

/// `exp(-t^2 / (2 (mu + t/3)))`, bounding `P(X >= mu + t)`.
pub fn chernoff_upper(mu: f64, t: f64) -> f64 {
    let denom = 2.0 * (mu + t / 3.0);
    if denom == 0.0 {
        return 1.0;
    }
    (-t * t / denom).exp()
}

/// `exp(-t^2 / (2 mu))`, bounding `P(X <= mu - t)`.
pub fn chernoff_lower(mu: f64, t: f64) -> f64 {
    if mu == 0.0 {
        return if t == 0.0 { 1.0 } else { 0.0 };
    }
    (-t * t / (2.0 * mu)).exp()
}

/// `exp(-a^2 / (2 sum c_j^2))`: the probability that a process whose steps
/// have conditional drift below `drift` and magnitude at most `c_j` ever
/// exceeds `i * drift + a`. The drift shifts the event, not the bound.
pub fn supermartingale_bound(drift: f64, step_bounds: &[f64], a: f64) -> Result<f64, AnalyticsError> {
    if !drift.is_finite() {
        return Err(AnalyticsError::Domain("drift must be finite".into()));
    }
    if !(a > 0.0) {
        return Err(AnalyticsError::Domain(format!("deviation must be positive, got {a}")));
    }
    if step_bounds.iter().any(|&c| !(c > 0.0)) {
        return Err(AnalyticsError::Domain("step bounds must be positive".into()));
    }
    let sum_sq: f64 = step_bounds.iter().map(|c| c * c).sum();
    if sum_sq == 0.0 {
        return Err(AnalyticsError::Domain("sum of squared step bounds is zero".into()));
    }
    Ok((-a * a / (2.0 * sum_sq)).exp())
}
