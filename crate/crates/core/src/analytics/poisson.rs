//! Poisson probabilities evaluated in log space. Tails are summed starting
//! from the boundary term and moving away from the mode, so every partial
//! sum is dominated by its first term and nothing cancels.

use statrs::function::gamma::ln_gamma;

const REL_EPS: f64 = 1e-17;

pub fn ln_factorial(i: u64) -> f64 {
    if i < 2 {
        0.0
    } else {
        ln_gamma(i as f64 + 1.0)
    }
}

pub fn ln_pmf(i: u64, x: f64) -> f64 {
    if x == 0.0 {
        return if i == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -x + i as f64 * x.ln() - ln_factorial(i)
}

/// `P(Po(x) = i)`.
pub fn pmf(i: u64, x: f64) -> f64 {
    ln_pmf(i, x).exp()
}

/// Returns `(P(Po(x) < m), P(Po(x) >= m))`. The smaller of the two is
/// summed directly; the other is its complement.
pub fn tails(x: f64, m: u64) -> (f64, f64) {
    if m == 0 {
        return (0.0, 1.0);
    }
    if x == 0.0 {
        return (1.0, 0.0);
    }
    if m as f64 > x {
        let upper = sum_upward(x, m);
        (1.0 - upper, upper)
    } else {
        let lower = sum_downward(x, m - 1);
        (lower, 1.0 - lower)
    }
}

/// `P(Po(x) >= m)`.
pub fn upper_tail(x: f64, m: u64) -> f64 {
    tails(x, m).1
}

/// `P(Po(x) <= m)`.
pub fn lower_tail(x: f64, m: u64) -> f64 {
    tails(x, m + 1).0
}

// Terms i >= m with m > x shrink by x/(i+1) < 1 each step.
fn sum_upward(x: f64, m: u64) -> f64 {
    let lead = ln_pmf(m, x);
    let mut rel = 1.0;
    let mut sum = 1.0;
    let mut i = m;
    loop {
        i += 1;
        rel *= x / i as f64;
        sum += rel;
        if rel < REL_EPS * sum {
            break;
        }
    }
    (lead + sum.ln()).exp()
}

// Terms i <= top with top < x shrink by i/x < 1 each step downward.
fn sum_downward(x: f64, top: u64) -> f64 {
    let lead = ln_pmf(top, x);
    let mut rel = 1.0;
    let mut sum = 1.0;
    let mut i = top;
    while i > 0 {
        rel *= i as f64 / x;
        i -= 1;
        sum += rel;
        if rel < REL_EPS * sum {
            break;
        }
    }
    (lead + sum.ln()).exp()
}
