//! Significance tests: exact sign and binomial tests, paired t-test.
//!
//! Binomial tails are summed term by term with log-gamma coefficients, so
//! they stay accurate at the sample sizes of the pair dataset (n ≈ 2200)
//! without overflow.

use alloc::string::{String, ToString};

use serde::{Deserialize, Serialize};

use crate::error::{config, Error, Result};

/// Outcome of a significance test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub statistic: f64,
    /// Always in `[0, 1]`.
    pub p_value: f64,
    pub n: u64,
}

/// `*` notation used in result tables: `***` p<.001, `**` p<.01, `*` p<.05.
pub fn stars(p_value: f64) -> &'static str {
    if p_value < 0.001 {
        "***"
    } else if p_value < 0.01 {
        "**"
    } else if p_value < 0.05 {
        "*"
    } else {
        ""
    }
}

pub(crate) fn ln_choose(n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}

fn binomial_pmf(k: u64, n: u64, p: f64) -> f64 {
    if p <= 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if p >= 1.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    // the end terms directly, so that e.g. all-correct tails are exact powers
    if k == n {
        return libm::pow(p, n as f64);
    }
    if k == 0 {
        return libm::pow(1.0 - p, n as f64);
    }
    libm::exp(ln_choose(n, k) + k as f64 * libm::log(p) + (n - k) as f64 * libm::log1p(-p))
}

/// P(X ≤ k) for X ~ Binomial(n, p).
pub fn binomial_cdf(k: u64, n: u64, p: f64) -> f64 {
    if k >= n {
        return 1.0;
    }
    // smallest terms first
    let mut sum = 0.0;
    for i in (0..=k).rev() {
        sum += binomial_pmf(i, n, p);
    }
    sum.min(1.0)
}

/// P(X ≥ k) for X ~ Binomial(n, p).
pub fn binomial_sf(k: u64, n: u64, p: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k > n {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in (k..=n).rev() {
        sum += binomial_pmf(i, n, p);
    }
    sum.min(1.0)
}

/// Exact two-tailed sign test on win/loss counts (ties already excluded).
///
/// Returns [`Error::Undefined`] when there are no decided comparisons.
pub fn sign_test(wins: u64, losses: u64) -> Result<TestResult> {
    let n = wins + losses;
    if n == 0 {
        return Err(Error::Undefined("sign test with no decided pairs".to_string()));
    }
    let k = wins.min(losses);
    let p = if wins == losses {
        1.0
    } else {
        (2.0 * binomial_cdf(k, n, 0.5)).min(1.0)
    };
    Ok(TestResult {
        test_name: "two-tailed sign test".to_string(),
        statistic: k as f64,
        p_value: p,
        n,
    })
}

/// One-sided exact binomial test: probability of at least `correct`
/// successes in `n` trials when each succeeds with probability `chance`.
pub fn binomial_test(correct: u64, n: u64, chance: f64) -> Result<TestResult> {
    if correct > n {
        return Err(config("binomial test: more successes than trials"));
    }
    if !(0.0..=1.0).contains(&chance) {
        return Err(config("binomial test: chance must lie in [0, 1]"));
    }
    Ok(TestResult {
        test_name: "one-sided exact binomial test".to_string(),
        statistic: correct as f64,
        p_value: binomial_sf(correct, n, chance),
        n,
    })
}

/// Two-tailed paired t-test on `a[i] - b[i]`.
///
/// All-zero differences give p = 1; zero variance with a nonzero mean gives
/// an infinite statistic and p = 0.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(config("paired t-test: samples differ in length"));
    }
    let n = a.len();
    if n < 2 {
        return Err(config("paired t-test needs at least two pairs"));
    }
    let nf = n as f64;
    let mean = a.iter().zip(b).map(|(x, y)| x - y).sum::<f64>() / nf;
    let ss: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x - y - mean;
            d * d
        })
        .sum();
    let var = ss / (nf - 1.0);
    let name = "two-tailed paired t-test".to_string();
    let all_zero = a.iter().zip(b).all(|(x, y)| x - y == 0.0);
    if all_zero {
        return Ok(TestResult {
            test_name: name,
            statistic: 0.0,
            p_value: 1.0,
            n: n as u64,
        });
    }
    if var == 0.0 {
        return Ok(TestResult {
            test_name: name,
            statistic: if mean > 0.0 { f64::INFINITY } else { f64::NEG_INFINITY },
            p_value: 0.0,
            n: n as u64,
        });
    }
    let t = mean / libm::sqrt(var / nf);
    let df = nf - 1.0;
    Ok(TestResult {
        test_name: name,
        statistic: t,
        p_value: student_t_two_tailed(t, df),
        n: n as u64,
    })
}

/// Two-tailed tail probability of Student's t with `df` degrees of freedom.
pub fn student_t_two_tailed(t: f64, df: f64) -> f64 {
    let x = df / (df + t * t);
    regularized_incomplete_beta(df / 2.0, 0.5, x).clamp(0.0, 1.0)
}

/// I_x(a, b), the regularized incomplete beta function.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = libm::lgamma(a + b) - libm::lgamma(a) - libm::lgamma(b)
        + a * libm::log(x)
        + b * libm::log1p(-x);
    let front = libm::exp(ln_front);
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

// Modified Lentz evaluation of the incomplete-beta continued fraction.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}
