//! Slow, obviously-correct reference implementations used by tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use statrs::distribution::{Binomial, ContinuousCDF, DiscreteCDF, StudentsT};

/// Log-probability of `seq` under an additively smoothed n-gram model,
/// counted by rescanning the corpus for every event. `alpha` is
/// `alpha_num / alpha_den`.
pub fn lm_log_prob(corpus: &[Vec<String>], order: usize, alpha_num: i64, alpha_den: i64, seq: &[String]) -> f64 {
    let alpha = BigRational::new(alpha_num.into(), alpha_den.into());
    let start = "\u{0}start".to_string();
    let pad = |s: &[String]| -> Vec<String> {
        let mut v = vec![start.clone(); order - 1];
        v.extend(s.iter().cloned());
        v
    };
    let vocab: BTreeSet<&String> = corpus.iter().flatten().collect();
    // training types plus one unknown type
    let v = BigRational::from_integer((vocab.len() as i64 + 1).into());
    let padded: Vec<Vec<String>> = corpus.iter().map(|s| pad(s)).collect();
    let query = pad(seq);
    let mut total = 0.0;
    for i in order - 1..query.len() {
        let h = &query[i + 1 - order..i];
        let w = &query[i];
        let mut c_hw = 0i64;
        let mut c_h = 0i64;
        for s in &padded {
            for j in order - 1..s.len() {
                if &s[j + 1 - order..j] == h {
                    c_h += 1;
                    if &s[j] == w {
                        c_hw += 1;
                    }
                }
            }
        }
        let num = BigRational::from_integer(c_hw.into()) + alpha.clone();
        let den = BigRational::from_integer(c_h.into()) + alpha.clone() * v.clone();
        let p = num / den;
        total += p.to_f64().unwrap().ln();
    }
    total
}

fn choose(n: u64, k: u64) -> BigUint {
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

fn ratio(num: BigUint, den: BigUint) -> f64 {
    BigRational::new(num.into(), den.into()).to_f64().unwrap()
}

/// Two-tailed exact sign test with integer arithmetic.
pub fn sign_test_p(wins: u64, losses: u64) -> f64 {
    let n = wins + losses;
    let k = wins.min(losses);
    let mut tail = BigUint::zero();
    for i in 0..=k {
        tail += choose(n, i);
    }
    let two_n = BigUint::one() << n;
    let p = ratio(tail * 2u32, two_n);
    p.min(1.0)
}

/// P(X >= k), X ~ Binomial(n, 1/2), exactly.
pub fn binomial_upper_half(k: u64, n: u64) -> f64 {
    let mut tail = BigUint::zero();
    for i in k..=n {
        tail += choose(n, i);
    }
    ratio(tail, BigUint::one() << n)
}

/// P(X >= k) for general chance, from statrs.
pub fn binomial_upper(k: u64, n: u64, chance: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let b = Binomial::new(chance, n).unwrap();
    b.sf(k - 1)
}

/// Textbook paired t-test: (t, two-tailed p).
pub fn paired_t(a: &[f64], b: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len() as f64;
    let mean = d.iter().sum::<f64>() / n;
    let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let t = mean / (var / n).sqrt();
    let dist = StudentsT::new(0.0, 1.0, n - 1.0).unwrap();
    (t, 2.0 * dist.cdf(-t.abs()))
}

/// One synthetic script line with its known facts.
#[derive(Clone, Debug)]
pub struct SynthLine {
    pub speaker: usize,
    pub words: usize,
    pub single: bool,
    /// 0 plain, 1 covered, 2 memorable
    pub label: u8,
}

/// Line positions (memorable, foil, distance) chosen by exhaustive search:
/// memorable lines in script order, each taking the eligible foil with the
/// fewest same-speaker lines between them, the earlier one on a tie.
pub fn brute_force_pairs(lines: &[SynthLine], reuse: bool) -> Vec<(usize, usize, u32)> {
    let mut used: HashMap<usize, bool> = HashMap::new();
    let mut out = Vec::new();
    for m in 0..lines.len() {
        let lm = &lines[m];
        if lm.label != 2 || !lm.single || lm.words == 0 {
            continue;
        }
        let mut best: Option<(u32, usize)> = None;
        for n in 0..lines.len() {
            let ln = &lines[n];
            let eligible = n != m
                && ln.label == 0
                && ln.single
                && ln.speaker == lm.speaker
                && ln.words == lm.words
                && (reuse || !used.get(&n).copied().unwrap_or(false));
            if !eligible {
                continue;
            }
            let (lo, hi) = (m.min(n), m.max(n));
            let d = lines[lo + 1..=hi].iter().filter(|l| l.speaker == lm.speaker).count() as u32;
            if best.is_none_or(|(bd, bn)| d < bd || (d == bd && n < bn)) {
                best = Some((d, n));
            }
        }
        if let Some((d, n)) = best {
            used.insert(n, true);
            out.push((m, n, d));
        }
    }
    out
}

/// Text with `words` words; two sentences when `single` is false.
pub fn synth_text(idx: usize, words: usize, single: bool) -> String {
    let ws: Vec<String> = (0..words).map(|k| format!("w{idx}x{k}")).collect();
    if single || words < 2 {
        format!("{}.", ws.join(" "))
    } else {
        let half = words / 2;
        format!("{}. {}.", ws[..half].join(" "), ws[half..].join(" "))
    }
}
