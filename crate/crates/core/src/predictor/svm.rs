//! Linear SVM without intercept: L2-regularized hinge loss solved by dual
//! coordinate descent.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    /// Cost of hinge loss relative to the regularizer.
    pub c: f64,
    /// Stop once the projected-gradient spread falls below this.
    pub tolerance: f64,
    pub max_epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            c: 1.0,
            tolerance: 1e-3,
            max_epochs: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearSvm {
    pub weights: Vec<f64>,
    /// Epochs run before stopping.
    pub epochs: usize,
}

impl LinearSvm {
    /// Labels are `+1.0` or `-1.0`.
    pub fn train(x: &[Vec<f64>], y: &[f64], cfg: &SvmConfig) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(config("SVM needs one label per example and at least one example"));
        }
        if cfg.c.is_nan() || cfg.c <= 0.0 {
            return Err(config("SVM cost must be positive"));
        }
        if y.iter().any(|&v| v != 1.0 && v != -1.0) {
            return Err(config("SVM labels must be +1 or -1"));
        }
        if y.iter().all(|&v| v == y[0]) {
            return Err(config("SVM training data has a single class"));
        }
        let dim = x[0].len();
        if x.iter().any(|r| r.len() != dim) {
            return Err(config("SVM examples differ in length"));
        }
        let qd: Vec<f64> = x.iter().map(|r| dot(r, r)).collect();
        let mut alpha = vec![0.0; x.len()];
        let mut w = vec![0.0; dim];
        let mut order: Vec<usize> = (0..x.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut epochs = 0;
        while epochs < cfg.max_epochs {
            epochs += 1;
            order.shuffle(&mut rng);
            let (mut pg_max, mut pg_min) = (f64::NEG_INFINITY, f64::INFINITY);
            for &i in &order {
                if qd[i] == 0.0 {
                    continue;
                }
                let g = y[i] * dot(&w, &x[i]) - 1.0;
                let pg = if alpha[i] == 0.0 {
                    g.min(0.0)
                } else if alpha[i] == cfg.c {
                    g.max(0.0)
                } else {
                    g
                };
                pg_max = pg_max.max(pg);
                pg_min = pg_min.min(pg);
                if pg.abs() > 1e-12 {
                    let old = alpha[i];
                    alpha[i] = (old - g / qd[i]).clamp(0.0, cfg.c);
                    let step = (alpha[i] - old) * y[i];
                    for (wj, xj) in w.iter_mut().zip(&x[i]) {
                        *wj += step * xj;
                    }
                }
            }
            if pg_max - pg_min < cfg.tolerance || pg_max == f64::NEG_INFINITY {
                break;
            }
        }
        Ok(LinearSvm { weights: w, epochs })
    }

    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
