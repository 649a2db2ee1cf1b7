use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::features::{BowVocab, FeatureExtractor, FeatureModels, FeatureSchema, FeatureSet, FeatureVector};
use super::svm::{LinearSvm, SvmConfig};
use crate::error::{config, invariant, Result};
use crate::metrics::{Side, TaggedPair};
use crate::text::Quote;

/// Where the memorable quote sits in an ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    First,
    Second,
}

impl Position {
    pub fn flip(self) -> Self {
        match self {
            Position::First => Position::Second,
            Position::Second => Position::First,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Position::First => 1.0,
            Position::Second => -1.0,
        }
    }
}

/// A trained pair classifier: the SVM over scaled antisymmetric features.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseModel {
    pub schema: FeatureSchema,
    /// Per-feature divisor, the root mean square on the training data.
    pub scale: Vec<f64>,
    pub svm: LinearSvm,
}

impl PairwiseModel {
    pub fn fit(schema: &FeatureSchema, x: &[FeatureVector], labels: &[Position], svm: &SvmConfig) -> Result<Self> {
        if x.len() != labels.len() {
            return Err(config("one label per training pair"));
        }
        if let Some(bad) = x.iter().find(|v| v.schema_id != schema.id() || v.values.len() != schema.len()) {
            return Err(invariant(format!("feature vector from schema {} given to {}", bad.schema_id, schema.id())));
        }
        let phi: Vec<Vec<f64>> = x.iter().map(|v| schema.antisymmetric(&v.values)).collect();
        let mut scale = vec![0.0; schema.len()];
        for row in &phi {
            for (s, v) in scale.iter_mut().zip(row) {
                *s += v * v;
            }
        }
        let n = phi.len().max(1) as f64;
        for s in &mut scale {
            *s = libm::sqrt(*s / n);
            if *s == 0.0 {
                *s = 1.0;
            }
        }
        let scaled: Vec<Vec<f64>> = phi
            .into_iter()
            .map(|row| row.iter().zip(&scale).map(|(v, s)| v / s).collect())
            .collect();
        let y: Vec<f64> = labels.iter().map(|p| p.sign()).collect();
        let svm = LinearSvm::train(&scaled, &y, svm)?;
        Ok(PairwiseModel {
            schema: schema.clone(),
            scale,
            svm,
        })
    }

    /// Positive when the first quote looks memorable.
    pub fn decision(&self, x: &FeatureVector) -> f64 {
        let phi = self.schema.antisymmetric(&x.values);
        let scaled: Vec<f64> = phi.iter().zip(&self.scale).map(|(v, s)| v / s).collect();
        self.svm.decision(&scaled)
    }

    /// `None` on a zero decision value.
    pub fn predict(&self, x: &FeatureVector) -> Option<Position> {
        let d = self.decision(x);
        if d > 0.0 {
            Some(Position::First)
        } else if d < 0.0 {
            Some(Position::Second)
        } else {
            None
        }
    }
}

/// Answer for a zero decision value: the quote whose text sorts first.
/// Independent of which quote is memorable, and reversed when the pair is.
pub fn tie_break(first: &Quote, second: &Quote) -> Position {
    match (first.text(), first.id()).cmp(&(second.text(), second.id())) {
        core::cmp::Ordering::Greater => Position::Second,
        _ => Position::First,
    }
}

/// A random presentation order for each of `n` pairs.
pub fn randomize_order(n: usize, seed: u64) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| if rng.random_bool(0.5) { Position::First } else { Position::Second })
        .collect()
}

/// Fold index for each item, with each label spread evenly across folds.
pub fn stratified_folds(labels: &[Position], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(config("cross-validation needs at least two folds"));
    }
    if labels.len() < k {
        return Err(config(format!("{} pairs cannot fill {k} folds", labels.len())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0; labels.len()];
    let mut next = 0;
    for class in [Position::First, Position::Second] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut rng);
        for i in idx {
            folds[i] = next % k;
            next += 1;
        }
    }
    Ok(folds)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CvConfig {
    pub k: usize,
    pub seed: u64,
    pub svm: SvmConfig,
    /// Bag-of-words frequency floor, counted on the training fold.
    pub bow_min_count: u64,
}

impl Default for CvConfig {
    fn default() -> Self {
        CvConfig {
            k: 10,
            seed: 0,
            svm: SvmConfig::default(),
            bow_min_count: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub featureset: FeatureSet,
    pub per_fold_accuracy: Vec<f64>,
    pub mean_accuracy: f64,
    /// For bag-of-words, the vocabulary size over all pairs; the folds'
    /// own sizes are in `per_fold_feature_count`.
    pub feature_count: usize,
    pub per_fold_feature_count: Vec<usize>,
}

/// k-fold cross-validation with a seeded presentation order and stratified
/// folds. Zero decision values are settled by [`tie_break`].
pub fn cross_validate(pairs: &[TaggedPair], set: FeatureSet, models: &FeatureModels, cfg: &CvConfig) -> Result<FoldReport> {
    let positions = randomize_order(pairs.len(), cfg.seed);
    let folds = stratified_folds(&positions, cfg.k, cfg.seed.wrapping_add(1))?;
    cross_validate_with_plan(pairs, &positions, &folds, set, models, cfg)
}

/// Cross-validation over a given presentation order and fold assignment.
pub fn cross_validate_with_plan(
    pairs: &[TaggedPair],
    positions: &[Position],
    folds: &[usize],
    set: FeatureSet,
    models: &FeatureModels,
    cfg: &CvConfig,
) -> Result<FoldReport> {
    if positions.len() != pairs.len() || folds.len() != pairs.len() {
        return Err(config("plan does not match the number of pairs"));
    }
    let mut per_fold_accuracy = Vec::with_capacity(cfg.k);
    let mut per_fold_feature_count = Vec::with_capacity(cfg.k);
    for fold in 0..cfg.k {
        let (train, test): (Vec<usize>, Vec<usize>) = (0..pairs.len()).partition(|&i| folds[i] != fold);
        if test.is_empty() {
            return Err(config(format!("fold {fold} is empty")));
        }
        let bow = (set == FeatureSet::Bow).then(|| fold_vocab(pairs, &train, cfg.bow_min_count));
        let ex = FeatureExtractor::new(set, models, bow)?;
        let x = train
            .iter()
            .map(|&i| ex.extract_pair(&pairs[i], positions[i] == Position::First))
            .collect::<Result<Vec<_>>>()?;
        let y: Vec<Position> = train.iter().map(|&i| positions[i]).collect();
        let svm = SvmConfig {
            seed: cfg.svm.seed.wrapping_add(fold as u64),
            ..cfg.svm
        };
        let model = PairwiseModel::fit(ex.schema(), &x, &y, &svm)?;
        let mut correct = 0usize;
        for &i in &test {
            let first = positions[i] == Position::First;
            let v = ex.extract_pair(&pairs[i], first)?;
            let (m, n) = (pairs[i].quote(Side::Memorable), pairs[i].quote(Side::Nonmemorable));
            let guess = model
                .predict(&v)
                .unwrap_or_else(|| if first { tie_break(m, n) } else { tie_break(n, m) });
            if guess == positions[i] {
                correct += 1;
            }
        }
        per_fold_accuracy.push(correct as f64 / test.len() as f64);
        per_fold_feature_count.push(ex.schema().len());
    }
    let mean_accuracy = per_fold_accuracy.iter().sum::<f64>() / per_fold_accuracy.len() as f64;
    let feature_count = match set {
        FeatureSet::Bow => fold_vocab(pairs, &(0..pairs.len()).collect::<Vec<_>>(), cfg.bow_min_count).len(),
        _ => FeatureExtractor::new(set, models, None)?.schema().len(),
    };
    Ok(FoldReport {
        featureset: set,
        per_fold_accuracy,
        mean_accuracy,
        feature_count,
        per_fold_feature_count,
    })
}

/// Bag-of-words vocabulary of the pairs at `idx`.
pub(crate) fn fold_vocab(pairs: &[TaggedPair], idx: &[usize], min_count: u64) -> BowVocab {
    BowVocab::build(
        idx.iter()
            .flat_map(|&i| [pairs[i].quote(Side::Memorable), pairs[i].quote(Side::Nonmemorable)]),
        min_count,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_are_stratified() {
        let labels = randomize_order(1000, 7);
        let folds = stratified_folds(&labels, 10, 7).unwrap();
        for f in 0..10 {
            let size = folds.iter().filter(|&&x| x == f).count();
            assert!((99..=101).contains(&size));
            let firsts = (0..1000).filter(|&i| folds[i] == f && labels[i] == Position::First).count();
            let total_first = labels.iter().filter(|&&p| p == Position::First).count();
            assert!(firsts.abs_diff(total_first / 10) <= 1);
        }
        assert!(stratified_folds(&labels[..5], 10, 0).is_err());
    }

    #[test]
    fn order_is_seeded() {
        assert_eq!(randomize_order(50, 3), randomize_order(50, 3));
        assert_ne!(randomize_order(50, 3), randomize_order(50, 4));
    }
}
