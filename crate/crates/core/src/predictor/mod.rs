//! Pairwise prediction: given two quotes from a pair in either order, say
//! which one is memorable.
//!
//! Every feature schema declares how each feature changes when the two
//! quotes trade places. The classifier sees `x - swap(x)`, which is odd
//! under the swap, and has no intercept, so reversing a pair always
//! reverses the prediction.

mod cv;
mod features;
mod svm;

pub use cv::{
    cross_validate, cross_validate_with_plan, randomize_order, stratified_folds, tie_break, CvConfig, FoldReport, PairwiseModel,
    Position,
};
pub use features::{
    BowVocab, FeatureExtractor, FeatureModels, FeatureSchema, FeatureSet, FeatureVector, LmSuite, QuoteView, SwapRule,
};
pub use svm::{LinearSvm, SvmConfig};
