//! Core algorithms for studying what makes a movie quote memorable.
//!
//! Everything here is pure computation over in-memory values and builds
//! without `std` (only `alloc` is required). File formats, the command-line
//! front end and the quiz HTTP service live in the `memorability` crate.
//!
//! The pieces, bottom-up:
//!
//! * [`text`]: tokenization, word counting, [`Quote`] and [`QuotePair`].
//! * [`tagger`]: an averaged-perceptron Penn Treebank tagger.
//! * [`lm`]: Laplace-smoothed word and tag n-gram models.
//! * [`corpus`]: script/IMDb alignment, controlled pair construction,
//!   the decile location histogram and the search-count filter.
//! * [`metrics`]: distinctiveness, generality, slogan and auxiliary
//!   comparisons over pair collections.
//! * [`stats`]: sign, binomial and paired t tests.
//! * [`predictor`]: pairwise features, a linear SVM and k-fold
//!   cross-validation.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod corpus;
mod error;
pub mod lm;
pub mod metrics;
pub mod predictor;
pub mod stats;
pub mod tagger;
pub mod text;

pub use error::{Error, Result};
pub use text::{tokenize, word_count, Quote, QuotePair, Token, TokenKind};
