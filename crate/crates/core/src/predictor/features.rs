use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::error::{config, invariant, Result};
use crate::lm::{Alphabet, LmConfig, NGramLm};
use crate::metrics::{generality_counts, quote_sequence, tagged_sequence, GeneralityMetric, PronounLexicon, Side, TaggedPair};
use crate::tagger::TaggedQuote;
use crate::text::Quote;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSet {
    Bow,
    Distinctiveness,
    Generality,
    SloganSim,
    /// Distinctiveness, generality and slogan similarity together.
    All3,
}

impl FeatureSet {
    pub const ALL: [FeatureSet; 5] = [
        FeatureSet::Bow,
        FeatureSet::Distinctiveness,
        FeatureSet::Generality,
        FeatureSet::SloganSim,
        FeatureSet::All3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FeatureSet::Bow => "bow",
            FeatureSet::Distinctiveness => "distinctiveness",
            FeatureSet::Generality => "generality",
            FeatureSet::SloganSim => "slogan_sim",
            FeatureSet::All3 => "all3",
        }
    }
}

impl core::str::FromStr for FeatureSet {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        FeatureSet::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| config(format!("unknown feature set {s:?}")))
    }
}

/// What happens to a feature when the two quotes trade places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwapRule {
    /// The value changes sign.
    Negate,
    /// The value trades places with feature `j`.
    Exchange(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    id: String,
    names: Vec<String>,
    swaps: Vec<SwapRule>,
}

impl FeatureSchema {
    fn new(id: String) -> Self {
        FeatureSchema {
            id,
            names: Vec::new(),
            swaps: Vec::new(),
        }
    }

    fn push(&mut self, name: String, rule: SwapRule) {
        self.names.push(name);
        self.swaps.push(rule);
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn swaps(&self) -> &[SwapRule] {
        &self.swaps
    }

    /// The vector extracted from the same pair in the other order.
    pub fn swap(&self, values: &[f64]) -> Vec<f64> {
        self.swaps
            .iter()
            .enumerate()
            .map(|(i, r)| match *r {
                SwapRule::Negate => -values[i],
                SwapRule::Exchange(j) => values[j],
            })
            .collect()
    }

    /// `x - swap(x)`, the part of `x` that is odd under the swap.
    pub fn antisymmetric(&self, values: &[f64]) -> Vec<f64> {
        self.swaps
            .iter()
            .enumerate()
            .map(|(i, r)| match *r {
                SwapRule::Negate => 2.0 * values[i],
                SwapRule::Exchange(j) => values[i] - values[j],
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub schema_id: String,
}

/// Six models: lexical and POS, orders 1 to 3.
#[derive(Clone, Debug)]
pub struct LmSuite {
    models: Vec<NGramLm>,
}

impl LmSuite {
    /// Trains all six models on tagged sentences. `punctuation` decides
    /// whether punctuation tokens are part of the sequences.
    pub fn train_tagged(corpus: &[TaggedQuote], alpha: f64, punctuation: bool) -> Result<Self> {
        let mut models = Vec::with_capacity(6);
        for alphabet in [Alphabet::Lexical, Alphabet::Pos] {
            for order in 1..=3 {
                let cfg = LmConfig::new(order, alphabet)
                    .with_alpha(alpha)
                    .with_punctuation(punctuation);
                let seqs: Vec<Vec<&str>> = corpus.iter().map(|t| tagged_sequence(t, &cfg)).collect();
                models.push(NGramLm::train(&seqs, cfg)?);
            }
        }
        Ok(LmSuite { models })
    }

    pub fn from_models(models: Vec<NGramLm>) -> Result<Self> {
        if models.len() != 6 {
            return Err(config("a model suite holds exactly six models"));
        }
        Ok(LmSuite { models })
    }

    pub fn models(&self) -> &[NGramLm] {
        &self.models
    }
}

/// A quote as seen by feature extraction.
#[derive(Clone, Copy, Debug)]
pub struct QuoteView<'a> {
    pub quote: &'a Quote,
    pub tags: Option<&'a [String]>,
}

impl<'a> QuoteView<'a> {
    pub fn of(pair: &'a TaggedPair, side: Side) -> Self {
        QuoteView {
            quote: pair.quote(side),
            tags: pair.tags(side),
        }
    }
}

/// Bag-of-words vocabulary: lowercased word types seen at least
/// `min_count` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BowVocab {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl BowVocab {
    pub fn build<'a, I>(quotes: I, min_count: u64) -> Self
    where
        I: IntoIterator<Item = &'a Quote>,
    {
        let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
        for q in quotes {
            for w in q.lexical_tokens(false) {
                *counts.entry(w).or_default() += 1;
            }
        }
        let terms: Vec<String> = counts
            .into_iter()
            .filter(|&(_, c)| c >= min_count)
            .map(|(w, _)| w.to_string())
            .collect();
        Self::from_terms(terms)
    }

    pub fn from_terms(terms: Vec<String>) -> Self {
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        BowVocab { terms, index }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn counts(&self, q: &Quote) -> Vec<f64> {
        let mut v = alloc::vec![0.0; self.terms.len()];
        for w in q.lexical_tokens(false) {
            if let Some(&i) = self.index.get(w) {
                v[i] += 1.0;
            }
        }
        v
    }
}

/// Models that do not depend on pair labels and are trained once.
#[derive(Clone, Debug, Default)]
pub struct FeatureModels {
    /// Trained on common-language text.
    pub common: Option<LmSuite>,
    /// Trained on slogans.
    pub slogan: Option<LmSuite>,
    pub lexicon: PronounLexicon,
}

/// Turns ordered quote pairs into feature vectors for one feature set.
#[derive(Clone, Debug)]
pub struct FeatureExtractor<'m> {
    set: FeatureSet,
    models: &'m FeatureModels,
    bow: Option<BowVocab>,
    schema: FeatureSchema,
}

impl<'m> FeatureExtractor<'m> {
    /// `bow` is required for [`FeatureSet::Bow`] and ignored otherwise.
    pub fn new(set: FeatureSet, models: &'m FeatureModels, bow: Option<BowVocab>) -> Result<Self> {
        let mut schema = FeatureSchema::new(set.name().to_string());
        let needs_common = matches!(set, FeatureSet::Distinctiveness | FeatureSet::All3);
        let needs_slogan = matches!(set, FeatureSet::SloganSim | FeatureSet::All3);
        if needs_common && models.common.is_none() {
            return Err(config("feature set needs common-language models"));
        }
        if needs_slogan && models.slogan.is_none() {
            return Err(config("feature set needs slogan models"));
        }
        let bow = match set {
            FeatureSet::Bow => {
                let v = bow.ok_or_else(|| config("bag-of-words features need a vocabulary"))?;
                for t in &v.terms {
                    schema.push(format!("bow:{t}"), SwapRule::Negate);
                }
                schema.id = format!("bow:{}", v.len());
                Some(v)
            }
            _ => None,
        };
        if needs_common {
            lm_schema(&mut schema, "common", models.common.as_ref().unwrap());
        }
        if matches!(set, FeatureSet::Generality | FeatureSet::All3) {
            for m in GeneralityMetric::ALL {
                schema.push(format!("rate diff: {}", m.name()), SwapRule::Negate);
            }
        }
        if needs_slogan {
            lm_schema(&mut schema, "slogan", models.slogan.as_ref().unwrap());
        }
        Ok(FeatureExtractor {
            set,
            models,
            bow,
            schema,
        })
    }

    pub fn set(&self) -> FeatureSet {
        self.set
    }

    pub fn schema(&self) -> &FeatureSchema {
        &self.schema
    }

    pub fn extract(&self, first: QuoteView<'_>, second: QuoteView<'_>) -> Result<FeatureVector> {
        let mut values = Vec::with_capacity(self.schema.len());
        if let Some(bow) = &self.bow {
            let a = bow.counts(first.quote);
            let b = bow.counts(second.quote);
            values.extend(a.iter().zip(&b).map(|(x, y)| x - y));
        }
        if matches!(self.set, FeatureSet::Distinctiveness | FeatureSet::All3) {
            lm_features(&mut values, self.models.common.as_ref().unwrap(), first, second)?;
        }
        if matches!(self.set, FeatureSet::Generality | FeatureSet::All3) {
            let tq = |v: QuoteView<'_>| -> Result<TaggedQuote> {
                let tags = v.tags.ok_or_else(|| config("generality features need tagged quotes"))?;
                TaggedQuote::new(v.quote.clone(), tags.to_vec())
            };
            let a = generality_counts(&tq(first)?, &self.models.lexicon);
            let b = generality_counts(&tq(second)?, &self.models.lexicon);
            let rate = |c: &crate::metrics::GeneralityCounts, m| {
                if c.total_tokens == 0 {
                    0.0
                } else {
                    c.get(m) as f64 / c.total_tokens as f64
                }
            };
            for m in GeneralityMetric::ALL {
                values.push(rate(&a, m) - rate(&b, m));
            }
        }
        if matches!(self.set, FeatureSet::SloganSim | FeatureSet::All3) {
            lm_features(&mut values, self.models.slogan.as_ref().unwrap(), first, second)?;
        }
        if values.len() != self.schema.len() || values.iter().any(|v| !v.is_finite()) {
            return Err(invariant("feature vector does not match its schema"));
        }
        Ok(FeatureVector {
            values,
            schema_id: self.schema.id.clone(),
        })
    }

    pub fn extract_pair(&self, pair: &TaggedPair, memorable_first: bool) -> Result<FeatureVector> {
        let m = QuoteView::of(pair, Side::Memorable);
        let n = QuoteView::of(pair, Side::Nonmemorable);
        if memorable_first {
            self.extract(m, n)
        } else {
            self.extract(n, m)
        }
    }
}

fn lm_schema(schema: &mut FeatureSchema, prefix: &str, suite: &LmSuite) {
    for lm in &suite.models {
        let name = format!("{prefix} {}", crate::metrics::model_name(lm));
        let first = schema.len();
        schema.push(format!("{name}: ll(Q1)"), SwapRule::Exchange(first + 1));
        schema.push(format!("{name}: ll(Q2)"), SwapRule::Exchange(first));
        schema.push(format!("{name}: ll(Q1) - ll(Q2)"), SwapRule::Negate);
        schema.push(format!("{name}: sign"), SwapRule::Negate);
    }
}

fn lm_features(out: &mut Vec<f64>, suite: &LmSuite, first: QuoteView<'_>, second: QuoteView<'_>) -> Result<()> {
    for lm in &suite.models {
        let a = lm.log_prob(&quote_sequence(first.quote, first.tags, lm.config())?);
        let b = lm.log_prob(&quote_sequence(second.quote, second.tags, lm.config())?);
        let d = a - b;
        let sign = if d > 0.0 {
            1.0
        } else if d < 0.0 {
            -1.0
        } else {
            0.0
        };
        out.extend([a, b, d, sign]);
    }
    Ok(())
}
