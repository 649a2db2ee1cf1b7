//! Laplace-smoothed n-gram language models over words or POS tags.
//!
//! A model of order `n` pads every sequence with `n - 1` start symbols and
//! estimates
//!
//! ```text
//! P(w | h) = (count(h, w) + alpha) / (count(h) + alpha * |V|)
//! ```
//!
//! where `count(h)` is the number of times `h` was observed as a context
//! and `V` is the training vocabulary plus one reserved `<unk>` type. The
//! start symbol is conditioning-only and is not part of `V`. An end symbol
//! is off by default; turning it on adds `</s>` to `V` and scores one extra
//! event per sequence.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use serde::{Deserialize, Serialize};

use crate::error::{config, invariant, Result};

pub const START: &str = "<s>";
pub const END: &str = "</s>";
pub const UNK: &str = "<unk>";

const START_ID: u32 = 0;
const UNK_ID: u32 = 1;
const END_ID: u32 = 2;
const FIRST_TYPE_ID: u32 = 3;
// Out-of-vocabulary id when UNK is disabled: never counted.
const OOV_ID: u32 = u32::MAX - 1;
const EMPTY: u32 = u32::MAX;

type Key = [u32; 3];

/// What the model's tokens are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Lexical,
    Pos,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmConfig {
    /// 1, 2 or 3.
    pub order: usize,
    /// Additive smoothing constant, > 0.
    pub alpha: f64,
    pub alphabet: Alphabet,
    /// Score an end-of-sequence event.
    pub end_symbol: bool,
    /// Reserve an `<unk>` type in the vocabulary for unseen tokens.
    pub unk: bool,
    /// Punctuation tokens are part of the sequences this model is trained
    /// on and scores. Callers that build sequences from quotes read this.
    #[serde(default = "yes")]
    pub punctuation: bool,
}

fn yes() -> bool {
    true
}

impl LmConfig {
    pub const DEFAULT_ALPHA: f64 = 0.2;

    pub fn new(order: usize, alphabet: Alphabet) -> Self {
        LmConfig {
            order,
            alpha: Self::DEFAULT_ALPHA,
            alphabet,
            end_symbol: false,
            unk: true,
            punctuation: true,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_punctuation(mut self, punctuation: bool) -> Self {
        self.punctuation = punctuation;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.order) {
            return Err(config(format!("n-gram order must be 1, 2 or 3, got {}", self.order)));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(config(format!("smoothing constant must be positive, got {}", self.alpha)));
        }
        Ok(())
    }
}

/// Which model assigns the higher likelihood.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preference {
    A,
    B,
    Tie,
}

/// A trained, immutable n-gram model.
#[derive(Clone, Debug)]
pub struct NGramLm {
    config: LmConfig,
    // id -> token; ids 0..3 are reserved
    types: Vec<String>,
    index: HashMap<String, u32>,
    ngram_counts: HashMap<Key, u64>,
    context_counts: HashMap<Key, u64>,
    total_tokens: u64,
}

fn ngram_key(ids: &[u32]) -> Key {
    let mut key = [EMPTY; 3];
    key[..ids.len()].copy_from_slice(ids);
    key
}

impl NGramLm {
    /// Counts n-grams over `corpus`. Fails on an empty corpus or a bad config.
    pub fn train<S: AsRef<str>>(corpus: &[Vec<S>], config: LmConfig) -> Result<Self> {
        config.validate()?;
        let mut lm = NGramLm {
            config,
            types: [START, UNK, END].iter().map(|s| (*s).to_owned()).collect(),
            index: HashMap::new(),
            ngram_counts: HashMap::new(),
            context_counts: HashMap::new(),
            total_tokens: 0,
        };
        let mut ids = Vec::new();
        for seq in corpus {
            ids.clear();
            for tok in seq {
                let tok = tok.as_ref();
                let id = match lm.index.get(tok) {
                    Some(&id) => id,
                    None => {
                        let id = lm.types.len() as u32;
                        lm.types.push(tok.to_owned());
                        lm.index.insert(tok.to_owned(), id);
                        id
                    }
                };
                ids.push(id);
            }
            lm.total_tokens += ids.len() as u64;
            let (contexts, ngrams) = (&mut lm.context_counts, &mut lm.ngram_counts);
            for_each_event(&lm.config, &ids, |ctx, gram| {
                *contexts.entry(ctx).or_insert(0) += 1;
                *ngrams.entry(gram).or_insert(0) += 1;
            });
        }
        if lm.total_tokens == 0 {
            return Err(crate::error::config("cannot train a language model on an empty corpus"));
        }
        Ok(lm)
    }

    pub fn config(&self) -> &LmConfig {
        &self.config
    }

    pub fn order(&self) -> usize {
        self.config.order
    }

    pub fn alpha(&self) -> f64 {
        self.config.alpha
    }

    pub fn alphabet(&self) -> Alphabet {
        self.config.alphabet
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    /// |V|: observed types plus the reserved `<unk>` (and `</s>` if enabled).
    pub fn vocab_size(&self) -> usize {
        self.types.len() - FIRST_TYPE_ID as usize
            + usize::from(self.config.unk)
            + usize::from(self.config.end_symbol)
    }

    /// Every predictable token type, reserved ones included.
    pub fn vocabulary(&self) -> impl Iterator<Item = &str> + '_ {
        let unk = self.config.unk.then_some(UNK);
        let end = self.config.end_symbol.then_some(END);
        self.types[FIRST_TYPE_ID as usize..]
            .iter()
            .map(String::as_str)
            .chain(unk)
            .chain(end)
    }

    fn id(&self, tok: &str) -> u32 {
        match self.index.get(tok) {
            Some(&id) => id,
            None if tok == UNK && self.config.unk => UNK_ID,
            None if tok == END && self.config.end_symbol => END_ID,
            None if tok == START => START_ID,
            None if self.config.unk => UNK_ID,
            None => OOV_ID,
        }
    }

    fn ids<S: AsRef<str>>(&self, seq: &[S]) -> Vec<u32> {
        seq.iter().map(|t| self.id(t.as_ref())).collect()
    }

    fn smoothed(&self, ctx: &Key, gram: &Key) -> f64 {
        let c_gram = self.ngram_counts.get(gram).copied().unwrap_or(0) as f64;
        let c_ctx = self.context_counts.get(ctx).copied().unwrap_or(0) as f64;
        let a = self.config.alpha;
        (c_gram + a) / (c_ctx + a * self.vocab_size() as f64)
    }

    /// Smoothed P(token | context). `context` holds the last `order - 1`
    /// tokens (use [`START`] for padding); longer contexts are truncated
    /// from the left, shorter ones are padded.
    pub fn conditional_prob<S: AsRef<str>>(&self, context: &[S], token: &str) -> f64 {
        let n = self.config.order;
        let mut ids: Vec<u32> = self.ids(context);
        if ids.len() > n - 1 {
            ids.drain(..ids.len() - (n - 1));
        }
        while ids.len() < n - 1 {
            ids.insert(0, START_ID);
        }
        let ctx = ngram_key(&ids);
        ids.push(self.id(token));
        self.smoothed(&ctx, &ngram_key(&ids))
    }

    /// Natural-log likelihood of `seq`; finite for any input, 0 for an
    /// empty sequence (unless the end symbol is enabled).
    pub fn log_prob<S: AsRef<str>>(&self, seq: &[S]) -> f64 {
        if seq.is_empty() && !self.config.end_symbol {
            return 0.0;
        }
        let ids = self.ids(seq);
        let mut total = 0.0;
        for_each_event(&self.config, &ids, |ctx, gram| {
            total += libm::log(self.smoothed(&ctx, &gram));
        });
        total
    }

    /// Contexts seen in training, as token lists.
    pub fn observed_contexts(&self) -> Vec<Vec<&str>> {
        let n = self.config.order;
        let mut out: Vec<Vec<&str>> = self
            .context_counts
            .keys()
            .map(|k| k[..n - 1].iter().map(|&id| self.types[id as usize].as_str()).collect())
            .collect();
        out.sort();
        out
    }

    /// Raw count of an n-gram (`gram.len() == order`).
    pub fn ngram_count<S: AsRef<str>>(&self, gram: &[S]) -> u64 {
        if gram.len() != self.config.order {
            return 0;
        }
        let key = ngram_key(&self.ids(gram));
        self.ngram_counts.get(&key).copied().unwrap_or(0)
    }

    /// Raw count of a context (`context.len() == order - 1`).
    pub fn context_count<S: AsRef<str>>(&self, context: &[S]) -> u64 {
        if context.len() + 1 != self.config.order {
            return 0;
        }
        let key = ngram_key(&self.ids(context));
        self.context_counts.get(&key).copied().unwrap_or(0)
    }

    /// Serializable copy of every count. Round-trips losslessly through
    /// [`NGramLm::from_snapshot`].
    pub fn snapshot(&self) -> LmSnapshot {
        let n = self.config.order;
        let dump = |m: &HashMap<Key, u64>, len: usize| {
            let mut v: Vec<(Vec<u32>, u64)> = m.iter().map(|(k, &c)| (k[..len].to_vec(), c)).collect();
            v.sort();
            v
        };
        LmSnapshot {
            format: LmSnapshot::FORMAT.to_owned(),
            version: LmSnapshot::VERSION,
            config: self.config.clone(),
            types: self.types[FIRST_TYPE_ID as usize..].to_vec(),
            ngrams: dump(&self.ngram_counts, n),
            contexts: dump(&self.context_counts, n - 1),
            total_tokens: self.total_tokens,
        }
    }

    pub fn from_snapshot(snap: LmSnapshot) -> Result<Self> {
        if snap.format != LmSnapshot::FORMAT || snap.version != LmSnapshot::VERSION {
            return Err(config(format!(
                "unsupported model format {} v{}",
                snap.format, snap.version
            )));
        }
        snap.config.validate()?;
        let n = snap.config.order;
        let mut types: Vec<String> = [START, UNK, END].iter().map(|s| (*s).to_owned()).collect();
        types.extend(snap.types);
        let index = types
            .iter()
            .enumerate()
            .skip(FIRST_TYPE_ID as usize)
            .map(|(i, t)| (t.clone(), i as u32))
            .collect::<HashMap<_, _>>();
        if index.len() + FIRST_TYPE_ID as usize != types.len() {
            return Err(invariant("duplicate vocabulary entries"));
        }
        let load = |entries: Vec<(Vec<u32>, u64)>, len: usize| -> Result<HashMap<Key, u64>> {
            entries
                .into_iter()
                .map(|(ids, c)| {
                    if ids.len() != len || ids.iter().any(|&i| i as usize >= types.len()) {
                        return Err(invariant("malformed n-gram entry"));
                    }
                    Ok((ngram_key(&ids), c))
                })
                .collect()
        };
        let ngram_counts = load(snap.ngrams, n)?;
        let context_counts = load(snap.contexts, n - 1)?;
        for (k, &c) in &ngram_counts {
            let ctx = ngram_key(&k[..n - 1]);
            if context_counts.get(&ctx).copied().unwrap_or(0) < c {
                return Err(invariant("n-gram count exceeds its context count"));
            }
        }
        Ok(NGramLm {
            config: snap.config,
            types,
            index,
            ngram_counts,
            context_counts,
            total_tokens: snap.total_tokens,
        })
    }
}

// Calls `f(context_key, ngram_key)` for every predicted event of a padded
// sequence.
fn for_each_event(config: &LmConfig, ids: &[u32], mut f: impl FnMut(Key, Key)) {
    let n = config.order;
    let mut padded = Vec::with_capacity(ids.len() + n);
    padded.extend(core::iter::repeat_n(START_ID, n - 1));
    padded.extend_from_slice(ids);
    if config.end_symbol {
        padded.push(END_ID);
    }
    for window in padded.windows(n) {
        f(ngram_key(&window[..n - 1]), ngram_key(window));
    }
}

/// Versioned dump of a model's counts. Ids index `types` offset by the
/// three reserved symbols (`<s>` = 0, `<unk>` = 1, `</s>` = 2).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmSnapshot {
    pub format: String,
    pub version: u32,
    pub config: LmConfig,
    pub types: Vec<String>,
    pub ngrams: Vec<(Vec<u32>, u64)>,
    pub contexts: Vec<(Vec<u32>, u64)>,
    pub total_tokens: u64,
}

impl LmSnapshot {
    pub const FORMAT: &'static str = "laplace-ngram";
    pub const VERSION: u32 = 1;
}

/// Compares the likelihood of `seq` under two models of the same order and
/// alphabet.
pub fn prefers<S: AsRef<str>>(a: &NGramLm, b: &NGramLm, seq: &[S]) -> Result<Preference> {
    if a.order() != b.order() || a.alphabet() != b.alphabet() {
        return Err(config("compared models differ in order or alphabet"));
    }
    let (la, lb) = (a.log_prob(seq), b.log_prob(seq));
    Ok(if la > lb {
        Preference::A
    } else if la < lb {
        Preference::B
    } else {
        Preference::Tie
    })
}
