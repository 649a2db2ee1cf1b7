//! Averaged-perceptron part-of-speech tagger (Penn Treebank tagset).
//!
//! Greedy left-to-right tagging with the usual word, affix, shape and
//! previous-tag features. Frequent unambiguous words are looked up in a tag
//! dictionary. Tokens without letters or digits may only receive tags that
//! were seen on such tokens in training, and vice versa, so punctuation
//! always gets a punctuation tag.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{config, invariant, Result};
use crate::text::{tokenize, Quote, TokenKind};

/// A training sentence: surface tokens and their gold tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedSentence {
    pub tokens: Vec<String>,
    pub tags: Vec<String>,
}

/// A quote with one tag per token.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggedQuote {
    quote: Quote,
    tags: Vec<String>,
}

impl TaggedQuote {
    pub fn new(quote: Quote, tags: Vec<String>) -> Result<Self> {
        if quote.tokens().len() != tags.len() {
            return Err(invariant(format!(
                "{} tags for {} tokens",
                tags.len(),
                quote.tokens().len()
            )));
        }
        Ok(TaggedQuote { quote, tags })
    }

    /// Rebuilds a tagged quote from externally tokenized `token_TAG` input.
    ///
    /// The text is the tokens joined by spaces and is re-tokenized; when a
    /// source token splits further (`Mr.` → `mr` `.`), the first word piece
    /// keeps the source tag, clitics get their usual Penn tag and
    /// punctuation pieces get a punctuation tag.
    pub fn from_pretagged(pairs: &[(String, String)]) -> Self {
        let mut text = String::new();
        let mut tags = Vec::new();
        for (i, (tok, tag)) in pairs.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            text.push_str(tok);
            let pieces = tokenize(tok);
            if pieces.len() == 1 {
                tags.push(tag.clone());
                continue;
            }
            let mut first_word = true;
            for p in &pieces {
                let t = match p.kind() {
                    TokenKind::Punct => punct_tag(p.text()).to_owned(),
                    TokenKind::Word if first_word => tag.clone(),
                    TokenKind::Word => clitic_tag(p.text()).unwrap_or(tag).to_owned(),
                };
                first_word &= p.kind() == TokenKind::Punct;
                tags.push(t);
            }
        }
        let quote = Quote::bare(text);
        debug_assert_eq!(quote.tokens().len(), tags.len());
        TaggedQuote { quote, tags }
    }

    pub fn quote(&self) -> &Quote {
        &self.quote
    }

    pub fn tags(&self) -> &[String] {
        &self.tags
    }

    pub fn tag_strs(&self) -> Vec<&str> {
        self.tags.iter().map(String::as_str).collect()
    }
}

/// Penn tag for a punctuation-only token.
pub fn punct_tag(tok: &str) -> &'static str {
    match tok {
        "." | "!" | "?" | "?!" | "!?" => ".",
        "," => ",",
        "(" | "[" | "{" => "(",
        ")" | "]" | "}" => ")",
        "\"" | "''" | "'" => "''",
        "``" | "`" => "``",
        "$" => "$",
        "#" => "#",
        s if s.chars().all(|c| c == '!' || c == '?') => ".",
        s if s.chars().all(|c| matches!(c, ';' | ':' | '-' | '.' | '\u{2026}' | '\u{2013}' | '\u{2014}')) => ":",
        _ => "SYM",
    }
}

fn clitic_tag(tok: &str) -> Option<&'static str> {
    Some(match tok {
        "n't" => "RB",
        "'m" | "'re" | "'ve" => "VBP",
        "'ll" | "'d" => "MD",
        "'s" => "VBZ",
        _ => return None,
    })
}

const START: [&str; 2] = ["-START-", "-START2-"];
const END: [&str; 2] = ["-END-", "-END2-"];

fn has_alnum(s: &str) -> bool {
    s.chars().any(char::is_alphanumeric)
}

fn normalize(word: &str) -> String {
    let first_digit = word.chars().next().is_some_and(|c| c.is_ascii_digit());
    if word.contains('-') && !word.starts_with('-') {
        "!HYPHEN".to_owned()
    } else if word.len() == 4 && word.chars().all(|c| c.is_ascii_digit()) {
        "!YEAR".to_owned()
    } else if first_digit {
        "!DIGITS".to_owned()
    } else {
        word.to_lowercase()
    }
}

fn shape(word: &str) -> String {
    let mut out = String::new();
    let mut last = None;
    for c in word.chars() {
        let s = if c.is_uppercase() {
            'X'
        } else if c.is_lowercase() {
            'x'
        } else if c.is_ascii_digit() {
            'd'
        } else {
            c
        };
        if last != Some(s) {
            out.push(s);
            last = Some(s);
        }
    }
    out
}

fn suffix(word: &str, n: usize) -> &str {
    match word.char_indices().rev().nth(n - 1) {
        Some((i, _)) => &word[i..],
        None => word,
    }
}

fn prefix1(word: &str) -> &str {
    match word.char_indices().nth(1) {
        Some((i, _)) => &word[..i],
        None => word,
    }
}

// FNV-1a over the template id and parts.
fn feature_hash(template: u8, parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |b: u8| {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    eat(template);
    for p in parts {
        eat(0xff);
        for &b in p.as_bytes() {
            eat(b);
        }
    }
    h
}

fn features(i: usize, surface: &str, context: &[String], prev: &str, prev2: &str, out: &mut Vec<u64>) {
    out.clear();
    // context is padded by two on each side
    let i = i + 2;
    let w = context[i].as_str();
    let sh = shape(surface);
    let first = if i == 2 { "1" } else { "0" };
    out.push(feature_hash(0, &[]));
    out.push(feature_hash(1, &[suffix(w, 3)]));
    out.push(feature_hash(2, &[prefix1(w)]));
    out.push(feature_hash(3, &[prev]));
    out.push(feature_hash(4, &[prev2]));
    out.push(feature_hash(5, &[prev, prev2]));
    out.push(feature_hash(6, &[w]));
    out.push(feature_hash(7, &[prev, w]));
    out.push(feature_hash(8, &[&context[i - 1]]));
    out.push(feature_hash(9, &[suffix(&context[i - 1], 3)]));
    out.push(feature_hash(10, &[&context[i - 2]]));
    out.push(feature_hash(11, &[&context[i + 1]]));
    out.push(feature_hash(12, &[suffix(&context[i + 1], 3)]));
    out.push(feature_hash(13, &[&context[i + 2]]));
    out.push(feature_hash(14, &[&sh, first]));
    out.push(feature_hash(15, &[suffix(w, 2)]));
    out.push(feature_hash(16, &[&sh, prev]));
}

fn padded_context(surfaces: &[&str]) -> Vec<String> {
    let mut ctx = Vec::with_capacity(surfaces.len() + 4);
    ctx.extend(START.iter().map(|s| (*s).to_owned()));
    ctx.extend(surfaces.iter().map(|s| normalize(s)));
    ctx.extend(END.iter().map(|s| (*s).to_owned()));
    ctx
}

#[derive(Clone, Copy, Debug)]
struct Param {
    tag: u16,
    weight: f64,
    total: f64,
    stamp: u64,
}

/// Tag classes a token may receive.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
struct TagClasses {
    punct: Vec<u16>,
    word: Vec<u16>,
}

impl TagClasses {
    fn allowed(&self, surface: &str) -> Option<&[u16]> {
        let set = if has_alnum(surface) { &self.word } else { &self.punct };
        (!set.is_empty()).then_some(set.as_slice())
    }
}

/// A trained tagger. Immutable; tagging is deterministic.
#[derive(Clone, Debug)]
pub struct TaggerModel {
    tags: Vec<String>,
    weights: HashMap<u64, Vec<(u16, f64)>>,
    tagdict: HashMap<String, u16>,
    classes: TagClasses,
    iterations: usize,
}

fn argmax(scores: &[f64], allowed: Option<&[u16]>) -> u16 {
    let mut best = None::<(u16, f64)>;
    let mut consider = |t: u16| {
        let s = scores[t as usize];
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((t, s));
        }
    };
    match allowed {
        Some(set) => set.iter().copied().for_each(&mut consider),
        None => (0..scores.len() as u16).for_each(&mut consider),
    }
    best.map_or(0, |(t, _)| t)
}

/// Trains an averaged perceptron for `iterations` passes, shuffling the
/// sentence order before each pass with a generator seeded by `seed`.
pub fn train_tagger(corpus: &[TaggedSentence], iterations: usize, seed: u64) -> Result<TaggerModel> {
    if corpus.is_empty() {
        return Err(config("cannot train a tagger on an empty corpus"));
    }
    if iterations == 0 {
        return Err(config("tagger needs at least one training iteration"));
    }
    for (i, s) in corpus.iter().enumerate() {
        if s.tokens.len() != s.tags.len() {
            return Err(config(format!(
                "training sentence {i} has {} tokens but {} tags",
                s.tokens.len(),
                s.tags.len()
            )));
        }
    }

    let mut tagset: Vec<String> = corpus.iter().flat_map(|s| s.tags.iter().cloned()).collect();
    tagset.sort();
    tagset.dedup();
    if tagset.len() > u16::MAX as usize {
        return Err(config("too many distinct tags"));
    }
    let tag_id: BTreeMap<&str, u16> = tagset.iter().enumerate().map(|(i, t)| (t.as_str(), i as u16)).collect();

    let mut punct = Vec::new();
    let mut word = Vec::new();
    let mut freq: HashMap<&str, HashMap<u16, u32>> = HashMap::new();
    for s in corpus {
        for (tok, tag) in s.tokens.iter().zip(&s.tags) {
            let t = tag_id[tag.as_str()];
            if has_alnum(tok) { word.push(t) } else { punct.push(t) }
            *freq.entry(tok.as_str()).or_default().entry(t).or_insert(0) += 1;
        }
    }
    for set in [&mut punct, &mut word] {
        set.sort_unstable();
        set.dedup();
    }
    let classes = TagClasses { punct, word };

    let mut tagdict = HashMap::new();
    for (tok, counts) in &freq {
        let n: u32 = counts.values().sum();
        let (&best, &mode) = counts.iter().max_by_key(|(t, c)| (**c, core::cmp::Reverse(**t))).unwrap();
        if n >= 20 && f64::from(mode) / f64::from(n) >= 0.97 {
            tagdict.insert((*tok).to_owned(), best);
        }
    }

    let mut params: HashMap<u64, Vec<Param>> = HashMap::new();
    let mut instances: u64 = 0;
    let mut scores = alloc::vec![0.0; tagset.len()];
    let mut feats = Vec::new();
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..iterations {
        order.shuffle(&mut rng);
        for &si in &order {
            let sent = &corpus[si];
            let surfaces: Vec<&str> = sent.tokens.iter().map(String::as_str).collect();
            let context = padded_context(&surfaces);
            let (mut prev, mut prev2) = (START[0].to_owned(), START[1].to_owned());
            for (i, surface) in surfaces.iter().enumerate() {
                let guess = match tagdict.get(*surface) {
                    Some(&t) => t,
                    None => {
                        features(i, surface, &context, &prev, &prev2, &mut feats);
                        scores.iter_mut().for_each(|s| *s = 0.0);
                        for f in &feats {
                            if let Some(ps) = params.get(f) {
                                for p in ps {
                                    scores[p.tag as usize] += p.weight;
                                }
                            }
                        }
                        let guess = argmax(&scores, classes.allowed(surface));
                        let truth = tag_id[sent.tags[i].as_str()];
                        instances += 1;
                        if guess != truth {
                            for f in &feats {
                                let ps = params.entry(*f).or_default();
                                for (tag, delta) in [(truth, 1.0), (guess, -1.0)] {
                                    let p = match ps.iter_mut().position(|p| p.tag == tag) {
                                        Some(j) => &mut ps[j],
                                        None => {
                                            ps.push(Param { tag, weight: 0.0, total: 0.0, stamp: instances });
                                            ps.last_mut().unwrap()
                                        }
                                    };
                                    p.total += (instances - p.stamp) as f64 * p.weight;
                                    p.stamp = instances;
                                    p.weight += delta;
                                }
                            }
                        }
                        guess
                    }
                };
                prev2 = core::mem::replace(&mut prev, tagset[guess as usize].clone());
            }
        }
    }

    let n = instances.max(1) as f64;
    let mut weights = HashMap::with_capacity(params.len());
    for (f, ps) in params {
        let avg: Vec<(u16, f64)> = ps
            .into_iter()
            .filter_map(|p| {
                let total = p.total + (instances - p.stamp) as f64 * p.weight;
                let w = total / n;
                (w != 0.0).then_some((p.tag, w))
            })
            .collect();
        if !avg.is_empty() {
            weights.insert(f, avg);
        }
    }

    Ok(TaggerModel {
        tags: tagset,
        weights,
        tagdict,
        classes,
        iterations,
    })
}

impl TaggerModel {
    /// Sorted tag inventory.
    pub fn tagset(&self) -> &[String] {
        &self.tags
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Tags a sequence of surface tokens.
    pub fn tag_tokens(&self, surfaces: &[&str]) -> Vec<String> {
        let context = padded_context(surfaces);
        let mut scores = alloc::vec![0.0; self.tags.len()];
        let mut feats = Vec::new();
        let mut out: Vec<String> = Vec::with_capacity(surfaces.len());
        for (i, surface) in surfaces.iter().enumerate() {
            let tag = match self.tagdict.get(*surface) {
                Some(&t) => t,
                None => {
                    let prev = out.last().map_or(START[0], String::as_str);
                    let prev2 = match out.len() {
                        0 => START[1],
                        1 => START[0],
                        k => out[k - 2].as_str(),
                    };
                    features(i, surface, &context, prev, prev2, &mut feats);
                    scores.iter_mut().for_each(|s| *s = 0.0);
                    for f in &feats {
                        if let Some(ws) = self.weights.get(f) {
                            for &(t, w) in ws {
                                scores[t as usize] += w;
                            }
                        }
                    }
                    argmax(&scores, self.classes.allowed(surface))
                }
            };
            out.push(self.tags[tag as usize].clone());
        }
        out
    }

    /// Tags a quote using the original-case surface of each token.
    pub fn tag(&self, quote: &Quote) -> TaggedQuote {
        let surfaces: Vec<&str> = quote.tokens().iter().map(|t| t.surface()).collect();
        let tags = self.tag_tokens(&surfaces);
        TaggedQuote {
            quote: quote.clone(),
            tags,
        }
    }

    /// Fraction of tokens tagged correctly.
    pub fn accuracy(&self, gold: &[TaggedSentence]) -> f64 {
        let (mut right, mut total) = (0usize, 0usize);
        for s in gold {
            let surfaces: Vec<&str> = s.tokens.iter().map(String::as_str).collect();
            let guess = self.tag_tokens(&surfaces);
            right += guess.iter().zip(&s.tags).filter(|(a, b)| a == b).count();
            total += s.tags.len();
        }
        if total == 0 {
            0.0
        } else {
            right as f64 / total as f64
        }
    }

    pub fn snapshot(&self) -> TaggerSnapshot {
        let mut weights: Vec<(u64, Vec<(u16, f64)>)> = self
            .weights
            .iter()
            .map(|(k, v)| {
                let mut v = v.clone();
                v.sort_by_key(|e| e.0);
                (*k, v)
            })
            .collect();
        weights.sort_by_key(|e| e.0);
        let mut tagdict: Vec<(String, u16)> = self.tagdict.iter().map(|(k, v)| (k.clone(), *v)).collect();
        tagdict.sort();
        TaggerSnapshot {
            format: TaggerSnapshot::FORMAT.to_owned(),
            version: TaggerSnapshot::VERSION,
            tags: self.tags.clone(),
            punct_tags: self.classes.punct.clone(),
            word_tags: self.classes.word.clone(),
            tagdict,
            weights,
            iterations: self.iterations,
        }
    }

    pub fn from_snapshot(snap: TaggerSnapshot) -> Result<Self> {
        if snap.format != TaggerSnapshot::FORMAT || snap.version != TaggerSnapshot::VERSION {
            return Err(config(format!("unsupported tagger format {} v{}", snap.format, snap.version)));
        }
        let n = snap.tags.len();
        let in_range = |t: &u16| (*t as usize) < n;
        let ok = snap.punct_tags.iter().all(in_range)
            && snap.word_tags.iter().all(in_range)
            && snap.tagdict.iter().all(|(_, t)| in_range(t))
            && snap.weights.iter().all(|(_, ws)| ws.iter().all(|(t, _)| in_range(t)));
        if !ok || n == 0 {
            return Err(invariant("tagger snapshot references unknown tags"));
        }
        Ok(TaggerModel {
            tags: snap.tags,
            weights: snap.weights.into_iter().collect(),
            tagdict: snap.tagdict.into_iter().collect(),
            classes: TagClasses {
                punct: snap.punct_tags,
                word: snap.word_tags,
            },
            iterations: snap.iterations,
        })
    }
}

/// Serializable tagger weights; feature keys are 64-bit FNV-1a hashes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggerSnapshot {
    pub format: String,
    pub version: u32,
    pub tags: Vec<String>,
    pub punct_tags: Vec<u16>,
    pub word_tags: Vec<u16>,
    pub tagdict: Vec<(String, u16)>,
    pub weights: Vec<(u64, Vec<(u16, f64)>)>,
    pub iterations: usize,
}

impl TaggerSnapshot {
    pub const FORMAT: &'static str = "averaged-perceptron-tagger";
    pub const VERSION: u32 = 1;
}
