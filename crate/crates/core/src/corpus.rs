//! Controlled pair construction from scripts and IMDb memorable-quote lists.
//!
//! Alignment labels every script line as memorable, covered (part of a
//! multi-sentence or multi-speaker memorable block) or plain. Pairing then
//! matches each memorable line with the nearest plain line by the same
//! speaker having the same number of words.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, Result};
use crate::text::{is_single_sentence, split_sentences, tokenize, Quote, QuotePair, Token};

/// Default normalized token edit distance accepted as a match.
pub const DEFAULT_ALIGN_THRESHOLD: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptLine {
    pub line_index: u32,
    pub speaker: String,
    pub text: String,
}

/// All lines of one movie, in script order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Script {
    movie_id: String,
    lines: Vec<ScriptLine>,
}

impl Script {
    /// Fails unless line indices are strictly increasing.
    pub fn new(movie_id: impl Into<String>, lines: Vec<ScriptLine>) -> Result<Self> {
        let movie_id = movie_id.into();
        if let Some(w) = lines.windows(2).find(|w| w[0].line_index >= w[1].line_index) {
            return Err(invariant(alloc::format!(
                "movie {movie_id}: line index {} does not follow {}",
                w[1].line_index,
                w[0].line_index
            )));
        }
        Ok(Script { movie_id, lines })
    }

    pub fn movie_id(&self) -> &str {
        &self.movie_id
    }

    pub fn lines(&self) -> &[ScriptLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The line at script position `pos` as a [`Quote`].
    pub fn quote(&self, pos: usize, is_memorable: bool) -> Quote {
        let l = &self.lines[pos];
        Quote::new(self.movie_id.clone(), l.line_index, l.speaker.clone(), l.text.clone(), is_memorable)
    }
}

/// The IMDb memorable quotes of one movie. An entry may be a single line,
/// a multi-sentence line or a newline-separated dialogue block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemorableList {
    pub movie_id: String,
    pub entries: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LineLabel {
    Plain,
    /// Matched by part of a memorable block; never usable as a foil.
    Covered,
    /// Matched by a single-sentence memorable entry.
    Memorable,
}

/// Per-line labels, parallel to [`Script::lines`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    labels: Vec<LineLabel>,
}

impl Alignment {
    pub fn from_labels(labels: Vec<LineLabel>) -> Self {
        Alignment { labels }
    }

    pub fn labels(&self) -> &[LineLabel] {
        &self.labels
    }

    pub fn memorable_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == LineLabel::Memorable)
            .map(|(i, _)| i)
    }

    pub fn count(&self, label: LineLabel) -> usize {
        self.labels.iter().filter(|l| **l == label).count()
    }
}

/// Levenshtein distance over tokens divided by the longer length.
pub fn normalized_edit_distance<S: PartialEq>(a: &[S], b: &[S]) -> f64 {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return 0.0;
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()] as f64 / longest as f64
}

fn within(a: &[&str], b: &[&str], threshold: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let longest = a.len().max(b.len()) as f64;
    // edit distance is at least the length difference
    if a.len().abs_diff(b.len()) as f64 / longest > threshold {
        return false;
    }
    normalized_edit_distance(a, b) <= threshold
}

/// Removes bracketed stage directions and a leading `NAME:` speaker tag
/// from one line of an IMDb entry.
pub fn strip_speaker(line: &str) -> String {
    let mut text = String::with_capacity(line.len());
    let mut depth = 0usize;
    for c in line.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ if depth == 0 => text.push(c),
            _ => {}
        }
    }
    if let Some(colon) = text.find(':') {
        let head = &text[..colon];
        let names: Vec<&str> = head.split_whitespace().collect();
        let looks_like_name = !names.is_empty()
            && names.len() <= 4
            && names.iter().all(|w| w.chars().next().is_some_and(|c| c.is_uppercase() || c.is_ascii_digit()));
        if looks_like_name {
            return String::from(text[colon + 1..].trim());
        }
    }
    String::from(text.trim())
}

fn word_texts(tokens: &[Token]) -> Vec<&str> {
    tokens.iter().filter(|t| t.is_word()).map(Token::text).collect()
}

/// Labels each script line against the movie's memorable list.
///
/// A line is memorable iff a single-sentence entry lies within `threshold`
/// normalized token edit distance of it and the line itself is a single
/// sentence. Lines matching any sentence of a longer entry are covered.
pub fn align_memorable(script: &Script, memlist: &MemorableList, threshold: f64) -> Alignment {
    let line_tokens: Vec<Vec<Token>> = script.lines.iter().map(|l| tokenize(&l.text)).collect();
    let line_words: Vec<Vec<&str>> = line_tokens.iter().map(|t| word_texts(t)).collect();
    let line_sentences: Vec<Vec<Vec<&str>>> = line_tokens
        .iter()
        .map(|t| split_sentences(t).into_iter().map(word_texts).filter(|w| !w.is_empty()).collect())
        .collect();
    let single: Vec<bool> = line_tokens.iter().map(|t| is_single_sentence(t)).collect();

    let mut labels = vec![LineLabel::Plain; script.len()];
    let mut raise = |i: usize, label: LineLabel| labels[i] = labels[i].max(label);

    for entry in &memlist.entries {
        let entry_lines: Vec<Vec<Token>> = entry
            .lines()
            .map(strip_speaker)
            .map(|l| tokenize(&l))
            .filter(|t| t.iter().any(Token::is_word))
            .collect();
        let is_single = entry_lines.len() == 1 && is_single_sentence(&entry_lines[0]);
        if is_single {
            let target = word_texts(&entry_lines[0]);
            for (i, words) in line_words.iter().enumerate() {
                if within(words, &target, threshold) {
                    raise(i, if single[i] { LineLabel::Memorable } else { LineLabel::Covered });
                }
            }
            continue;
        }
        let mut segments: Vec<Vec<&str>> = Vec::new();
        for toks in &entry_lines {
            segments.push(word_texts(toks));
            segments.extend(split_sentences(toks).into_iter().map(word_texts).filter(|w| !w.is_empty()));
        }
        for i in 0..script.len() {
            let hit = segments.iter().any(|seg| {
                within(&line_words[i], seg, threshold)
                    || line_sentences[i].iter().any(|s| within(s, seg, threshold))
            });
            if hit {
                raise(i, LineLabel::Covered);
            }
        }
    }
    Alignment { labels }
}

/// Pairing switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingConfig {
    /// Let one non-memorable line serve as the foil of several memorable
    /// lines. Off by default.
    pub reuse_foils: bool,
}

/// Per-line facts needed for pairing.
struct LineFacts {
    words: usize,
    single: bool,
}

/// Pairs every memorable line with its closest eligible foil.
///
/// Memorable lines are visited in script order. A foil must be plain,
/// a single sentence, spoken by the same speaker and have the same nonzero
/// word count; distance is counted in that speaker's lines and a tie
/// between the preceding and following candidate goes to the preceding
/// one. Each line is used as a foil at most once unless
/// [`PairingConfig::reuse_foils`] is set. Memorable lines without an
/// eligible foil are dropped.
pub fn build_pairs(script: &Script, alignment: &Alignment, config: &PairingConfig) -> Result<Vec<QuotePair>> {
    if alignment.labels.len() != script.len() {
        return Err(invariant("alignment does not match script length"));
    }
    let facts: Vec<LineFacts> = script
        .lines
        .iter()
        .map(|l| {
            let toks = tokenize(&l.text);
            LineFacts {
                words: toks.iter().filter(|t| t.is_word()).count(),
                single: is_single_sentence(&toks),
            }
        })
        .collect();
    let mut by_speaker: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    let mut ordinal = vec![0usize; script.len()];
    for (i, l) in script.lines.iter().enumerate() {
        let v = by_speaker.entry(l.speaker.as_str()).or_default();
        ordinal[i] = v.len();
        v.push(i);
    }

    let mut used = vec![false; script.len()];
    let mut pairs = Vec::new();
    for m in alignment.memorable_positions() {
        if facts[m].words == 0 || !facts[m].single {
            continue;
        }
        let same = &by_speaker[script.lines[m].speaker.as_str()];
        let k = ordinal[m];
        let eligible = |j: usize| {
            alignment.labels[j] == LineLabel::Plain
                && facts[j].single
                && facts[j].words == facts[m].words
                && (config.reuse_foils || !used[j])
        };
        let mut found = None;
        for d in 1.. {
            let before = k.checked_sub(d).map(|o| same[o]);
            let after = same.get(k + d).copied();
            if before.is_none() && after.is_none() {
                break;
            }
            if let Some(j) = before.into_iter().chain(after).find(|&j| eligible(j)) {
                found = Some((j, d));
                break;
            }
        }
        if let Some((n, d)) = found {
            used[n] = true;
            pairs.push(QuotePair::new(script.quote(m, true), script.quote(n, false), d as u32)?);
        }
    }
    Ok(pairs)
}

/// Counts memorable lines per tenth of their movie, summed over movies.
///
/// A line at position `p` of an `n`-line script falls in bin
/// `floor(10 p / n)`. With `drop_ends`, each movie's first and last lines
/// are removed before binning.
pub fn decile_histogram<'a, I>(movies: I, drop_ends: bool) -> [u64; 10]
where
    I: IntoIterator<Item = (&'a Script, &'a Alignment)>,
{
    let mut bins = [0u64; 10];
    for (script, alignment) in movies {
        let n = script.len();
        let (skip, len) = if drop_ends {
            if n <= 2 {
                continue;
            }
            (1, n - 2)
        } else {
            (0, n)
        };
        for pos in alignment.memorable_positions() {
            if pos < skip || pos >= skip + len {
                continue;
            }
            let bin = (10 * (pos - skip) / len).min(9);
            bins[bin] += 1;
        }
    }
    bins
}

/// The search-count rule: more than five hits for the memorable quote and at
/// least twice as many as for its foil.
pub fn passes_count_rule(memorable: u64, nonmemorable: u64) -> bool {
    memorable > 5 && memorable >= nonmemorable.saturating_mul(2)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FilterOutcome {
    pub kept: Vec<QuotePair>,
    /// Pairs excluded because a count record was missing.
    pub missing: Vec<QuotePair>,
}

/// Keeps the pairs that pass [`passes_count_rule`]; counts are keyed by
/// [`Quote::id`].
pub fn filter_by_counts(pairs: &[QuotePair], counts: &BTreeMap<String, u64>) -> FilterOutcome {
    let mut out = FilterOutcome::default();
    for p in pairs {
        let m = counts.get(&p.memorable().id());
        let n = counts.get(&p.nonmemorable().id());
        match (m, n) {
            (Some(&m), Some(&n)) => {
                if passes_count_rule(m, n) {
                    out.kept.push(p.clone());
                }
            }
            _ => out.missing.push(p.clone()),
        }
    }
    out
}

/// Median of the pairs' same-speaker line distances.
pub fn median_line_distance(pairs: &[QuotePair]) -> Option<f64> {
    let mut d: Vec<u32> = pairs.iter().map(QuotePair::line_distance).collect();
    if d.is_empty() {
        return None;
    }
    d.sort_unstable();
    let mid = d.len() / 2;
    Some(if d.len() % 2 == 1 {
        f64::from(d[mid])
    } else {
        (f64::from(d[mid - 1]) + f64::from(d[mid])) / 2.0
    })
}
