//! Synthetic inputs shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use memorability_core::corpus::{Alignment, LineLabel, Script, ScriptLine};
use memorability_core::metrics::TaggedPair;
use memorability_core::predictor::{FeatureModels, LmSuite};
use memorability_core::tagger::TaggedQuote;
use memorability_core::{Quote, QuotePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{synth_text, SynthLine};

pub fn random_movie(rng: &mut ChaCha8Rng, max_lines: usize) -> Vec<SynthLine> {
    let n = rng.random_range(1..=max_lines);
    let speakers = rng.random_range(1..=4);
    (0..n)
        .map(|_| {
            let words = rng.random_range(1..=4);
            SynthLine {
                speaker: rng.random_range(0..speakers),
                words,
                single: words < 2 || rng.random_bool(0.85),
                label: match rng.random_range(0..10) {
                    0..=1 => 2,
                    2 => 1,
                    _ => 0,
                },
            }
        })
        .collect()
}

pub fn script_of(lines: &[SynthLine]) -> (Script, Alignment) {
    let script = Script::new(
        "syn",
        lines
            .iter()
            .enumerate()
            .map(|(i, l)| ScriptLine {
                line_index: i as u32 * 3,
                speaker: format!("S{}", l.speaker),
                text: synth_text(i, l.words, l.single),
            })
            .collect(),
    )
    .unwrap();
    let labels = lines
        .iter()
        .map(|l| match l.label {
            2 => LineLabel::Memorable,
            1 => LineLabel::Covered,
            _ => LineLabel::Plain,
        })
        .collect();
    (script, Alignment::from_labels(labels))
}

const WORDS: [(&str, &str); 24] = [
    ("the", "DT"),
    ("a", "DT"),
    ("he", "PRP"),
    ("it", "PRP"),
    ("you", "PRP"),
    ("i", "PRP"),
    ("dog", "NN"),
    ("money", "NN"),
    ("night", "NN"),
    ("city", "NN"),
    ("saw", "VBD"),
    ("was", "VBD"),
    ("is", "VBZ"),
    ("know", "VBP"),
    ("run", "VB"),
    ("never", "RB"),
    ("always", "RB"),
    ("big", "JJ"),
    ("old", "JJ"),
    ("and", "CC"),
    ("in", "IN"),
    ("of", "IN"),
    ("home", "NN"),
    ("love", "VBP"),
];

/// Random tagged text of `len` words drawn from a small fixed lexicon.
pub fn random_tagged(rng: &mut ChaCha8Rng, len: usize) -> (String, Vec<String>) {
    let mut words = Vec::new();
    let mut tags = Vec::new();
    for _ in 0..len {
        let (w, t) = WORDS[rng.random_range(0..WORDS.len())];
        words.push(w);
        tags.push(t.to_string());
    }
    tags.push(".".to_string());
    (format!("{}.", words.join(" ")), tags)
}

/// `n` pairs whose two sides come from the same distribution, so nothing
/// separates memorable from non-memorable.
pub fn null_pairs(n: usize, seed: u64) -> Vec<TaggedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let len = rng.random_range(3..=10);
            let (mt, mtags) = random_tagged(&mut rng, len);
            let (nt, ntags) = random_tagged(&mut rng, len);
            let m = Quote::new(format!("mv{i}"), 0, "A", mt, true);
            let q = Quote::new(format!("mv{i}"), 1, "A", nt, false);
            TaggedPair::new(QuotePair::new(m, q, 1).unwrap(), mtags, ntags).unwrap()
        })
        .collect()
}

/// Null pairs where every memorable quote also says "zebra".
pub fn separable_pairs(n: usize, seed: u64) -> Vec<TaggedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let len = rng.random_range(3..=10);
            let (mt, mut mtags) = random_tagged(&mut rng, len - 1);
            let (nt, ntags) = random_tagged(&mut rng, len);
            mtags.insert(0, "NN".into());
            let m = Quote::new(format!("mv{i}"), 0, "A", format!("zebra {mt}"), true);
            let q = Quote::new(format!("mv{i}"), 1, "A", nt, false);
            TaggedPair::new(QuotePair::new(m, q, 1).unwrap(), mtags, ntags).unwrap()
        })
        .collect()
}

pub fn models(seed: u64) -> FeatureModels {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = |n: usize| -> Vec<TaggedQuote> {
        (0..n)
            .map(|_| {
                let len = rng.random_range(3..=12);
                let (t, tags) = random_tagged(&mut rng, len);
                TaggedQuote::new(Quote::bare(t), tags).unwrap()
            })
            .collect()
    };
    let common = corpus(400);
    let slogans = corpus(100);
    FeatureModels {
        common: Some(LmSuite::train_tagged(&common, 0.2, true).unwrap()),
        slogan: Some(LmSuite::train_tagged(&slogans, 0.2, true).unwrap()),
        lexicon: Default::default(),
    }
}
