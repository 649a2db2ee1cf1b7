//! Pair-level measurements: distinctiveness under a common-language model,
//! syntactic generality, the slogan spectrum and a few auxiliary measures.
//!
//! A quote is scored by a language model as its lowercased tokens or its
//! tags; punctuation takes part unless the model was configured without it.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{config, invariant, Result};
use crate::lm::{Alphabet, LmConfig, NGramLm};
use crate::stats::sign_test;
use crate::tagger::{TaggedQuote, TaggerModel};
use crate::text::{Quote, QuotePair};

/// How a single pair came out under a metric, from the memorable side's view.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Win,
    Loss,
    Tie,
}

impl Outcome {
    pub fn flip(self) -> Self {
        match self {
            Outcome::Win => Outcome::Loss,
            Outcome::Loss => Outcome::Win,
            Outcome::Tie => Outcome::Tie,
        }
    }

    /// `Win` when `ord` is `want`, `Tie` on equality.
    pub fn from_ordering(ord: Ordering, want: Ordering) -> Self {
        match ord {
            Ordering::Equal => Outcome::Tie,
            o if o == want => Outcome::Win,
            _ => Outcome::Loss,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub metric_name: String,
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
    /// Percentage of decided pairs won; absent when every pair tied.
    pub win_percent: Option<f64>,
    /// Two-tailed sign test; absent when every pair tied.
    pub p_value: Option<f64>,
}

impl MetricReport {
    pub fn from_outcomes<I: IntoIterator<Item = Outcome>>(metric_name: impl Into<String>, outcomes: I) -> Self {
        let (mut wins, mut losses, mut ties) = (0, 0, 0);
        for o in outcomes {
            match o {
                Outcome::Win => wins += 1,
                Outcome::Loss => losses += 1,
                Outcome::Tie => ties += 1,
            }
        }
        let decided = wins + losses;
        let (win_percent, p_value) = if decided == 0 {
            (None, None)
        } else {
            let p = sign_test(wins, losses).map(|r| r.p_value).ok();
            (Some(100.0 * wins as f64 / decided as f64), p)
        };
        MetricReport {
            metric_name: metric_name.into(),
            wins,
            losses,
            ties,
            win_percent,
            p_value,
        }
    }

    pub fn total(&self) -> u64 {
        self.wins + self.losses + self.ties
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Memorable,
    Nonmemorable,
}

/// A pair together with (optionally) the tags of both quotes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaggedPair {
    pair: QuotePair,
    tags: Option<[Vec<String>; 2]>,
}

impl TaggedPair {
    /// A pair usable only with lexical models.
    pub fn untagged(pair: QuotePair) -> Self {
        TaggedPair { pair, tags: None }
    }

    pub fn new(pair: QuotePair, memorable_tags: Vec<String>, nonmemorable_tags: Vec<String>) -> Result<Self> {
        if memorable_tags.len() != pair.memorable().tokens().len()
            || nonmemorable_tags.len() != pair.nonmemorable().tokens().len()
        {
            return Err(invariant(alloc::format!(
                "tag count does not match token count for pair {}",
                pair.memorable().id()
            )));
        }
        Ok(TaggedPair {
            pair,
            tags: Some([memorable_tags, nonmemorable_tags]),
        })
    }

    pub fn tag_with(pair: QuotePair, tagger: &TaggerModel) -> Self {
        let m = tagger.tag(pair.memorable()).tags().to_vec();
        let n = tagger.tag(pair.nonmemorable()).tags().to_vec();
        TaggedPair { pair, tags: Some([m, n]) }
    }

    pub fn pair(&self) -> &QuotePair {
        &self.pair
    }

    pub fn quote(&self, side: Side) -> &Quote {
        match side {
            Side::Memorable => self.pair.memorable(),
            Side::Nonmemorable => self.pair.nonmemorable(),
        }
    }

    pub fn tags(&self, side: Side) -> Option<&[String]> {
        self.tags.as_ref().map(|t| match side {
            Side::Memorable => t[0].as_slice(),
            Side::Nonmemorable => t[1].as_slice(),
        })
    }

    pub fn is_tagged(&self) -> bool {
        self.tags.is_some()
    }

    pub fn tagged_quote(&self, side: Side) -> Result<TaggedQuote> {
        let tags = self.tags(side).ok_or_else(|| config("pair is not tagged"))?;
        TaggedQuote::new(self.quote(side).clone(), tags.to_vec())
    }

    /// The sequence a model configured by `lm` scores for one side.
    pub fn sequence(&self, side: Side, lm: &LmConfig) -> Result<Vec<&str>> {
        quote_sequence(self.quote(side), self.tags(side), lm)
    }
}

/// The sequence a model configured by `lm` scores for `quote`. POS models
/// need `tags`, one per token.
pub fn quote_sequence<'a>(quote: &'a Quote, tags: Option<&'a [String]>, lm: &LmConfig) -> Result<Vec<&'a str>> {
    match lm.alphabet {
        Alphabet::Lexical => Ok(quote.lexical_tokens(lm.punctuation)),
        Alphabet::Pos => {
            let tags = tags.ok_or_else(|| config("POS model needs tagged quotes"))?;
            Ok(pos_tags(quote, tags, lm.punctuation))
        }
    }
}

/// Tags of the tokens of `quote`, optionally skipping punctuation.
pub fn pos_tags<'a>(quote: &Quote, tags: &'a [String], punctuation: bool) -> Vec<&'a str> {
    quote
        .tokens()
        .iter()
        .zip(tags)
        .filter(|(t, _)| punctuation || t.is_word())
        .map(|(_, g)| g.as_str())
        .collect()
}

/// The sequence scored for a tagged quote.
pub fn tagged_sequence<'a>(tq: &'a TaggedQuote, lm: &LmConfig) -> Vec<&'a str> {
    match lm.alphabet {
        Alphabet::Lexical => tq.quote().lexical_tokens(lm.punctuation),
        Alphabet::Pos => pos_tags(tq.quote(), tq.tags(), lm.punctuation),
    }
}

/// Conventional row name such as `lexical 2-gram`.
pub fn model_name(lm: &NGramLm) -> String {
    let kind = match lm.alphabet() {
        Alphabet::Lexical => "lexical",
        Alphabet::Pos => "POS",
    };
    alloc::format!("{kind} {}-gram", lm.order())
}

/// Memorable side wins when its sequence is *less* likely.
pub fn distinctiveness_outcome<S: AsRef<str>>(lm: &NGramLm, memorable: &[S], nonmemorable: &[S]) -> Outcome {
    let m = lm.log_prob(memorable);
    let n = lm.log_prob(nonmemorable);
    Outcome::from_ordering(m.partial_cmp(&n).unwrap_or(Ordering::Equal), Ordering::Less)
}

/// Share of pairs whose memorable quote is less likely under `lm`.
pub fn distinctiveness_eval(pairs: &[TaggedPair], lm: &NGramLm) -> Result<MetricReport> {
    let mut outcomes = Vec::with_capacity(pairs.len());
    for p in pairs {
        let m = p.sequence(Side::Memorable, lm.config())?;
        let n = p.sequence(Side::Nonmemorable, lm.config())?;
        outcomes.push(distinctiveness_outcome(lm, &m, &n));
    }
    Ok(MetricReport::from_outcomes(model_name(lm), outcomes))
}

/// Share of `texts` with strictly higher likelihood under `a` than `b`.
/// Ties count as losses, so the figure is a plain percentage of `texts`.
pub fn preference_percent<S: AsRef<str>>(a: &NGramLm, b: &NGramLm, texts: &[Vec<S>]) -> Option<f64> {
    if texts.is_empty() {
        return None;
    }
    let won = texts.iter().filter(|t| a.log_prob(t) > b.log_prob(t)).count();
    Some(100.0 * won as f64 / texts.len() as f64)
}

/// Third-person pronoun forms counted by the generality metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PronounLexicon {
    pub words: BTreeSet<String>,
    /// Count possessive forms (`his`, `its`, `their` ...) as well.
    pub include_possessive: bool,
}

const THIRD_PERSON: [&str; 16] = [
    "he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself", "they", "them",
    "their", "theirs", "themselves",
];
const POSSESSIVE: [&str; 5] = ["his", "hers", "its", "their", "theirs"];

impl Default for PronounLexicon {
    fn default() -> Self {
        PronounLexicon {
            words: THIRD_PERSON.iter().map(|w| w.to_string()).collect(),
            include_possessive: true,
        }
    }
}

impl PronounLexicon {
    pub fn matches(&self, word: &str, tag: &str) -> bool {
        if !self.words.contains(word) {
            return false;
        }
        match tag {
            "PRP" => self.include_possessive || !POSSESSIVE.contains(&word),
            "PRP$" => self.include_possessive,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralityCounts {
    pub third_person_pronouns: u64,
    pub indefinite_articles: u64,
    pub past_tense_verbs: u64,
    pub present_tense_verbs: u64,
    /// Word tokens; punctuation is not counted.
    pub total_tokens: u64,
    pub total_past_present: u64,
}

impl core::ops::AddAssign for GeneralityCounts {
    fn add_assign(&mut self, o: Self) {
        self.third_person_pronouns += o.third_person_pronouns;
        self.indefinite_articles += o.indefinite_articles;
        self.past_tense_verbs += o.past_tense_verbs;
        self.present_tense_verbs += o.present_tense_verbs;
        self.total_tokens += o.total_tokens;
        self.total_past_present += o.total_past_present;
    }
}

impl GeneralityCounts {
    pub fn get(&self, metric: GeneralityMetric) -> u64 {
        match metric {
            GeneralityMetric::ThirdPersonPronouns => self.third_person_pronouns,
            GeneralityMetric::IndefiniteArticles => self.indefinite_articles,
            GeneralityMetric::PastTense => self.past_tense_verbs,
            GeneralityMetric::PresentTense => self.present_tense_verbs,
        }
    }

    /// Percentages as reported for a pooled corpus: pronouns and articles
    /// over word tokens, past tense over past plus present verbs.
    pub fn rates(&self) -> SpectrumRates {
        let pct = |a: u64, b: u64| (b > 0).then(|| 100.0 * a as f64 / b as f64);
        SpectrumRates {
            third_person_pronouns: pct(self.third_person_pronouns, self.total_tokens),
            indefinite_articles: pct(self.indefinite_articles, self.total_tokens),
            past_tense: pct(self.past_tense_verbs, self.total_past_present),
        }
    }
}

pub fn generality_counts(tq: &TaggedQuote, lexicon: &PronounLexicon) -> GeneralityCounts {
    let mut c = GeneralityCounts::default();
    for (tok, tag) in tq.quote().tokens().iter().zip(tq.tags()) {
        if !tok.is_word() {
            continue;
        }
        c.total_tokens += 1;
        let w = tok.text();
        let tag = tag.as_str();
        if lexicon.matches(w, tag) {
            c.third_person_pronouns += 1;
        }
        if tag == "DT" && (w == "a" || w == "an") {
            c.indefinite_articles += 1;
        }
        match tag {
            "VBD" => c.past_tense_verbs += 1,
            "VBP" | "VBZ" => c.present_tense_verbs += 1,
            _ => {}
        }
    }
    c.total_past_present = c.past_tense_verbs + c.present_tense_verbs;
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralityMetric {
    ThirdPersonPronouns,
    IndefiniteArticles,
    PastTense,
    PresentTense,
}

impl GeneralityMetric {
    pub const ALL: [GeneralityMetric; 4] = [
        GeneralityMetric::ThirdPersonPronouns,
        GeneralityMetric::IndefiniteArticles,
        GeneralityMetric::PastTense,
        GeneralityMetric::PresentTense,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneralityMetric::ThirdPersonPronouns => "fewer 3rd-person pronouns",
            GeneralityMetric::IndefiniteArticles => "more indefinite articles",
            GeneralityMetric::PastTense => "less past tense",
            GeneralityMetric::PresentTense => "more present tense",
        }
    }

    /// The comparison of memorable to non-memorable counts that counts as
    /// more general.
    pub fn wins_when(self) -> Ordering {
        match self {
            GeneralityMetric::ThirdPersonPronouns | GeneralityMetric::PastTense => Ordering::Less,
            GeneralityMetric::IndefiniteArticles | GeneralityMetric::PresentTense => Ordering::Greater,
        }
    }

    pub fn outcome(self, memorable: &GeneralityCounts, nonmemorable: &GeneralityCounts) -> Outcome {
        Outcome::from_ordering(memorable.get(self).cmp(&nonmemorable.get(self)), self.wins_when())
    }
}

fn pair_counts(p: &TaggedPair, lexicon: &PronounLexicon) -> Result<[GeneralityCounts; 2]> {
    let m = generality_counts(&p.tagged_quote(Side::Memorable)?, lexicon);
    let n = generality_counts(&p.tagged_quote(Side::Nonmemorable)?, lexicon);
    Ok([m, n])
}

/// Share of decided pairs whose memorable quote is more general under
/// `metric`; pairs with equal counts are ties.
pub fn generality_eval(pairs: &[TaggedPair], metric: GeneralityMetric, lexicon: &PronounLexicon) -> Result<MetricReport> {
    let mut outcomes = Vec::with_capacity(pairs.len());
    for p in pairs {
        let [m, n] = pair_counts(p, lexicon)?;
        outcomes.push(metric.outcome(&m, &n));
    }
    Ok(MetricReport::from_outcomes(metric.name(), outcomes))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRates {
    pub third_person_pronouns: Option<f64>,
    pub indefinite_articles: Option<f64>,
    pub past_tense: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub corpus: String,
    pub counts: GeneralityCounts,
    pub rates: SpectrumRates,
}

pub fn pooled_counts<'a, I>(corpus: I, lexicon: &PronounLexicon) -> GeneralityCounts
where
    I: IntoIterator<Item = &'a TaggedQuote>,
{
    let mut total = GeneralityCounts::default();
    for tq in corpus {
        total += generality_counts(tq, lexicon);
    }
    total
}

/// Pooled generality rates of slogans, memorable and non-memorable quotes.
pub fn slogan_spectrum(
    slogans: &[TaggedQuote],
    memorable: &[TaggedQuote],
    nonmemorable: &[TaggedQuote],
    lexicon: &PronounLexicon,
) -> [SpectrumRow; 3] {
    let row = |name: &str, corpus: &[TaggedQuote]| {
        let counts = pooled_counts(corpus, lexicon);
        SpectrumRow {
            corpus: name.to_string(),
            counts,
            rates: counts.rates(),
        }
    };
    [
        row("slogans", slogans),
        row("memorable", memorable),
        row("non-memorable", nonmemorable),
    ]
}

/// Grapheme classes and curse words for the auxiliary measures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxConfig {
    pub front: BTreeSet<char>,
    pub back: BTreeSet<char>,
    /// Words skipped when counting sounds.
    pub curse_words: BTreeSet<String>,
}

/// Shipped default for [`AuxConfig::curse_words`].
pub const DEFAULT_CURSE_WORDS: &[&str] = &[
    "ass", "asshole", "bastard", "bitch", "bullshit", "crap", "damn", "damned", "dick", "fuck", "fucked",
    "fucker", "fuckin", "fucking", "goddamn", "goddamned", "hell", "motherfucker", "piss", "shit", "shitty",
    "son-of-a-bitch",
];

impl Default for AuxConfig {
    fn default() -> Self {
        AuxConfig {
            front: "pbmfvwie".chars().collect(),
            back: "uo".chars().collect(),
            curse_words: DEFAULT_CURSE_WORDS.iter().map(|w| w.to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AuxMeasures {
    pub front_sounds: u64,
    pub back_sounds: u64,
    /// Absent for a quote without words.
    pub mean_syllables: Option<f64>,
    pub conjunctions: u64,
}

/// Vowel groups in `word`, at least one.
pub fn estimate_syllables(word: &str) -> u32 {
    let mut groups = 0;
    let mut in_vowel = false;
    for c in word.chars() {
        let v = matches!(c.to_ascii_lowercase(), 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
        if v && !in_vowel {
            groups += 1;
        }
        in_vowel = v;
    }
    groups.max(1)
}

pub fn aux_measures(tq: &TaggedQuote, cfg: &AuxConfig) -> AuxMeasures {
    let mut m = AuxMeasures::default();
    let mut words = 0u64;
    let mut syllables = 0u64;
    for (tok, tag) in tq.quote().tokens().iter().zip(tq.tags()) {
        if !tok.is_word() {
            continue;
        }
        words += 1;
        syllables += u64::from(estimate_syllables(tok.text()));
        if tag == "CC" {
            m.conjunctions += 1;
        }
        if cfg.curse_words.contains(tok.text()) {
            continue;
        }
        for c in tok.text().chars() {
            if cfg.front.contains(&c) {
                m.front_sounds += 1;
            }
            if cfg.back.contains(&c) {
                m.back_sounds += 1;
            }
        }
    }
    m.mean_syllables = (words > 0).then(|| syllables as f64 / words as f64);
    m
}

/// Pair comparisons for the auxiliary measures: more front sounds, fewer
/// back sounds, more syllables per word, fewer conjunctions.
pub fn aux_eval(pairs: &[TaggedPair], cfg: &AuxConfig) -> Result<[MetricReport; 4]> {
    let mut outs: [Vec<Outcome>; 4] = Default::default();
    for p in pairs {
        let m = aux_measures(&p.tagged_quote(Side::Memorable)?, cfg);
        let n = aux_measures(&p.tagged_quote(Side::Nonmemorable)?, cfg);
        outs[0].push(Outcome::from_ordering(m.front_sounds.cmp(&n.front_sounds), Ordering::Greater));
        outs[1].push(Outcome::from_ordering(m.back_sounds.cmp(&n.back_sounds), Ordering::Less));
        let syl = m
            .mean_syllables
            .unwrap_or(0.0)
            .partial_cmp(&n.mean_syllables.unwrap_or(0.0))
            .unwrap_or(Ordering::Equal);
        outs[2].push(Outcome::from_ordering(syl, Ordering::Greater));
        outs[3].push(Outcome::from_ordering(m.conjunctions.cmp(&n.conjunctions), Ordering::Less));
    }
    let [a, b, c, d] = outs;
    Ok([
        MetricReport::from_outcomes("more front sounds", a),
        MetricReport::from_outcomes("fewer back sounds", b),
        MetricReport::from_outcomes("more syllables per word", c),
        MetricReport::from_outcomes("fewer coordinating conjunctions", d),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lm::LmConfig;
    use alloc::vec;

    fn tq(words: &[(&str, &str)]) -> TaggedQuote {
        let pairs: Vec<(String, String)> = words.iter().map(|(w, t)| (w.to_string(), t.to_string())).collect();
        TaggedQuote::from_pretagged(&pairs)
    }

    #[test]
    fn report_bookkeeping() {
        use Outcome::*;
        let r = MetricReport::from_outcomes("x", [Win, Win, Loss, Tie]);
        assert_eq!((r.wins, r.losses, r.ties, r.total()), (2, 1, 1, 4));
        assert!((r.win_percent.unwrap() - 200.0 / 3.0).abs() < 1e-12);
        let r = MetricReport::from_outcomes("x", [Tie, Tie]);
        assert_eq!(r.win_percent, None);
        assert_eq!(r.p_value, None);
    }

    #[test]
    fn first_second_person_only() {
        let q = tq(&[
            ("I", "PRP"),
            ("know", "VBP"),
            ("the", "DT"),
            ("type", "NN"),
            (",", ","),
            ("trust", "VB"),
            ("me", "PRP"),
            ("on", "IN"),
            ("this", "DT"),
            (".", "."),
        ]);
        let c = generality_counts(&q, &PronounLexicon::default());
        assert_eq!(c.third_person_pronouns, 0);
        assert_eq!(c.present_tense_verbs, 1);
        assert_eq!(c.total_tokens, 8);
    }

    #[test]
    fn one_pronoun_one_article() {
        let q = tq(&[
            ("A", "DT"),
            ("little", "JJ"),
            ("advice", "NN"),
            ("about", "IN"),
            ("feelings", "NNS"),
            ("kiddo", "NN"),
            (";", ":"),
            ("don't", "VBP"),
            ("expect", "VB"),
            ("it", "PRP"),
            ("always", "RB"),
            ("to", "TO"),
            ("tickle", "VB"),
            (".", "."),
        ]);
        let c = generality_counts(&q, &PronounLexicon::default());
        assert_eq!(c.third_person_pronouns, 1);
        assert_eq!(c.indefinite_articles, 1);
        assert_eq!(c.total_past_present, c.past_tense_verbs + c.present_tense_verbs);
    }

    #[test]
    fn possessive_switch() {
        let q = tq(&[("his", "PRP$"), ("dog", "NN"), ("saw", "VBD"), ("her", "PRP")]);
        let mut lex = PronounLexicon::default();
        assert_eq!(generality_counts(&q, &lex).third_person_pronouns, 2);
        lex.include_possessive = false;
        assert_eq!(generality_counts(&q, &lex).third_person_pronouns, 1);
    }

    #[test]
    fn empty_quote_counts_zero() {
        let c = generality_counts(&tq(&[]), &PronounLexicon::default());
        assert_eq!(c, GeneralityCounts::default());
        assert_eq!(c.rates(), SpectrumRates::default());
    }

    #[test]
    fn identical_pair_is_a_tie() {
        let m = Quote::new("m", 0, "A", "Go ahead, make my day.", true);
        let n = Quote::new("m", 2, "A", "Go ahead, make my day.", false);
        let p = TaggedPair::untagged(QuotePair::new(m, n, 1).unwrap());
        let lm = NGramLm::train(&[vec!["go", "ahead"]], LmConfig::new(2, Alphabet::Lexical)).unwrap();
        let r = distinctiveness_eval(core::slice::from_ref(&p), &lm).unwrap();
        assert_eq!(r.ties, 1);
        let pos = NGramLm::train(&[vec!["VB", "RB"]], LmConfig::new(1, Alphabet::Pos)).unwrap();
        assert!(distinctiveness_eval(core::slice::from_ref(&p), &pos).is_err());
        assert!(generality_eval(&[p], GeneralityMetric::PastTense, &PronounLexicon::default()).is_err());
    }

    #[test]
    fn rarer_memorable_quote_wins() {
        let m = Quote::new("m", 0, "A", "zebras dance", true);
        let n = Quote::new("m", 2, "A", "the dog", false);
        let p = TaggedPair::untagged(QuotePair::new(m, n, 1).unwrap());
        let lm = NGramLm::train(&[vec!["the", "dog"], vec!["the", "cat"]], LmConfig::new(1, Alphabet::Lexical)).unwrap();
        let r = distinctiveness_eval(&[p], &lm).unwrap();
        assert_eq!(r.wins, 1);
        assert_eq!(r.metric_name, "lexical 1-gram");
    }

    #[test]
    fn sounds_and_syllables() {
        let cfg = AuxConfig::default();
        let m = aux_measures(&tq(&[("i", "PRP")]), &cfg);
        assert_eq!((m.front_sounds, m.back_sounds), (1, 0));
        let m = aux_measures(&tq(&[("u", "PRP")]), &cfg);
        assert_eq!((m.front_sounds, m.back_sounds), (0, 1));
        let m = aux_measures(&tq(&[("damn", "JJ"), ("and", "CC")]), &cfg);
        assert_eq!(m.front_sounds, 0);
        assert_eq!(m.conjunctions, 1);
        assert_eq!(estimate_syllables("memorable"), 4);
        assert_eq!(estimate_syllables("the"), 1);
        assert_eq!(estimate_syllables("n't"), 1);
    }

    #[test]
    fn spectrum_of_tokenless_corpus() {
        let empty = [tq(&[(".", ".")])];
        let rows = slogan_spectrum(&empty, &empty, &empty, &PronounLexicon::default());
        assert!(rows.iter().all(|r| r.rates == SpectrumRates::default()));
    }
}
