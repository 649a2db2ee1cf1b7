//! The subcommands as library functions: build the pair dataset, run the
//! distinctiveness and generality analyses, cross-validate the predictors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use memorability_core::corpus::{
    align_memorable, build_pairs, decile_histogram, filter_by_counts, median_line_distance, Alignment, FilterOutcome,
    LineLabel, MemorableList, PairingConfig, Script,
};
use memorability_core::lm::{Alphabet, LmConfig, NGramLm};
use memorability_core::metrics::{
    aux_eval, distinctiveness_eval, generality_eval, model_name, preference_percent, slogan_spectrum, tagged_sequence,
    AuxConfig, GeneralityMetric, MetricReport, PronounLexicon, Side, SpectrumRow, TaggedPair,
};
use memorability_core::predictor::{
    cross_validate_with_plan, randomize_order, stratified_folds, CvConfig, FeatureModels, FeatureSet, FoldReport,
    LmSuite, SvmConfig,
};
use memorability_core::stats::{paired_t_test, stars, TestResult};
use memorability_core::tagger::{train_tagger, TaggedQuote, TaggerModel, TaggerSnapshot};
use memorability_core::{Quote, QuotePair};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::{RunConfig, TextFormat};
use crate::error::{AppError, Result};
use crate::io;
use crate::report::{metric_table, opt, round, Table};

/// Tagged training text shipped with the repository.
pub fn bundled_tagger_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/oanc-penn.tagged")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dataset {
    pub pairs: Vec<QuotePair>,
    pub movies: usize,
    pub memorable_lines: usize,
    pub covered_lines: usize,
    pub deciles: [u64; 10],
    /// Deciles with each movie's first and last line removed.
    pub deciles_trimmed: [u64; 10],
    pub median_line_distance: Option<f64>,
}

/// Aligns and pairs every movie. Movies are independent and processed in
/// parallel; output keeps movie-id order.
pub fn build_dataset(
    scripts: &BTreeMap<String, Script>,
    memorable: &BTreeMap<String, MemorableList>,
    threshold: f64,
    pairing: &PairingConfig,
) -> Result<Dataset> {
    let empty = MemorableList::default();
    let per_movie: Vec<(&Script, Alignment, Vec<QuotePair>)> = scripts
        .par_iter()
        .map(|(id, script)| {
            let list = memorable.get(id).unwrap_or(&empty);
            let alignment = align_memorable(script, list, threshold);
            let pairs = build_pairs(script, &alignment, pairing)?;
            Ok((script, alignment, pairs))
        })
        .collect::<Result<_>>()?;
    let labelled = || per_movie.iter().map(|(s, a, _)| (*s, a));
    let pairs: Vec<QuotePair> = per_movie.iter().flat_map(|(_, _, p)| p.iter().cloned()).collect();
    Ok(Dataset {
        movies: per_movie.len(),
        memorable_lines: per_movie.iter().map(|(_, a, _)| a.count(LineLabel::Memorable)).sum(),
        covered_lines: per_movie.iter().map(|(_, a, _)| a.count(LineLabel::Covered)).sum(),
        deciles: decile_histogram(labelled(), false),
        deciles_trimmed: decile_histogram(labelled(), true),
        median_line_distance: median_line_distance(&pairs),
        pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BuildSummary {
    pub movies: usize,
    pub memorable_lines: usize,
    pub covered_lines: usize,
    pub pairs: usize,
    pub median_line_distance: Option<f64>,
    pub google_pairs: Option<usize>,
    pub google_missing_counts: Option<usize>,
}

/// `build-pairs`: writes `pairs.jsonl`, `deciles.{tsv,json}`,
/// `build_summary.json` and, given counts, `pairs.google.jsonl`.
pub fn cmd_build_pairs(cfg: &RunConfig) -> Result<BuildSummary> {
    let scripts = io::read_scripts(cfg.need("scripts", &cfg.scripts)?)?;
    let memorable = io::read_memorable(cfg.need("memorable", &cfg.memorable)?)?;
    let data = build_dataset(
        &scripts,
        &memorable,
        cfg.align_threshold,
        &PairingConfig {
            reuse_foils: cfg.reuse_foils,
        },
    )?;
    if data.pairs.is_empty() {
        return Err(AppError::Input("no pairs could be built from the given scripts".into()));
    }
    let out = &cfg.output;
    io::write_atomic(&out.join("pairs.jsonl"), &io::to_jsonl(&data.pairs))?;
    let mut t = Table::new(&["decile", "count", "count_trimmed"]);
    for (i, (a, b)) in data.deciles.iter().zip(&data.deciles_trimmed).enumerate() {
        t.push(vec![(i + 1).into(), (*a).into(), (*b).into()]);
    }
    t.write(out, "deciles")?;

    let google: Option<FilterOutcome> = match &cfg.counts {
        Some(path) => Some(filter_by_counts(&data.pairs, &io::read_counts(path)?)),
        None => None,
    };
    if let Some(g) = &google {
        io::write_atomic(&out.join("pairs.google.jsonl"), &io::to_jsonl(&g.kept))?;
        let ids: Vec<String> = g.missing.iter().map(|p| p.memorable().id()).collect();
        io::write_atomic(&out.join("google_missing.txt"), (ids.join("\n") + "\n").as_bytes())?;
    }
    let summary = BuildSummary {
        movies: data.movies,
        memorable_lines: data.memorable_lines,
        covered_lines: data.covered_lines,
        pairs: data.pairs.len(),
        median_line_distance: data.median_line_distance,
        google_pairs: google.as_ref().map(|g| g.kept.len()),
        google_missing_counts: google.as_ref().map(|g| g.missing.len()),
    };
    io::write_json(&out.join("build_summary.json"), &summary)?;
    Ok(summary)
}

pub fn load_tagger(cfg: &RunConfig) -> Result<TaggerModel> {
    if let Some(path) = &cfg.tagger {
        let snap: TaggerSnapshot = io::read_json(path)?;
        return Ok(TaggerModel::from_snapshot(snap)?);
    }
    let corpus = cfg.tagger_corpus.clone().unwrap_or_else(bundled_tagger_corpus);
    let sentences = io::read_tagged_sentences(&corpus)?;
    Ok(train_tagger(&sentences, cfg.tagger_iterations, cfg.seed)?)
}

/// Reads a text corpus, tagging plain text with `tagger`.
pub fn load_text(path: &Path, format: TextFormat, tagger: &TaggerModel) -> Result<Vec<TaggedQuote>> {
    Ok(match format {
        TextFormat::Tagged => io::ingest_pretagged(path)?,
        TextFormat::Plain => io::read_sentences(path)?
            .into_par_iter()
            .map(|s| tagger.tag(&Quote::bare(s)))
            .collect(),
    })
}

pub fn tag_pairs(pairs: Vec<QuotePair>, tagger: &TaggerModel) -> Vec<TaggedPair> {
    pairs.into_par_iter().map(|p| TaggedPair::tag_with(p, tagger)).collect()
}

/// Share of a corpus each model kind says is more like memorable quotes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreferenceRow {
    pub model: String,
    pub slogans_percent: Option<f64>,
    pub newswire_percent: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Analysis {
    pub pairs: usize,
    pub distinctiveness: Vec<MetricReport>,
    pub generality: Vec<MetricReport>,
    pub preference: Vec<PreferenceRow>,
    pub spectrum: Option<[SpectrumRow; 3]>,
    pub aux: [MetricReport; 4],
}

/// Inputs shared by `analyze` and `predict`.
pub struct Loaded {
    pub pairs: Vec<TaggedPair>,
    pub newswire: Vec<TaggedQuote>,
    pub slogans: Option<Vec<TaggedQuote>>,
}

pub fn load_inputs(cfg: &RunConfig, need_slogans: bool) -> Result<Loaded> {
    let pairs = io::read_pairs(cfg.need("pairs", &cfg.pairs)?)?;
    load_with_pairs(cfg, pairs, need_slogans)
}

/// Like [`load_inputs`] with pairs already in memory.
pub fn load_with_pairs(cfg: &RunConfig, pairs: Vec<QuotePair>, need_slogans: bool) -> Result<Loaded> {
    if pairs.is_empty() {
        return Err(AppError::Input("the pair file is empty".into()));
    }
    let newswire_path = cfg.need("newswire", &cfg.newswire)?;
    if need_slogans {
        cfg.need("slogans", &cfg.slogans)?;
    }
    let tagger = load_tagger(cfg)?;
    let newswire = load_text(newswire_path, cfg.newswire_format, &tagger)?;
    let slogans = match &cfg.slogans {
        Some(p) => Some(load_text(p, cfg.slogans_format, &tagger)?),
        None => None,
    };
    Ok(Loaded {
        pairs: tag_pairs(pairs, &tagger),
        newswire,
        slogans,
    })
}

fn lm_configs(cfg: &RunConfig) -> Vec<LmConfig> {
    [Alphabet::Lexical, Alphabet::Pos]
        .into_iter()
        .flat_map(|a| (1..=3).map(move |o| (a, o)))
        .map(|(a, o)| LmConfig::new(o, a).with_alpha(cfg.alpha).with_punctuation(cfg.lm_punctuation))
        .collect()
}

fn train_on<'a, I>(corpus: I, lm: &LmConfig) -> Result<NGramLm>
where
    I: IntoIterator<Item = &'a TaggedQuote>,
{
    let seqs: Vec<Vec<&str>> = corpus.into_iter().map(|t| tagged_sequence(t, lm)).collect();
    Ok(NGramLm::train(&seqs, lm.clone())?)
}

pub fn aux_config(cfg: &RunConfig) -> Result<AuxConfig> {
    let mut aux = AuxConfig::default();
    if let Some(path) = &cfg.curse_words {
        for w in io::read_sentences(path)? {
            aux.curse_words.insert(w.to_lowercase());
        }
    }
    Ok(aux)
}

pub fn analyze(cfg: &RunConfig, data: &Loaded) -> Result<Analysis> {
    let lexicon = PronounLexicon {
        include_possessive: cfg.include_possessive,
        ..Default::default()
    };
    let configs = lm_configs(cfg);
    let distinctiveness = configs
        .par_iter()
        .map(|lm| {
            let model = train_on(&data.newswire, lm)?;
            Ok(distinctiveness_eval(&data.pairs, &model)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let generality = GeneralityMetric::ALL
        .iter()
        .map(|&m| generality_eval(&data.pairs, m, &lexicon))
        .collect::<Result<Vec<_>, _>>()?;

    let side = |s: Side| -> Result<Vec<TaggedQuote>> {
        data.pairs.iter().map(|p| p.tagged_quote(s)).collect::<Result<_, _>>().map_err(Into::into)
    };
    let memorable = side(Side::Memorable)?;
    let nonmemorable = side(Side::Nonmemorable)?;
    let preference = configs
        .par_iter()
        .map(|lm| {
            let a = train_on(&memorable, lm)?;
            let b = train_on(&nonmemorable, lm)?;
            let pct = |corpus: &[TaggedQuote]| {
                let seqs: Vec<Vec<&str>> = corpus.iter().map(|t| tagged_sequence(t, lm)).collect();
                preference_percent(&a, &b, &seqs)
            };
            Ok(PreferenceRow {
                model: model_name(&a),
                slogans_percent: data.slogans.as_deref().and_then(pct),
                newswire_percent: pct(&data.newswire),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let spectrum = data
        .slogans
        .as_deref()
        .map(|s| slogan_spectrum(s, &memorable, &nonmemorable, &lexicon));
    let aux = aux_eval(&data.pairs, &aux_config(cfg)?)?;
    Ok(Analysis {
        pairs: data.pairs.len(),
        distinctiveness,
        generality,
        preference,
        spectrum,
        aux,
    })
}

/// `analyze`: writes the distinctiveness, generality, preference,
/// spectrum and auxiliary tables.
pub fn cmd_analyze(cfg: &RunConfig) -> Result<Analysis> {
    let data = load_inputs(cfg, false)?;
    let a = analyze(cfg, &data)?;
    let out = &cfg.output;
    metric_table(&a.distinctiveness).write(out, "distinctiveness")?;
    metric_table(&a.generality).write(out, "generality")?;
    metric_table(&a.aux).write(out, "auxiliary")?;
    let mut t = Table::new(&["model", "slogans_preferring_memorable", "newswire_preferring_memorable"]);
    for r in &a.preference {
        t.push(vec![r.model.clone().into(), opt(r.slogans_percent, 2), opt(r.newswire_percent, 2)]);
    }
    t.write(out, "slogan_newswire_preference")?;
    if let Some(rows) = &a.spectrum {
        let mut t = Table::new(&["corpus", "third_person_pronouns", "indefinite_articles", "past_tense"]);
        for r in rows {
            t.push(vec![
                r.corpus.clone().into(),
                opt(r.rates.third_person_pronouns, 2),
                opt(r.rates.indefinite_articles, 2),
                opt(r.rates.past_tense, 2),
            ]);
        }
        t.write(out, "spectrum")?;
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub folds: Vec<FoldReport>,
    /// Paired t-test of each feature set against bag-of-words on the same
    /// folds; absent for bag-of-words itself.
    pub versus_bow: Vec<Option<TestResult>>,
}

impl Prediction {
    pub fn get(&self, set: FeatureSet) -> Option<(&FoldReport, Option<&TestResult>)> {
        let i = self.folds.iter().position(|f| f.featureset == set)?;
        Some((&self.folds[i], self.versus_bow[i].as_ref()))
    }
}

pub fn feature_models(cfg: &RunConfig, data: &Loaded) -> Result<FeatureModels> {
    let slogans = data
        .slogans
        .as_ref()
        .ok_or_else(|| AppError::Input("prediction needs the slogan corpus".into()))?;
    Ok(FeatureModels {
        common: Some(LmSuite::train_tagged(&data.newswire, cfg.alpha, cfg.lm_punctuation)?),
        slogan: Some(LmSuite::train_tagged(slogans, cfg.alpha, cfg.lm_punctuation)?),
        lexicon: PronounLexicon {
            include_possessive: cfg.include_possessive,
            ..Default::default()
        },
    })
}

pub fn cv_config(cfg: &RunConfig) -> CvConfig {
    CvConfig {
        k: cfg.folds,
        seed: cfg.seed,
        svm: SvmConfig {
            c: cfg.svm_c,
            seed: cfg.seed,
            ..SvmConfig::default()
        },
        bow_min_count: cfg.bow_min_count,
    }
}

/// Every feature set on one shared order and fold plan.
pub fn predict(cfg: &RunConfig, data: &Loaded) -> Result<Prediction> {
    let models = feature_models(cfg, data)?;
    let cv = cv_config(cfg);
    let positions = randomize_order(data.pairs.len(), cv.seed);
    let plan = stratified_folds(&positions, cv.k, cv.seed.wrapping_add(1))?;
    let folds = FeatureSet::ALL
        .par_iter()
        .map(|&set| cross_validate_with_plan(&data.pairs, &positions, &plan, set, &models, &cv))
        .collect::<Result<Vec<_>, _>>()?;
    let bow = &folds[0].per_fold_accuracy;
    let versus_bow = folds
        .iter()
        .map(|f| {
            if f.featureset == FeatureSet::Bow {
                Ok(None)
            } else {
                paired_t_test(&f.per_fold_accuracy, bow).map(Some)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Prediction { folds, versus_bow })
}

/// `predict`: writes `prediction.{tsv,json}` and `folds.json`.
pub fn cmd_predict(cfg: &RunConfig) -> Result<Prediction> {
    let data = load_inputs(cfg, true)?;
    let p = predict(cfg, &data)?;
    let mut t = Table::new(&["featureset", "features", "accuracy", "p_vs_bow", "sig"]);
    for (f, test) in p.folds.iter().zip(&p.versus_bow) {
        t.push(vec![
            f.featureset.name().into(),
            f.feature_count.into(),
            round(100.0 * f.mean_accuracy, 2),
            test.as_ref().map_or(Value::Null, |r| Value::String(format!("{:.3e}", r.p_value))),
            test.as_ref().map_or("", |r| stars(r.p_value)).into(),
        ]);
    }
    t.write(&cfg.output, "prediction")?;
    io::write_json(&cfg.output.join("folds.json"), &p.folds)?;
    Ok(p)
}

/// `train-tagger`: trains on a `token_TAG` corpus and saves the model.
pub fn cmd_train_tagger(corpus: &Path, out: &Path, iterations: usize, seed: u64) -> Result<f64> {
    let sentences = io::read_tagged_sentences(corpus)?;
    let model = train_tagger(&sentences, iterations, seed)?;
    io::write_json(out, &model.snapshot())?;
    Ok(model.accuracy(&sentences))
}
