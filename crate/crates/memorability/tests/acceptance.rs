//! Acceptance gate. One PASS/FAIL/SKIP line per criterion; any FAIL fails
//! the test.
//!
//! The property criteria always run. The reproduction criteria need the
//! released movie-quote corpus and run only when `MEMORABILITY_CONFIG`
//! names a run configuration (see README); otherwise they print SKIP.
//!
//! Lines go straight to stderr, so they show even without `--nocapture`.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;
#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use memorability::config::RunConfig;
use memorability::io;
use memorability::pipeline::{analyze, build_dataset, load_with_pairs, predict, Dataset};
use memorability_core::corpus::{build_pairs, passes_count_rule, PairingConfig};
use memorability_core::lm::{Alphabet, LmConfig, NGramLm};
use memorability_core::metrics::{MetricReport, Side};
use memorability_core::predictor::{
    cross_validate, randomize_order, BowVocab, CvConfig, FeatureExtractor, FeatureSet, PairwiseModel, Position,
    SvmConfig,
};
use memorability_core::stats::{binomial_test, paired_t_test, sign_test, stars};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

struct Gate {
    rows: Vec<(Status, &'static str, String)>,
}

impl Gate {
    fn record(&mut self, name: &'static str, status: Status, detail: String) {
        let tag = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        say(format_args!("{tag}  {name}  {detail}"));
        self.rows.push((status, name, detail));
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: String) {
        self.record(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }
}

/// Bypasses the test harness's output capture.
fn say(line: std::fmt::Arguments<'_>) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn lm_oracle(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let words = ["a", "b", "c", "d", "e"];
    let mut worst = 0f64;
    let mut worst_norm = 0f64;
    for i in 0..200 {
        let mut corpus: Vec<Vec<String>> = Vec::new();
        let mut tokens = 0;
        for _ in 0..rng.random_range(1..=5) {
            let len = rng.random_range(1..=5).min(20 - tokens);
            if len == 0 {
                break;
            }
            tokens += len;
            corpus.push((0..len).map(|_| words[rng.random_range(0..5)].to_string()).collect());
        }
        let order = 1 + i % 3;
        let lm = NGramLm::train(&corpus, LmConfig::new(order, Alphabet::Lexical)).unwrap();
        for _ in 0..5 {
            let q: Vec<String> = (0..rng.random_range(0..8))
                .map(|_| if rng.random_bool(0.1) { "zz".into() } else { words[rng.random_range(0..5)].to_string() })
                .collect();
            worst = worst.max((lm.log_prob(&q) - oracle::lm_log_prob(&corpus, order, 1, 5, &q)).abs());
        }
        let vocab: Vec<String> = lm.vocabulary().map(String::from).collect();
        for ctx in lm.observed_contexts() {
            let sum: f64 = vocab.iter().map(|w| lm.conditional_prob(&ctx, w)).sum();
            worst_norm = worst_norm.max((sum - 1.0).abs());
        }
    }
    gate.check(
        "LM oracle",
        worst < 1e-9 && worst_norm < 1e-9,
        format!("200 corpora, max |log p - oracle| = {worst:.1e}, max |sum - 1| = {worst_norm:.1e}"),
    );
}

fn stats_oracle(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (mut sign, mut binom, mut t) = (0f64, 0f64, 0f64);
    let mut symmetric = true;
    for _ in 0..100 {
        let (w, l) = (rng.random_range(0..400u64), rng.random_range(1..400u64));
        let p = sign_test(w, l).unwrap().p_value;
        sign = sign.max((p - oracle::sign_test_p(w, l)).abs());
        symmetric &= p == sign_test(l, w).unwrap().p_value;

        let n = rng.random_range(1..300u64);
        let k = rng.random_range(0..=n);
        let chance = rng.random_range(0.01..0.99);
        binom = binom.max((binomial_test(k, n, chance).unwrap().p_value - oracle::binomial_upper(k, n, chance)).abs());
        binom = binom.max((binomial_test(k, n, 0.5).unwrap().p_value - oracle::binomial_upper_half(k, n)).abs());

        let len = rng.random_range(2..30);
        let a: Vec<f64> = (0..len).map(|_| rng.random_range(-10.0..10.0)).collect();
        let shift = rng.random_range(-2.0..2.0);
        let b: Vec<f64> = a.iter().map(|x| x + shift + rng.random_range(-1.0..1.0)).collect();
        let r = paired_t_test(&a, &b).unwrap();
        let (ts, tp) = oracle::paired_t(&a, &b);
        t = t.max((r.p_value - tp).abs()).max((r.statistic - ts).abs() / ts.abs().max(1.0));
    }
    let eleven = binomial_test(11, 11, 0.5).unwrap().p_value;
    gate.check(
        "Statistics oracle",
        sign < 1e-9 && binom < 1e-9 && t < 1e-9 && symmetric && eleven == 2f64.powi(-11),
        format!(
            "100 each: sign {sign:.1e}, binomial {binom:.1e}, t {t:.1e}; symmetric {symmetric}; binomial(11,11) = {eleven:e}"
        ),
    );
}

fn pairing_oracle(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut mismatched = 0;
    let mut pairs = 0;
    for movie in 0..50 {
        let lines = common::random_movie(&mut rng, 200);
        let (script, alignment) = common::script_of(&lines);
        for reuse in [false, true] {
            let got: Vec<(usize, usize, u32)> = build_pairs(&script, &alignment, &PairingConfig { reuse_foils: reuse })
                .unwrap()
                .iter()
                .map(|p| {
                    let pos = |idx: u32| (idx / 3) as usize;
                    (pos(p.memorable().line_index()), pos(p.nonmemorable().line_index()), p.line_distance())
                })
                .collect();
            let want = oracle::brute_force_pairs(&lines, reuse);
            pairs += want.len();
            if got != want {
                mismatched += 1;
                say(format_args!("      movie {movie} reuse {reuse}: got {got:?} want {want:?}"));
            }
        }
    }
    gate.check(
        "Pairing oracle",
        mismatched == 0,
        format!("50 movies x 2 foil policies, {pairs} pairs, {mismatched} mismatches"),
    );
}

fn classifier_sanity(gate: &mut Gate) {
    let models = common::models(23);
    let train = common::separable_pairs(200, 24);
    let probe: Vec<_> = common::null_pairs(300, 25).into_iter().chain(common::separable_pairs(300, 26)).collect();
    let mut flips = 0usize;
    let mut broken = 0usize;
    for set in FeatureSet::ALL {
        let vocab = (set == FeatureSet::Bow).then(|| {
            BowVocab::build(train.iter().flat_map(|p| [p.quote(Side::Memorable), p.quote(Side::Nonmemorable)]), 2)
        });
        let ex = FeatureExtractor::new(set, &models, vocab).unwrap();
        let pos = randomize_order(train.len(), 27);
        let x: Vec<_> = train.iter().zip(&pos).map(|(p, o)| ex.extract_pair(p, *o == Position::First).unwrap()).collect();
        let model = PairwiseModel::fit(ex.schema(), &x, &pos, &SvmConfig::default()).unwrap();
        for p in &probe {
            let a = ex.extract_pair(p, true).unwrap();
            let b = ex.extract_pair(p, false).unwrap();
            flips += 1;
            if model.decision(&a) != -model.decision(&b) || model.predict(&a).map(Position::flip) != model.predict(&b) {
                broken += 1;
            }
        }
    }
    let null = common::null_pairs(1000, 28);
    let bow = cross_validate(&null, FeatureSet::Bow, &models, &CvConfig::default()).unwrap().mean_accuracy;
    let all3 = cross_validate(&null, FeatureSet::All3, &models, &CvConfig::default()).unwrap().mean_accuracy;
    let sep = cross_validate(&common::separable_pairs(200, 29), FeatureSet::Bow, &models, &CvConfig::default())
        .unwrap()
        .mean_accuracy;
    gate.check(
        "Classifier sanity",
        broken == 0 && within(bow, 0.5, 0.05) && within(all3, 0.5, 0.05) && sep == 1.0,
        format!(
            "flip {}/{flips} consistent; random labels bow {:.1}% all3 {:.1}%; separable {:.1}%",
            flips - broken,
            100.0 * bow,
            100.0 * all3,
            100.0 * sep
        ),
    );
}

fn count_filter(gate: &mut Gate) {
    let mut wrong = Vec::new();
    for m in [4u64, 5, 6] {
        for n in [0u64, 3, 6] {
            if passes_count_rule(m, n) != (m > 5 && m >= 2 * n) {
                wrong.push((m, n));
            }
        }
    }
    gate.check("Search-count filter", wrong.is_empty(), format!("9 cells, wrong {wrong:?}"));
}

const DATA_CRITERIA: [&str; 7] = [
    "Pair dataset",
    "Distinctiveness rates",
    "Generality rates",
    "Slogan and newswire preference",
    "Past-tense spectrum",
    "Prediction ladder",
    "Decile shape",
];

fn report<'a>(reports: &'a [MetricReport], name: &str) -> &'a MetricReport {
    reports.iter().find(|r| r.metric_name == name).unwrap_or_else(|| panic!("no row {name}"))
}

fn pct(r: &MetricReport) -> f64 {
    r.win_percent.unwrap_or(f64::NAN)
}

fn dataset_criteria(gate: &mut Gate, cfg: &RunConfig) {
    let scripts = io::read_scripts(cfg.scripts.as_deref().expect("scripts"));
    let memorable = io::read_memorable(cfg.memorable.as_deref().expect("memorable"));
    let started = Instant::now();
    let data: Dataset = build_dataset(
        &scripts.unwrap(),
        &memorable.unwrap(),
        cfg.align_threshold,
        &PairingConfig {
            reuse_foils: cfg.reuse_foils,
        },
    )
    .unwrap();
    let took = started.elapsed();
    let n = data.pairs.len() as f64;
    let median = data.median_line_distance.unwrap_or(f64::NAN);
    gate.check(
        "Pair dataset",
        within(n, 2200.0, 220.0) && within(median, 5.0, 2.0) && took < Duration::from_secs(120),
        format!("{n} pairs, median distance {median}, {:.1}s", took.as_secs_f64()),
    );

    let shape = |h: &[u64; 10]| {
        let max = *h.iter().max().unwrap();
        h[9] == max && h[9] > h[8] && h[0] > h[1]
    };
    gate.check(
        "Decile shape",
        shape(&data.deciles) && shape(&data.deciles_trimmed),
        format!("{:?}; trimmed {:?}", data.deciles, data.deciles_trimmed),
    );

    let has_slogans = cfg.slogans.is_some();
    let started = Instant::now();
    let loaded = load_with_pairs(cfg, data.pairs, false).unwrap();
    let a = analyze(cfg, &loaded).unwrap();
    let took = started.elapsed();

    let mut detail = String::new();
    let mut ok = took < Duration::from_secs(300);
    for (name, target) in [("lexical 1-gram", 61.13), ("lexical 2-gram", 59.22), ("lexical 3-gram", 59.81), ("POS 1-gram", 43.60)] {
        let r = report(&a.distinctiveness, name);
        let p = r.p_value.unwrap_or(1.0);
        ok &= within(pct(r), target, 4.0) && stars(p) == "***";
        write!(detail, "{name} {:.2}%{} ", pct(r), stars(p)).unwrap();
    }
    ok &= pct(report(&a.distinctiveness, "POS 1-gram")) < 50.0;
    write!(detail, "({:.0}s)", took.as_secs_f64()).unwrap();
    gate.check("Distinctiveness rates", ok, detail);

    let targets = [64.37, 57.21, 57.91, 54.60];
    let got: Vec<f64> = a.generality.iter().map(pct).collect();
    gate.check(
        "Generality rates",
        got.iter().zip(targets).all(|(&g, t)| g > 50.0 && within(g, t, 4.0)),
        format!("{got:.2?} vs {targets:?}"),
    );

    if !has_slogans {
        for name in ["Slogan and newswire preference", "Past-tense spectrum", "Prediction ladder"] {
            gate.record(name, Status::Skip, "no slogans in the run configuration".into());
        }
        return;
    }
    let loaded = load_with_pairs(cfg, loaded.pairs.iter().map(|p| p.pair().clone()).collect(), true).unwrap();
    let a = analyze(cfg, &loaded).unwrap();
    let row = |m: &str| a.preference.iter().find(|r| r.model == m).unwrap();
    let s = |m: &str| row(m).slogans_percent.unwrap_or(f64::NAN);
    let w = |m: &str| row(m).newswire_percent.unwrap_or(f64::NAN);
    let ok = s("lexical 1-gram") > 50.0
        && within(s("lexical 1-gram"), 56.15, 5.0)
        && ["POS 1-gram", "POS 2-gram", "POS 3-gram"].iter().all(|m| s(m) > 50.0)
        && ["lexical 1-gram", "lexical 2-gram", "lexical 3-gram"].iter().all(|m| w(m) < 50.0)
        && within(w("lexical 1-gram"), 33.77, 5.0);
    let detail = a
        .preference
        .iter()
        .map(|r| format!("{} {:.2}/{:.2}", r.model, r.slogans_percent.unwrap_or(f64::NAN), r.newswire_percent.unwrap_or(f64::NAN)))
        .collect::<Vec<_>>()
        .join(", ");
    gate.check("Slogan and newswire preference", ok, detail);

    let spectrum = a.spectrum.as_ref().unwrap();
    let past: Vec<f64> = spectrum.iter().map(|r| r.rates.past_tense.unwrap_or(f64::NAN)).collect();
    let targets = [14.60, 21.13, 26.69];
    gate.check(
        "Past-tense spectrum",
        past[0] < past[1] && past[1] < past[2] && past.iter().zip(targets).all(|(&p, t)| within(p, t, 3.0)),
        format!("past tense {past:.2?} vs {targets:?}"),
    );

    let started = Instant::now();
    let p = predict(cfg, &loaded).unwrap();
    let took = started.elapsed();
    let (bow, _) = p.get(FeatureSet::Bow).unwrap();
    let (all3, vs) = p.get(FeatureSet::All3).unwrap();
    let counts: Vec<usize> = [FeatureSet::Distinctiveness, FeatureSet::Generality, FeatureSet::SloganSim, FeatureSet::All3]
        .iter()
        .map(|&s| p.get(s).unwrap().0.feature_count)
        .collect();
    let pv = vs.map_or(1.0, |r| r.p_value);
    gate.check(
        "Prediction ladder",
        within(100.0 * bow.mean_accuracy, 59.67, 3.0)
            && within(100.0 * all3.mean_accuracy, 64.27, 3.0)
            && all3.mean_accuracy > bow.mean_accuracy
            && pv < 0.05
            && counts == [24, 4, 24, 52]
            && took < Duration::from_secs(900),
        format!(
            "bow {:.2}% all3 {:.2}% p {pv:.3e}; features {counts:?}; {:.0}s",
            100.0 * bow.mean_accuracy,
            100.0 * all3.mean_accuracy,
            took.as_secs_f64()
        ),
    );
}

#[test]
fn acceptance() {
    let mut gate = Gate { rows: Vec::new() };
    lm_oracle(&mut gate);
    stats_oracle(&mut gate);
    pairing_oracle(&mut gate);
    classifier_sanity(&mut gate);
    count_filter(&mut gate);

    match std::env::var_os("MEMORABILITY_CONFIG").map(PathBuf::from) {
        Some(path) => {
            let cfg = RunConfig::from_file(&path).unwrap();
            cfg.validate(&["scripts", "memorable", "newswire", "slogans", "tagger", "tagger_corpus"]).unwrap();
            dataset_criteria(&mut gate, &cfg);
        }
        None => {
            for name in DATA_CRITERIA {
                gate.record(name, Status::Skip, "set MEMORABILITY_CONFIG to a run configuration with the corpus".into());
            }
        }
    }

    let failed: Vec<&str> = gate.rows.iter().filter(|r| r.0 == Status::Fail).map(|r| r.1).collect();
    let passed = gate.rows.iter().filter(|r| r.0 == Status::Pass).count();
    let skipped = gate.rows.iter().filter(|r| r.0 == Status::Skip).count();
    say(format_args!("acceptance: {passed} passed, {} failed, {skipped} skipped", failed.len()));
    assert!(failed.is_empty(), "failed: {failed:?}");
}
