mod common;
mod oracle;

use memorability_core::lm::{Alphabet, LmConfig, NGramLm};
use memorability_core::metrics::{
    distinctiveness_eval, distinctiveness_outcome, generality_counts, GeneralityMetric, MetricReport,
    PronounLexicon, Side,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swapping_roles_mirrors_win_percent(seed in any::<u64>(), order in 1usize..=3) {
        let pairs = common::null_pairs(40, seed);
        let train: Vec<Vec<&str>> = pairs.iter().map(|p| p.quote(Side::Memorable).lexical_tokens(true)).collect();
        let lm = NGramLm::train(&train, LmConfig::new(order, Alphabet::Lexical)).unwrap();
        let cfg = lm.config().clone();
        let forward = distinctiveness_eval(&pairs, &lm).unwrap();
        let back = MetricReport::from_outcomes("swapped", pairs.iter().map(|p| {
            let m = p.sequence(Side::Memorable, &cfg).unwrap();
            let n = p.sequence(Side::Nonmemorable, &cfg).unwrap();
            distinctiveness_outcome(&lm, &n, &m)
        }));
        prop_assert_eq!(forward.total(), pairs.len() as u64);
        prop_assert_eq!(back.ties, forward.ties);
        if let (Some(a), Some(b)) = (forward.win_percent, back.win_percent) {
            prop_assert!((a + b - 100.0).abs() < 1e-9);
        }

        let lex = PronounLexicon::default();
        for metric in GeneralityMetric::ALL {
            for p in &pairs {
                let m = generality_counts(&p.tagged_quote(Side::Memorable).unwrap(), &lex);
                let n = generality_counts(&p.tagged_quote(Side::Nonmemorable).unwrap(), &lex);
                prop_assert_eq!(metric.outcome(&m, &n), metric.outcome(&n, &m).flip());
                for c in [m, n] {
                    prop_assert_eq!(c.total_past_present, c.past_tense_verbs + c.present_tense_verbs);
                    for g in GeneralityMetric::ALL {
                        prop_assert!(c.get(g) <= c.total_tokens);
                    }
                }
            }
        }
    }
}

#[test]
fn model_trained_on_the_quotes_themselves() {
    let pairs = common::null_pairs(30, 5);
    for alphabet in [Alphabet::Lexical, Alphabet::Pos] {
        let cfg = LmConfig::new(3, alphabet);
        let train: Vec<Vec<&str>> = pairs
            .iter()
            .flat_map(|p| [p.sequence(Side::Memorable, &cfg).unwrap(), p.sequence(Side::Nonmemorable, &cfg).unwrap()])
            .collect();
        let lm = NGramLm::train(&train, cfg).unwrap();
        let r = distinctiveness_eval(&pairs, &lm).unwrap();
        assert_eq!(r.total(), 30);
        assert!(r.win_percent.unwrap().is_finite());
    }
}
