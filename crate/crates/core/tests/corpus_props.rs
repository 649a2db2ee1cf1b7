mod common;
mod oracle;

use std::collections::BTreeMap;

use memorability_core::corpus::{
    build_pairs, decile_histogram, filter_by_counts, passes_count_rule, LineLabel, PairingConfig,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pairs_match_exhaustive_search(seed in any::<u64>(), reuse: bool) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = common::random_movie(&mut rng, 80);
        let (script, alignment) = common::script_of(&lines);
        let got: Vec<(usize, usize, u32)> = build_pairs(&script, &alignment, &PairingConfig { reuse_foils: reuse })
            .unwrap()
            .iter()
            .map(|p| {
                let pos = |idx: u32| (idx / 3) as usize;
                (pos(p.memorable().line_index()), pos(p.nonmemorable().line_index()), p.line_distance())
            })
            .collect();
        prop_assert_eq!(got, oracle::brute_force_pairs(&lines, reuse));
    }

    #[test]
    fn foils_are_plain_and_unique(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = common::random_movie(&mut rng, 80);
        let (script, alignment) = common::script_of(&lines);
        let pairs = build_pairs(&script, &alignment, &PairingConfig::default()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for p in &pairs {
            let n = (p.nonmemorable().line_index() / 3) as usize;
            prop_assert_eq!(alignment.labels()[n], LineLabel::Plain);
            prop_assert!(seen.insert(n));
            prop_assert_eq!(p.memorable().word_count(), p.nonmemorable().word_count());
            prop_assert_eq!(p.memorable().speaker(), p.nonmemorable().speaker());
        }
    }

    #[test]
    fn deciles_partition_memorable_lines(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = common::random_movie(&mut rng, 120);
        let (script, alignment) = common::script_of(&lines);
        let h = decile_histogram([(&script, &alignment)], false);
        prop_assert_eq!(h.iter().sum::<u64>() as usize, alignment.count(LineLabel::Memorable));
    }

    #[test]
    fn count_filter_is_an_idempotent_subset(seed in any::<u64>(), counts in prop::collection::vec(0u64..20, 200)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = common::random_movie(&mut rng, 100);
        let (script, alignment) = common::script_of(&lines);
        let pairs = build_pairs(&script, &alignment, &PairingConfig::default()).unwrap();
        let table: BTreeMap<String, u64> = script
            .lines()
            .iter()
            .zip(&counts)
            .map(|(l, &c)| (format!("syn:{}", l.line_index), c))
            .collect();
        let once = filter_by_counts(&pairs, &table);
        prop_assert!(once.kept.iter().all(|p| pairs.contains(p)));
        prop_assert_eq!(filter_by_counts(&once.kept, &table).kept, once.kept.clone());
        prop_assert_eq!(once.kept.len() + once.missing.len() <= pairs.len(), true);
    }
}

#[test]
fn count_rule_truth_table() {
    for m in [4, 5, 6] {
        for n in [0, 3, 6] {
            let want = m > 5 && m >= 2 * n;
            assert_eq!(passes_count_rule(m, n), want, "m={m} n={n}");
        }
    }
}
