use memorability_core::text::{count_words, tokenize, Quote, QuotePair};
use proptest::prelude::*;

fn text_strategy() -> impl Strategy<Value = String> {
    let piece = prop::sample::select(vec![
        "it's", "don't", "I'm", "we'll", "they've", "you'd", "you're", "James'", "cat", "Dog", "RUN", ",", ".", "!",
        "?", "\"", "(", ")", ";", "--", "...", "Mr.", "e-mail", "3.5", "rock'n'roll", "O'Brien", "café",
    ]);
    prop::collection::vec(piece, 0..15).prop_map(|v| v.join(" "))
}

proptest! {
    #[test]
    fn tokenize_is_idempotent(t in text_strategy()) {
        let first = tokenize(&t);
        let joined: Vec<&str> = first.iter().map(|k| k.surface()).collect();
        let second = tokenize(&joined.join(" "));
        let texts = |v: &[memorability_core::Token]| v.iter().map(|k| (k.text().to_string(), k.kind())).collect::<Vec<_>>();
        prop_assert_eq!(texts(&first), texts(&second));
    }

    #[test]
    fn word_count_ignores_case(t in text_strategy()) {
        prop_assert_eq!(count_words(&tokenize(&t)), count_words(&tokenize(&t.to_uppercase())));
        prop_assert_eq!(count_words(&tokenize(&t)), count_words(&tokenize(&t.to_lowercase())));
    }

    #[test]
    fn pair_construction_enforces_invariants(a in text_strategy(), b in text_strategy(), same_speaker: bool, d in 0u32..4) {
        let m = Quote::new("mv", 1, "A", a, true);
        let n = Quote::new("mv", 2, if same_speaker { "A" } else { "B" }, b, false);
        let ok = same_speaker && m.word_count() == n.word_count() && d > 0;
        match QuotePair::new(m, n, d) {
            Ok(p) => {
                prop_assert!(ok);
                prop_assert_eq!(p.memorable().word_count(), p.nonmemorable().word_count());
                prop_assert_eq!(p.memorable().speaker(), p.nonmemorable().speaker());
                prop_assert!(p.memorable().is_memorable() && !p.nonmemorable().is_memorable());
            }
            Err(_) => prop_assert!(!ok),
        }
    }
}

#[test]
fn table_one_lengths() {
    let wc = |s: &str| count_words(&tokenize(s));
    assert_eq!(wc("Half a million dollars will always be missed."), 8);
    assert_eq!(wc("I know the type, trust me on this."), 8);
    assert_eq!(wc("No cold feet, or any other parts of our anatomy."), 10);
    assert_eq!(wc("I think it's time to try some unsafe velocities."), 10);
    assert_eq!(wc(""), 0);
}
