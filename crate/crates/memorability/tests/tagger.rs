use memorability::io::read_tagged_sentences;
use memorability::pipeline::bundled_tagger_corpus;
use memorability_core::tagger::{train_tagger, TaggerModel};
use memorability_core::Quote;

#[test]
fn bundled_corpus_trains_an_accurate_tagger() {
    let sentences = read_tagged_sentences(&bundled_tagger_corpus()).unwrap();
    assert!(sentences.len() >= 10_000);
    let cut = sentences.len() * 9 / 10;
    let (train, held_out) = sentences.split_at(cut);
    let model = train_tagger(train, 5, 0).unwrap();
    let train_acc = model.accuracy(train);
    let test_acc = model.accuracy(held_out);
    println!("train {train_acc:.4} held-out {test_acc:.4}");
    assert!(train_acc >= 0.95, "training accuracy {train_acc}");
    assert!(test_acc >= 0.90, "held-out accuracy {test_acc}");

    let tq = model.tag(&Quote::bare("You will always be missed."));
    let missed = tq.quote().tokens().iter().position(|t| t.text() == "missed").unwrap();
    assert_eq!(tq.tags()[missed], "VBN");

    let restored = TaggerModel::from_snapshot(model.snapshot()).unwrap();
    assert_eq!(restored.tag(&Quote::bare("He saw the dog.")), model.tag(&Quote::bare("He saw the dog.")));
}
