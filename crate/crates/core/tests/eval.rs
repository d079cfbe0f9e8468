use std::collections::HashSet;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use proptest::prelude::*;
use treelabel::eval::{bracketing_score, default_deleted_labels, label_accuracy};
use treelabel::toy::toy_treebank;
use treelabel::treebank::{read_treebank, uncollapse_unaries};
use treelabel::{decode, EncodingScheme, ExtendedLabel, LabeledSentence, Level, Token, Tree};

fn read(name: &str) -> Vec<Tree> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("testdata").join(name);
    read_treebank(BufReader::new(File::open(path).unwrap()))
        .map(|r| r.unwrap().1)
        .collect()
}

#[test]
fn deletion_golden() {
    let gold = read("eval_gold.mrg");
    let pred = read("eval_pred.mrg");

    // with punctuation and TOP deleted: 7 of 10 spans on each side match,
    // and only the third sentence matches exactly
    let r = bracketing_score(&gold, &pred, &default_deleted_labels()).unwrap();
    assert_eq!((r.matched_brackets, r.gold_brackets, r.pred_brackets), (7, 10, 10));
    assert_eq!(r.summary_line(), "P=0.7000 R=0.7000 F1=0.7000 ACC=n/a EXACT=0.3333");

    // nothing deleted: TOP and the punctuation leaves count, 7 of 11 match
    let r = bracketing_score(&gold, &pred, &HashSet::new()).unwrap();
    assert_eq!((r.matched_brackets, r.gold_brackets, r.pred_brackets), (7, 11, 11));
    assert_eq!(format!("{:.4}", r.f1), "0.6364");
    assert_eq!(r.exact_match, 0.0);
}

fn labels(spec: &[(Level, &str)]) -> Vec<ExtendedLabel> {
    let mut out: Vec<ExtendedLabel> = spec.iter().map(|(l, c)| ExtendedLabel::plain(*l, *c)).collect();
    out.push(ExtendedLabel::eos());
    out
}

#[test]
fn equal_accuracy_unequal_f1() {
    let scheme = EncodingScheme::default();
    let tokens: Vec<Token> = ["a", "b", "c", "d"].iter().map(|w| Token::new(*w, "T")).collect();
    let sentence = |l: Vec<ExtendedLabel>| LabeledSentence::new(tokens.clone(), l);
    // (S (X a b) (Y c d))
    let gold = sentence(labels(&[
        (Level::Relative(2), "X"),
        (Level::Root, "S"),
        (Level::Relative(1), "Y"),
    ]));
    // wrong nonterminal at c: (S (X a b) (Z c d))
    let pred_label = sentence(labels(&[
        (Level::Relative(2), "X"),
        (Level::Root, "S"),
        (Level::Relative(1), "Z"),
    ]));
    // wrong level at a: the X bracket is never opened, (X a b (Y c d))
    let pred_level = sentence(labels(&[
        (Level::Relative(1), "X"),
        (Level::Root, "S"),
        (Level::Relative(1), "Y"),
    ]));

    let tree = |s: &LabeledSentence| decode(&s.tokens, &s.labels, &scheme).unwrap();
    assert_eq!(tree(&gold).to_string(), "(S (X (T a) (T b)) (Y (T c) (T d)))");
    assert_eq!(tree(&pred_level).to_string(), "(X (T a) (T b) (Y (T c) (T d)))");

    let acc_label = label_accuracy(std::slice::from_ref(&gold), std::slice::from_ref(&pred_label)).unwrap();
    let acc_level = label_accuracy(std::slice::from_ref(&gold), std::slice::from_ref(&pred_level)).unwrap();
    assert_eq!(acc_label, 0.75);
    assert_eq!(acc_level, 0.75);

    let none = HashSet::new();
    let f_label = bracketing_score(&[tree(&gold)], &[tree(&pred_label)], &none).unwrap();
    let f_level = bracketing_score(&[tree(&gold)], &[tree(&pred_level)], &none).unwrap();
    assert_eq!(format!("{:.4}", f_label.f1), "0.6667");
    assert_eq!(format!("{:.4}", f_level.f1), "0.4000");
}

fn random_prediction(gold: &Tree, levels: &[i32]) -> Tree {
    let tokens = gold.tokens();
    let mut labels: Vec<ExtendedLabel> = levels
        .iter()
        .cycle()
        .take(tokens.len() - 1)
        .map(|&d| ExtendedLabel::plain(Level::Relative(d), if d % 2 == 0 { "NP" } else { "VP" }))
        .collect();
    labels.push(ExtendedLabel::eos());
    let scheme = EncodingScheme::new(treelabel::Scale::Relative, treelabel::UnaryStrategy::TwoPass);
    uncollapse_unaries(&decode(&tokens, &labels, &scheme).unwrap())
}

proptest! {
    #[test]
    fn score_bounds(seed in 0u64..500, levels in prop::collection::vec(-3i32..4, 1..6)) {
        let gold = toy_treebank(seed, 3);
        let pred: Vec<Tree> = gold.iter().map(|t| random_prediction(t, &levels)).collect();
        for deleted in [HashSet::new(), default_deleted_labels()] {
            let r = bracketing_score(&gold, &pred, &deleted).unwrap();
            for x in [r.precision, r.recall, r.f1] {
                prop_assert!((0.0..=1.0).contains(&x));
            }
            prop_assert!(r.f1 <= r.precision.max(r.recall) + 1e-12);
            prop_assert_eq!(r.f1 == 1.0, r.exact_match == 1.0);
            let absent: HashSet<String> = deleted.iter().cloned().chain(["ZZZ".to_owned()]).collect();
            prop_assert_eq!(bracketing_score(&gold, &pred, &absent).unwrap(), r);
        }
        let same = bracketing_score(&gold, &gold, &default_deleted_labels()).unwrap();
        prop_assert_eq!(same.f1, 1.0);
    }
}
