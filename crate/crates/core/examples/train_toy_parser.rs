//! Trains the two-pass parser on a synthetic treebank and compares it with
//! a right-branching baseline.
//!
//! cargo run --release --example train_toy_parser

use treelabel::eval::{bracketing_score, default_deleted_labels, label_accuracy};
use treelabel::tagger::{train_two_pass, Pass, Pipeline, TrainConfig};
use treelabel::toy::toy_corpus;
use treelabel::treebank::{collapse_unaries, uncollapse_unaries};
use treelabel::{decode, encode, EncodingScheme, ExtendedLabel, LabeledSentence, Level, Token, Tree};

fn right_branching(tokens: &[Token], scheme: &EncodingScheme) -> Tree {
    let mut labels = vec![ExtendedLabel::plain(Level::Relative(1), "S"); tokens.len() - 1];
    labels.push(ExtendedLabel::eos());
    uncollapse_unaries(&decode(tokens, &labels, scheme).expect("well-formed labels"))
}

fn main() {
    let scheme = EncodingScheme::default();
    let (train, test) = toy_corpus(42, 2000, 200);
    let corpus: Vec<LabeledSentence> = train
        .iter()
        .map(|t| encode(&collapse_unaries(t), &scheme).expect("toy trees are well formed"))
        .collect();

    let config = TrainConfig::new(Pass::Phi, scheme);
    let (psi, phi) = train_two_pass(&corpus, &config).expect("nonempty corpus");
    let parser = Pipeline::two_pass(psi, phi);

    let plain = |t: &Tree| t.tokens();
    let predicted: Vec<LabeledSentence> = train.iter().map(|t| parser.label(&plain(t))).collect();
    let accuracy = label_accuracy(&corpus, &predicted).expect("aligned corpora");
    println!("train label accuracy   {:.4}", accuracy);

    let deleted = default_deleted_labels();
    let parsed: Vec<Tree> = test
        .iter()
        .map(|t| parser.parse(&plain(t)).expect("total decoder"))
        .collect();
    let report = bracketing_score(&test, &parsed, &deleted).expect("aligned corpora");
    let baseline: Vec<Tree> = test.iter().map(|t| right_branching(&plain(t), &scheme)).collect();
    let base = bracketing_score(&test, &baseline, &deleted).expect("aligned corpora");
    println!("test F1                {:.4}", report.f1);
    println!("right-branching F1     {:.4}", base.f1);
}
