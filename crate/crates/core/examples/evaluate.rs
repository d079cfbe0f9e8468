//! Bracketing scores and label accuracy for a small gold/predicted pair.

use std::collections::HashSet;

use treelabel::eval::{default_deleted_labels, evaluate_trees};
use treelabel::treebank::parse_bracketed;
use treelabel::EncodingScheme;

fn main() {
    let gold: Vec<_> = [
        "(S (NP (DT The) (NN dog)) (VP (VBZ barks)) (. .))",
        "(S (NP (PRP He)) (, ,) (VP (VBD left) (ADVP (RB early))) (. .))",
    ]
    .iter()
    .map(|t| parse_bracketed(t).unwrap())
    .collect();
    let pred: Vec<_> = [
        "(S (NP (DT The)) (VP (NN dog) (VBZ barks)) (. .))",
        "(S (NP (PRP He)) (, ,) (VP (VBD left)) (ADVP (RB early)) (. .))",
    ]
    .iter()
    .map(|t| parse_bracketed(t).unwrap())
    .collect();

    let scheme = EncodingScheme::default();
    let report = evaluate_trees(&gold, &pred, &default_deleted_labels(), &scheme).unwrap();
    println!("{report}\n{}\n", report.summary_line());
    let everything = evaluate_trees(&gold, &pred, &HashSet::new(), &scheme).unwrap();
    println!("nothing deleted: {}", everything.summary_line());
}
