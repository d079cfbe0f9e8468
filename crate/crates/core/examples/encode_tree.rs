//! Encodes one tree under every scale and decodes it back.
//!
//! cargo run --example encode_tree -- "(S (NP (DT The) (NN dog)) (VP (VBZ barks)))"

use treelabel::treebank::{collapse_unaries, parse_bracketed};
use treelabel::{decode, encode, EncodingScheme, Scale, UnaryStrategy};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(S (NP (DT The) (NN dog)) (VP (VBD saw) (NP (DT a) (NN cat))) (. .))".to_owned());
    let tree = collapse_unaries(&parse_bracketed(&text).expect("a bracketed tree"));
    println!("{tree}\n");
    for scale in [Scale::Absolute, Scale::Relative, Scale::RelativeWithRoot] {
        let scheme = EncodingScheme::new(scale, UnaryStrategy::TwoPass);
        let seq = encode(&tree, &scheme).expect("collapsed trees always encode");
        let labels: Vec<String> = seq.labels.iter().map(|l| l.to_string()).collect();
        println!("{:<9} {}", scale.to_string(), labels.join("  "));
        let back = decode(&seq.tokens, &seq.labels, &scheme).expect("well-formed labels");
        assert_eq!(back, *tree);
    }
}
