//! Collapsing unary chains and the two ways of predicting leaf chains.

use treelabel::encoding::encode_leaf_unaries_psi;
use treelabel::treebank::{collapse_unaries, parse_bracketed, uncollapse_unaries};
use treelabel::{decode, encode, EncodingScheme, Scale, UnaryStrategy};

fn main() {
    let tree = parse_bracketed("(S (NP (PRP He)) (VP (VBZ runs) (ADVP (RB fast))))").unwrap();
    let collapsed = collapse_unaries(&tree);
    println!("original   {tree}");
    println!("collapsed  {collapsed}\n");

    let psi = encode_leaf_unaries_psi(&collapsed);
    let two_pass = EncodingScheme::new(Scale::RelativeWithRoot, UnaryStrategy::TwoPass);
    let seq = encode(&collapsed, &two_pass).unwrap();
    println!("two-pass: PSI labels next to n|c labels");
    for ((token, chain), label) in seq.tokens.iter().zip(&psi).zip(&seq.labels) {
        println!(
            "  {:<6} {:<6} {}",
            token.word,
            chain.as_deref().unwrap_or("NONE"),
            label
        );
    }

    let extended = EncodingScheme::new(Scale::RelativeWithRoot, UnaryStrategy::Extended);
    let seq = encode(&collapsed, &extended).unwrap();
    println!("\nextended: n|c|u labels");
    for (token, label) in seq.tokens.iter().zip(&seq.labels) {
        println!("  {:<6} {}", token.word, label);
    }
    let back = uncollapse_unaries(&decode(&seq.tokens, &seq.labels, &extended).unwrap());
    assert_eq!(back, tree);
    println!("\ndecoded    {back}");
}
