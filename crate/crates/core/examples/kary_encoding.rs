//! Binarization plus the k-ary scale, where every negative value is NEG.

use treelabel::encoding::encode_relative;
use treelabel::treebank::{binarize, collapse_unaries, debinarize, parse_bracketed, uncollapse_unaries};
use treelabel::{decode, encode, EncodingScheme, Scale, UnaryStrategy};

fn main() {
    let tree = parse_bracketed("(S (NP (DT the) (JJ old) (NN man)) (VP (VBD left)) (. .))").unwrap();
    let binary = binarize(&collapse_unaries(&tree));
    println!("tree      {tree}\nbinarized {binary}\n");
    let scheme = EncodingScheme::new(Scale::KAry(2), UnaryStrategy::TwoPass);
    let rel = encode_relative(&binary).unwrap();
    let kary = encode(&binary, &scheme).unwrap();
    for ((t, r), k) in rel.tokens.iter().zip(&rel.labels).zip(&kary.labels) {
        println!("  {:<5} {:<10} {}", t.word, r.to_string(), k);
    }
    let back = uncollapse_unaries(&debinarize(&decode(&kary.tokens, &kary.labels, &scheme).unwrap()));
    assert_eq!(back, tree);
    println!("\ndecoded   {back}");
}
