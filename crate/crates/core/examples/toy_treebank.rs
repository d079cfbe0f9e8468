//! Prints a synthetic treebank, one bracketed tree per line.
//!
//! cargo run --example toy_treebank -- [N] [SEED] > toy.mrg

use treelabel::toy::toy_treebank;

fn main() {
    let mut args = std::env::args().skip(1);
    let n = args.next().map_or(100, |a| a.parse().expect("N must be a number"));
    let seed = args.next().map_or(42, |a| a.parse().expect("SEED must be a number"));
    for tree in toy_treebank(seed, n) {
        println!("{tree}");
    }
}
