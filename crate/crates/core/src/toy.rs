//! A small seeded PCFG producing English-like toy treebanks.
//!
//! Eight phrase labels (S, NP, VP, PP, ADJP, ADVP, SBAR, QP), twenty PoS
//! tags, and several unary rules (NP -> PRP, ADVP -> RB, S -> VP, ...) so
//! that both kinds of unary chains occur. Prepositional attachment is
//! decided by the preposition, which keeps the labels locally predictable.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::treebank::Tree;

pub const MIN_LEN: usize = 3;
pub const MAX_LEN: usize = 15;
const MAX_DEPTH: usize = 7;

const PHRASES: &[&str] = &["S", "NP", "VP", "PP", "ADJP", "ADVP", "SBAR", "QP"];

/// (left-hand side, right-hand side, weight). The first rule of each
/// phrase is its fallback once the depth limit is hit.
const RULES: &[(&str, &[&str], f64)] = &[
    ("S", &["NP", "VP", "."], 6.0),
    ("S", &["NP", "VP"], 2.0),
    ("S", &["ADVP", ",", "NP", "VP", "."], 1.0),
    ("S", &["PP", ",", "NP", "VP", "."], 1.0),
    ("S", &["VP"], 0.6),
    ("NP", &["DT", "NN"], 5.0),
    ("NP", &["DT", "JJ", "NN"], 2.0),
    ("NP", &["DT", "ADJP", "NN"], 0.5),
    ("NP", &["DT", "NNS"], 1.0),
    ("NP", &["NNS"], 1.0),
    ("NP", &["PRP"], 2.0),
    ("NP", &["NNP"], 1.5),
    ("NP", &["NNP", "NNP"], 0.5),
    ("NP", &["QP", "NNS"], 0.6),
    ("NP", &["VBG", "NN"], 0.3),
    ("NP", &["NP", "OF-PP"], 1.0),
    ("NP", &["NP", "SBAR"], 0.4),
    ("VP", &["VBZ", "NP"], 3.0),
    ("VP", &["VBD", "NP"], 2.0),
    ("VP", &["VBZ"], 1.0),
    ("VP", &["VBD", "NP", "PP"], 1.5),
    ("VP", &["VBD", "PP"], 1.0),
    ("VP", &["MD", "VB", "NP"], 1.0),
    ("VP", &["VBZ", "ADJP"], 1.0),
    ("VP", &["VBZ", "ADVP"], 0.7),
    ("VP", &["VBD", "SBAR"], 0.5),
    ("PP", &["IN", "NP"], 3.0),
    ("PP", &["TO", "NP"], 1.0),
    ("OF-PP", &["OF", "NP"], 1.0),
    ("ADJP", &["JJ"], 1.0),
    ("ADJP", &["RB", "JJ"], 1.0),
    ("ADJP", &["JJR", "PP"], 0.3),
    ("ADVP", &["RB"], 2.0),
    ("ADVP", &["RB", "RB"], 0.5),
    ("SBAR", &["WDT", "VP"], 1.0),
    ("SBAR", &["IN", "S"], 0.6),
    ("QP", &["CD"], 1.0),
    ("QP", &["RB", "CD"], 1.0),
    ("QP", &["CD", "CC", "CD"], 0.5),
];

const LEXICON: &[(&str, &[&str])] = &[
    ("DT", &["the", "a", "this", "every", "some"]),
    (
        "NN",
        &[
            "dog", "cat", "house", "market", "river", "teacher", "idea", "garden", "report", "bank",
        ],
    ),
    (
        "NNS",
        &[
            "dogs", "cats", "houses", "prices", "shares", "children", "ideas", "reports",
        ],
    ),
    ("NNP", &["John", "Mary", "London", "Paris", "Acme", "Smith"]),
    ("PRP", &["he", "she", "it", "they", "we"]),
    ("JJ", &["big", "small", "red", "happy", "old", "new", "quiet"]),
    ("JJR", &["bigger", "older", "happier"]),
    ("RB", &["very", "quickly", "rarely", "almost", "still"]),
    ("VBZ", &["sees", "likes", "runs", "sleeps", "owns", "seems"]),
    ("VBD", &["saw", "liked", "ran", "slept", "owned", "bought", "said"]),
    ("VB", &["see", "like", "buy", "own"]),
    ("VBG", &["running", "falling", "rising"]),
    ("MD", &["will", "can", "might"]),
    ("IN", &["in", "on", "near", "after", "because"]),
    ("OF", &["of"]),
    ("TO", &["to"]),
    ("CC", &["and", "or"]),
    ("CD", &["two", "three", "ten", "42", "1,000"]),
    ("WDT", &["which", "that"]),
    (",", &[","]),
    (".", &["."]),
];

/// Seeded sampler of toy trees.
pub struct ToyGrammar {
    rng: ChaCha8Rng,
}

impl ToyGrammar {
    pub fn new(seed: u64) -> Self {
        ToyGrammar {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Samples sentences until one has between [`MIN_LEN`] and [`MAX_LEN`]
    /// words.
    pub fn sample(&mut self) -> Tree {
        loop {
            let tree = self.expand("S", 0);
            if (MIN_LEN..=MAX_LEN).contains(&tree.n_leaves()) {
                return tree;
            }
        }
    }

    fn expand(&mut self, symbol: &str, depth: usize) -> Tree {
        if let Some((tag, words)) = LEXICON.iter().find(|(t, _)| *t == symbol) {
            // "of" is tagged IN like any other preposition
            let tag = if *tag == "OF" { "IN" } else { tag };
            let word = words.choose(&mut self.rng).expect("nonempty lexicon");
            return Tree::leaf(*word, tag);
        }
        let rules: Vec<&(&str, &[&str], f64)> = RULES.iter().filter(|(lhs, _, _)| *lhs == symbol).collect();
        let (_, rhs, _) = if depth >= MAX_DEPTH {
            rules[0]
        } else {
            let dist = WeightedIndex::new(rules.iter().map(|r| r.2)).expect("positive weights");
            rules[dist.sample(&mut self.rng)]
        };
        let children = rhs.iter().map(|s| self.expand(s, depth + 1)).collect();
        let label = if symbol == "OF-PP" { "PP" } else { symbol };
        Tree::internal(label, children)
    }
}

/// `n` sentences from a grammar seeded with `seed`.
pub fn toy_treebank(seed: u64, n: usize) -> Vec<Tree> {
    let mut grammar = ToyGrammar::new(seed);
    (0..n).map(|_| grammar.sample()).collect()
}

/// Deterministic train/test split: `(train, test)` drawn from one stream.
pub fn toy_corpus(seed: u64, n_train: usize, n_test: usize) -> (Vec<Tree>, Vec<Tree>) {
    let mut all = toy_treebank(seed, n_train + n_test);
    let test = all.split_off(n_train);
    (all, test)
}

/// Phrase labels the grammar can produce.
pub fn phrase_labels() -> &'static [&'static str] {
    PHRASES
}
