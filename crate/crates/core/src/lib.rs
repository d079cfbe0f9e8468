//! Constituent parsing as sequence labeling.
//!
//! A constituent tree over `n` words is linearized into `n` labels, one per
//! word, so that any sequence tagger can act as a parser. The crate covers
//! the whole round trip:
//!
//! - [`treebank`]: bracketed tree I/O, unary chain collapsing, binarization;
//! - [`encoding`]: tree to label sequence under several scales;
//! - [`decoding`]: label sequence (well-formed or not) back to a tree;
//! - [`tagger`]: an averaged perceptron tagger predicting the labels;
//! - [`eval`]: bracketing precision/recall/F1 and label accuracy.

pub mod cli;
pub mod decoding;
pub mod encoding;
pub mod enumerate;
pub mod eval;
pub mod labelfile;
pub mod tagger;
pub mod toy;
pub mod treebank;

pub use decoding::{decode, decode_extended, merge_psi, DecodeError};
pub use encoding::{encode, EncodingScheme, ExtendedLabel, LabelCore, LabeledSentence, Level, Scale, UnaryStrategy};
pub use treebank::{CollapsedTree, Token, Tree};
