//! Total inverse of the encoding: any label sequence of the right length
//! decodes to a unary-free tree over the given tokens.
//!
//! Ill-formed sequences are repaired deterministically:
//! - a count below 1 is raised to 1;
//! - when several labels name the same node, the first one wins;
//! - nodes that end up with a single child are spliced out, keeping the
//!   child.

use thiserror::Error;

use crate::encoding::{EncodingScheme, ExtendedLabel, Level, Scale, UnaryStrategy};
use crate::treebank::{uncollapse_unaries, Token, Tree, CHAIN_SEPARATOR};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("{tokens} tokens but {labels} labels")]
    LengthMismatch { tokens: usize, labels: usize },
    #[error("cannot decode an empty sentence")]
    EmptySentence,
    #[error("malformed label {label:?} at position {position}: {reason}")]
    MalformedLabel {
        position: usize,
        label: String,
        reason: &'static str,
    },
}

/// Clamps absolute counts to at least 1. Growth is never capped, since any
/// number of new nodes can always be opened.
pub fn repair_absolute_counts(counts: &[i64]) -> Vec<usize> {
    counts.iter().map(|&c| c.max(1) as usize).collect()
}

/// Prefixes each token's PoS with its predicted leaf unary chain.
pub fn merge_psi(tokens: &[Token], psi: &[Option<String>]) -> Vec<Token> {
    tokens
        .iter()
        .zip(psi)
        .map(|(token, u)| match u {
            Some(u) => Token::new(token.word.clone(), format!("{u}{CHAIN_SEPARATOR}{}", token.pos)),
            None => token.clone(),
        })
        .collect()
}

fn check_labels(labels: &[ExtendedLabel], scale: Scale) -> Result<(), DecodeError> {
    let last = labels.len() - 1;
    for (position, label) in labels.iter().enumerate() {
        let malformed = |reason| DecodeError::MalformedLabel {
            position,
            label: label.to_string(),
            reason,
        };
        if position == last {
            if !label.is_eos() {
                return Err(malformed("last label must be the dummy"));
            }
        } else if label.is_eos() {
            return Err(malformed("dummy label before the end of the sentence"));
        } else if !scale.accepts(label.level()) {
            return Err(malformed("level not valid for the scale"));
        }
    }
    Ok(())
}

#[derive(Debug)]
struct OpenNode {
    label: Option<String>,
    children: Vec<Child>,
}

#[derive(Debug, Clone, Copy)]
enum Child {
    Node(usize),
    Leaf(usize),
}

struct Builder {
    nodes: Vec<OpenNode>,
    /// Path from the root to the most recently attached leaf.
    stack: Vec<usize>,
}

impl Builder {
    fn open(&mut self) {
        let id = self.nodes.len();
        self.nodes.push(OpenNode {
            label: None,
            children: Vec::new(),
        });
        if let Some(&parent) = self.stack.last() {
            self.nodes[parent].children.push(Child::Node(id));
        }
        self.stack.push(id);
    }

    fn attach_leaf(&mut self, leaf: usize) {
        let top = *self.stack.last().expect("a node is open");
        self.nodes[top].children.push(Child::Leaf(leaf));
    }

    /// Places leaf `leaf` so that it and the next leaf share exactly
    /// `target` ancestors, and names their lowest common ancestor.
    fn step(&mut self, leaf: usize, target: usize, nonterminal: &str) {
        let current = self.stack.len();
        if target > current {
            for _ in current..target {
                self.open();
            }
            self.attach_leaf(leaf);
        } else {
            self.attach_leaf(leaf);
            self.stack.truncate(target);
        }
        let lca = self.stack[target - 1];
        let slot = &mut self.nodes[lca].label;
        if slot.is_none() {
            *slot = Some(nonterminal.to_owned());
        }
    }

    /// Depth of the deepest open node below the top that still lacks its
    /// k-th child, or 1 when there is none.
    fn kary_target(&self, k: usize) -> usize {
        let below_top = self.stack.len().saturating_sub(1);
        self.stack[..below_top]
            .iter()
            .rposition(|&id| self.nodes[id].children.len() < k)
            .map_or(1, |idx| idx + 1)
    }

    fn build(&self, id: usize, tokens: &[Token]) -> Tree {
        let node = &self.nodes[id];
        let build_child = |c: &Child| match *c {
            Child::Node(n) => self.build(n, tokens),
            Child::Leaf(i) => Tree::Leaf(tokens[i].clone()),
        };
        if node.children.len() == 1 {
            return build_child(&node.children[0]);
        }
        Tree::Internal {
            // every node with two or more children was named by some label
            label: node.label.clone().unwrap_or_else(|| "X".to_owned()),
            children: node.children.iter().map(build_child).collect(),
        }
    }
}

/// Decodes a label sequence into a collapsed tree over `tokens`.
///
/// Leaf unary chains carried in the labels (3-tuple labels) are merged into
/// the tokens' PoS; the result is not uncollapsed. If `labels` is the
/// encoding of some collapsed tree, that tree is returned exactly.
pub fn decode(tokens: &[Token], labels: &[ExtendedLabel], scheme: &EncodingScheme) -> Result<Tree, DecodeError> {
    if tokens.len() != labels.len() {
        return Err(DecodeError::LengthMismatch {
            tokens: tokens.len(),
            labels: labels.len(),
        });
    }
    if tokens.is_empty() {
        return Err(DecodeError::EmptySentence);
    }
    check_labels(labels, scheme.scale)?;

    let psi: Vec<Option<String>> = labels.iter().map(|l| l.unary.clone()).collect();
    let tokens = merge_psi(tokens, &psi);
    if tokens.len() == 1 {
        return Ok(Tree::Leaf(tokens[0].clone()));
    }

    let mut builder = Builder {
        nodes: Vec::with_capacity(tokens.len()),
        stack: Vec::new(),
    };
    for (leaf, label) in labels[..labels.len() - 1].iter().enumerate() {
        let previous = builder.stack.len() as i64;
        let target = match label.level() {
            Level::Absolute(n) => n as i64,
            Level::Relative(d) => previous + d as i64,
            Level::Root => 1,
            Level::Neg => match scheme.scale {
                Scale::KAry(k) => builder.kary_target(k) as i64,
                _ => 1,
            },
            Level::Eos => unreachable!("checked above"),
        };
        builder.step(leaf, target.max(1) as usize, label.nonterminal());
    }
    builder.attach_leaf(tokens.len() - 1);
    Ok(builder.build(0, &tokens))
}

/// Decodes 3-tuple labels and expands all collapsed unary chains.
pub fn decode_extended(tokens: &[Token], labels: &[ExtendedLabel], scale: Scale) -> Result<Tree, DecodeError> {
    let scheme = EncodingScheme::new(scale, UnaryStrategy::Extended);
    decode(tokens, labels, &scheme).map(|t| uncollapse_unaries(&t))
}
