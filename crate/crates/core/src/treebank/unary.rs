use super::{CollapsedTree, Token, Tree};

/// Joins the elements of a collapsed unary chain, top-down.
pub const CHAIN_SEPARATOR: char = '+';

/// Returns true iff no internal node has exactly one child.
pub fn validate_no_unaries(tree: &Tree) -> bool {
    match tree {
        Tree::Leaf(_) => true,
        Tree::Internal { children, .. } => children.len() != 1 && children.iter().all(validate_no_unaries),
    }
}

/// Collapses unary chains.
///
/// Chains ending in a nonterminal become one node labelled `X+Y`; chains
/// ending in a PoS tag are folded into the token's PoS (`Z+T5`). A
/// single-word sentence collapses to a lone leaf carrying the whole chain.
pub fn collapse_unaries(tree: &Tree) -> CollapsedTree {
    CollapsedTree(collapse(tree))
}

fn collapse(tree: &Tree) -> Tree {
    match tree {
        Tree::Leaf(token) => Tree::Leaf(token.clone()),
        Tree::Internal { label, children } if children.len() == 1 => match collapse(&children[0]) {
            Tree::Leaf(token) => Tree::Leaf(Token {
                word: token.word,
                pos: join(label, &token.pos),
            }),
            Tree::Internal { label: inner, children } => Tree::Internal {
                label: join(label, &inner),
                children,
            },
        },
        Tree::Internal { label, children } => Tree::Internal {
            label: label.clone(),
            children: children.iter().map(collapse).collect(),
        },
    }
}

fn join(upper: &str, lower: &str) -> String {
    let mut s = String::with_capacity(upper.len() + lower.len() + 1);
    s.push_str(upper);
    s.push(CHAIN_SEPARATOR);
    s.push_str(lower);
    s
}

/// Inverse of [`collapse_unaries`]: expands every `+`-joined label back
/// into a chain of unary nodes.
pub fn uncollapse_unaries(tree: &Tree) -> Tree {
    match tree {
        Tree::Leaf(token) => {
            let mut parts: Vec<&str> = token.pos.split(CHAIN_SEPARATOR).collect();
            let pos = parts.pop().unwrap_or_default();
            wrap_chain(&parts, Tree::Leaf(Token::new(token.word.clone(), pos)))
        }
        Tree::Internal { label, children } => {
            let parts: Vec<&str> = label.split(CHAIN_SEPARATOR).collect();
            let (last, upper) = parts.split_last().expect("split yields at least one part");
            let node = Tree::Internal {
                label: (*last).to_owned(),
                children: children.iter().map(uncollapse_unaries).collect(),
            };
            wrap_chain(upper, node)
        }
    }
}

fn wrap_chain(chain: &[&str], bottom: Tree) -> Tree {
    chain.iter().rev().fold(bottom, |child, label| Tree::Internal {
        label: (*label).to_owned(),
        children: vec![child],
    })
}
