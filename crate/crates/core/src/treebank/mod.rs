//! Constituent trees, the bracketed treebank format, and the structural
//! transforms (unary collapsing, binarization) applied before encoding.

mod binarize;
mod bracketed;
mod unary;

use std::fmt;
use std::ops::Deref;

pub use binarize::{binarize, debinarize, AUX_SUFFIX};
pub use bracketed::{parse_bracketed, read_treebank, serialize_bracketed, validate_symbols, ParseError};
pub use unary::{collapse_unaries, uncollapse_unaries, validate_no_unaries, CHAIN_SEPARATOR};

/// A word together with its part-of-speech tag.
///
/// After unary collapsing, `pos` may carry a leaf unary chain: the chain
/// nonterminals top-down, joined with `+`, with the PoS tag last
/// (`Z+T5`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub word: String,
    pub pos: String,
}

impl Token {
    pub fn new(word: impl Into<String>, pos: impl Into<String>) -> Self {
        Token {
            word: word.into(),
            pos: pos.into(),
        }
    }

    /// The PoS tag without any collapsed leaf unary chain.
    pub fn plain_pos(&self) -> &str {
        match self.pos.rfind(CHAIN_SEPARATOR) {
            Some(idx) => &self.pos[idx + CHAIN_SEPARATOR.len_utf8()..],
            None => &self.pos,
        }
    }

    /// The collapsed leaf unary chain above the PoS tag, if any.
    pub fn leaf_chain(&self) -> Option<&str> {
        self.pos.rfind(CHAIN_SEPARATOR).map(|idx| &self.pos[..idx])
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.word, self.pos)
    }
}

/// A rooted, ordered constituent tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(Token),
    Internal { label: String, children: Vec<Tree> },
}

impl Tree {
    pub fn leaf(word: impl Into<String>, pos: impl Into<String>) -> Self {
        Tree::Leaf(Token::new(word, pos))
    }

    pub fn internal(label: impl Into<String>, children: Vec<Tree>) -> Self {
        assert!(!children.is_empty(), "internal nodes need at least one child");
        Tree::Internal {
            label: label.into(),
            children,
        }
    }

    /// Nonterminal label of an internal node, PoS of a leaf.
    pub fn label(&self) -> &str {
        match self {
            Tree::Leaf(token) => &token.pos,
            Tree::Internal { label, .. } => label,
        }
    }

    pub fn children(&self) -> &[Tree] {
        match self {
            Tree::Leaf(_) => &[],
            Tree::Internal { children, .. } => children,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Tokens in left-to-right order.
    pub fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        self.visit_tokens(&mut |t| out.push(t.clone()));
        out
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Internal { children, .. } => children.iter().map(Tree::n_leaves).sum(),
        }
    }

    pub fn visit_tokens<'a>(&'a self, f: &mut impl FnMut(&'a Token)) {
        match self {
            Tree::Leaf(token) => f(token),
            Tree::Internal { children, .. } => {
                for child in children {
                    child.visit_tokens(f);
                }
            }
        }
    }

    /// Labels of all internal nodes in preorder.
    pub fn nonterminals(&self) -> Vec<&str> {
        let mut out = Vec::new();
        fn walk<'a>(t: &'a Tree, out: &mut Vec<&'a str>) {
            if let Tree::Internal { label, children } = t {
                out.push(label.as_str());
                for c in children {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Replaces the leaf tokens, left to right, with `tokens`.
    ///
    /// Panics if the token count differs from the leaf count.
    pub fn with_tokens(&self, tokens: &[Token]) -> Tree {
        assert_eq!(tokens.len(), self.n_leaves(), "token count mismatch");
        fn walk(t: &Tree, tokens: &mut std::slice::Iter<'_, Token>) -> Tree {
            match t {
                Tree::Leaf(_) => Tree::Leaf(tokens.next().unwrap().clone()),
                Tree::Internal { label, children } => Tree::Internal {
                    label: label.clone(),
                    children: children.iter().map(|c| walk(c, tokens)).collect(),
                },
            }
        }
        walk(self, &mut tokens.iter())
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_bracketed(self))
    }
}

/// A tree whose unary chains have been collapsed.
///
/// No internal node has exactly one child. Intermediate chains are single
/// `+`-joined nonterminals, leaf chains live in [`Token::pos`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CollapsedTree(Tree);

impl CollapsedTree {
    /// Wraps a tree that is already unary-free. Returns `None` otherwise.
    pub fn new(tree: Tree) -> Option<Self> {
        validate_no_unaries(&tree).then_some(CollapsedTree(tree))
    }

    pub fn into_inner(self) -> Tree {
        self.0
    }
}

impl Deref for CollapsedTree {
    type Target = Tree;

    fn deref(&self) -> &Tree {
        &self.0
    }
}

impl AsRef<Tree> for CollapsedTree {
    fn as_ref(&self) -> &Tree {
        &self.0
    }
}

impl fmt::Display for CollapsedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
