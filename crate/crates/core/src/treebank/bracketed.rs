use std::io::BufRead;

use thiserror::Error;

use super::{Token, Tree, CHAIN_SEPARATOR};

/// Errors from reading bracketed trees. Offsets are byte offsets into the
/// line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unbalanced brackets at byte {offset}")]
    UnbalancedBrackets { offset: usize },
    #[error("empty tree at byte {offset}")]
    EmptyTree { offset: usize },
    #[error("leaf without word at byte {offset}")]
    LeafWithoutWord { offset: usize },
    #[error("constituent without label at byte {offset}")]
    MissingLabel { offset: usize },
    #[error("unexpected token {token:?} at byte {offset}")]
    UnexpectedToken { token: String, offset: usize },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
    #[error("symbol {symbol:?} contains a reserved character ('+', '|' or whitespace)")]
    InvalidSymbol { symbol: String },
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<ParseError>,
    },
    #[error("I/O error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lexeme<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn lex(line: &str) -> Vec<(usize, Lexeme<'_>)> {
    let mut out = Vec::new();
    let mut atom_start: Option<usize> = None;
    for (idx, ch) in line.char_indices() {
        let delimiter = ch == '(' || ch == ')' || ch.is_whitespace();
        if delimiter {
            if let Some(start) = atom_start.take() {
                out.push((start, Lexeme::Atom(&line[start..idx])));
            }
            match ch {
                '(' => out.push((idx, Lexeme::Open)),
                ')' => out.push((idx, Lexeme::Close)),
                _ => {}
            }
        } else if atom_start.is_none() {
            atom_start = Some(idx);
        }
    }
    if let Some(start) = atom_start {
        out.push((start, Lexeme::Atom(&line[start..])));
    }
    out
}

struct Parser<'a> {
    lexemes: Vec<(usize, Lexeme<'a>)>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<(usize, Lexeme<'a>)> {
        self.lexemes.get(self.pos).copied()
    }

    fn tree(&mut self) -> Result<Tree, ParseError> {
        let open_offset = match self.peek() {
            Some((offset, Lexeme::Open)) => offset,
            Some((offset, Lexeme::Close)) => return Err(ParseError::UnbalancedBrackets { offset }),
            Some((offset, Lexeme::Atom(token))) => {
                return Err(ParseError::UnexpectedToken {
                    token: token.to_owned(),
                    offset,
                })
            }
            None => return Err(ParseError::EmptyTree { offset: self.end }),
        };
        self.pos += 1;

        let label = match self.peek() {
            Some((_, Lexeme::Atom(label))) => {
                self.pos += 1;
                label
            }
            Some((_, Lexeme::Close)) => return Err(ParseError::EmptyTree { offset: open_offset }),
            Some((_, Lexeme::Open)) => return Err(ParseError::MissingLabel { offset: open_offset }),
            None => return Err(ParseError::UnbalancedBrackets { offset: open_offset }),
        };

        match self.peek() {
            Some((_, Lexeme::Atom(word))) => {
                self.pos += 1;
                match self.peek() {
                    Some((_, Lexeme::Close)) => {
                        self.pos += 1;
                        Ok(Tree::Leaf(Token::new(word, label)))
                    }
                    Some((offset, Lexeme::Atom(token))) => Err(ParseError::UnexpectedToken {
                        token: token.to_owned(),
                        offset,
                    }),
                    Some((offset, Lexeme::Open)) => Err(ParseError::UnexpectedToken {
                        token: "(".to_owned(),
                        offset,
                    }),
                    None => Err(ParseError::UnbalancedBrackets { offset: open_offset }),
                }
            }
            Some((_, Lexeme::Close)) => Err(ParseError::LeafWithoutWord { offset: open_offset }),
            None => Err(ParseError::UnbalancedBrackets { offset: open_offset }),
            Some((_, Lexeme::Open)) => {
                let mut children = Vec::new();
                loop {
                    match self.peek() {
                        Some((_, Lexeme::Open)) => children.push(self.tree()?),
                        Some((_, Lexeme::Close)) => {
                            self.pos += 1;
                            break;
                        }
                        Some((offset, Lexeme::Atom(token))) => {
                            return Err(ParseError::UnexpectedToken {
                                token: token.to_owned(),
                                offset,
                            })
                        }
                        None => return Err(ParseError::UnbalancedBrackets { offset: open_offset }),
                    }
                }
                Ok(Tree::Internal {
                    label: label.to_owned(),
                    children,
                })
            }
        }
    }
}

/// Parses one tree in single-line bracketed notation, e.g.
/// `(S (DT the) (NN toy))`. Leaves are written `(POS word)`.
pub fn parse_bracketed(line: &str) -> Result<Tree, ParseError> {
    let mut parser = Parser {
        lexemes: lex(line),
        pos: 0,
        end: line.len(),
    };
    let tree = parser.tree()?;
    match parser.peek() {
        None => Ok(tree),
        Some((offset, Lexeme::Close)) => Err(ParseError::UnbalancedBrackets { offset }),
        Some((offset, _)) => Err(ParseError::TrailingInput { offset }),
    }
}

/// Writes a tree on a single line with single spaces between siblings.
pub fn serialize_bracketed(tree: &Tree) -> String {
    let mut out = String::new();
    write_tree(tree, &mut out);
    out
}

fn write_tree(tree: &Tree, out: &mut String) {
    out.push('(');
    match tree {
        Tree::Leaf(token) => {
            out.push_str(&token.pos);
            out.push(' ');
            out.push_str(&token.word);
        }
        Tree::Internal { label, children } => {
            out.push_str(label);
            for child in children {
                out.push(' ');
                write_tree(child, out);
            }
        }
    }
    out.push(')');
}

/// Rejects trees whose nonterminal or PoS symbols contain characters that
/// are reserved by the chain and label formats.
pub fn validate_symbols(tree: &Tree) -> Result<(), ParseError> {
    let bad = |s: &str| s.contains(CHAIN_SEPARATOR) || s.contains('|') || s.chars().any(char::is_whitespace);
    match tree {
        Tree::Leaf(token) if bad(&token.pos) => Err(ParseError::InvalidSymbol {
            symbol: token.pos.clone(),
        }),
        Tree::Leaf(_) => Ok(()),
        Tree::Internal { label, .. } if bad(label) => Err(ParseError::InvalidSymbol { symbol: label.clone() }),
        Tree::Internal { children, .. } => children.iter().try_for_each(validate_symbols),
    }
}

/// Reads a treebank file: one bracketed tree per line, blank lines skipped.
/// Yields `(line_number, tree)` with 1-based line numbers.
pub fn read_treebank<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, Tree), ParseError>> {
    reader.lines().enumerate().filter_map(|(idx, line)| {
        let line_no = idx + 1;
        match line {
            Err(e) => Some(Err(ParseError::Io(e.to_string()))),
            Ok(line) if line.trim().is_empty() => None,
            Ok(line) => Some(
                parse_bracketed(line.trim_end_matches('\r'))
                    .map(|t| (line_no, t))
                    .map_err(|e| ParseError::Line {
                        line: line_no,
                        source: Box::new(e),
                    }),
            ),
        }
    })
}
