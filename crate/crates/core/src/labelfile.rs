//! Tab-separated token files, one token per line and a blank line after
//! each sentence.
//!
//! - labeled: `word<TAB>pos<TAB>label` with `label` = `n|c` or `n|c|u`;
//! - PSI: `word<TAB>pos<TAB>chain`, `NONE` for words without a leaf chain;
//! - tagged: `word<TAB>pos` (further columns are ignored).

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::encoding::{unary_from_str, unary_to_string, ExtendedLabel, LabelSyntaxError, LabeledSentence};
use crate::treebank::Token;

#[derive(Debug, Error)]
pub enum LabelFileError {
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("line {line}: expected {expected} tab-separated columns, found {found}")]
    Columns { line: usize, expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Label { line: usize, source: LabelSyntaxError },
}

/// A sentence block: the line number of its first row and the rows' columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub line: usize,
    pub rows: Vec<Vec<String>>,
}

/// Blank-line separated blocks of `columns`-wide rows. Rows with fewer
/// columns are an error; extra columns are dropped.
pub fn read_blocks<R: BufRead>(reader: R, columns: usize) -> impl Iterator<Item = Result<Block, LabelFileError>> {
    let mut lines = reader.lines().enumerate();
    std::iter::from_fn(move || {
        let mut block: Option<Block> = None;
        loop {
            match lines.next() {
                None => return block.map(Ok),
                Some((_, Err(e))) => return Some(Err(e.into())),
                Some((idx, Ok(line))) => {
                    let line_no = idx + 1;
                    let line = line.trim_end_matches('\r');
                    if line.trim().is_empty() {
                        if block.is_some() {
                            return block.map(Ok);
                        }
                        continue;
                    }
                    let cols: Vec<String> = line.split('\t').map(str::to_owned).collect();
                    if cols.len() < columns {
                        return Some(Err(LabelFileError::Columns {
                            line: line_no,
                            expected: columns,
                            found: cols.len(),
                        }));
                    }
                    block
                        .get_or_insert_with(|| Block {
                            line: line_no,
                            rows: Vec::new(),
                        })
                        .rows
                        .push(cols.into_iter().take(columns).collect());
                }
            }
        }
    })
}

fn tokens(block: &Block) -> Vec<Token> {
    block
        .rows
        .iter()
        .map(|r| Token::new(r[0].clone(), r[1].clone()))
        .collect()
}

/// PoS-tagged sentences, each with the line number it starts on.
pub fn read_tagged<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, Vec<Token>), LabelFileError>> {
    read_blocks(reader, 2).map(|b| b.map(|b| (b.line, tokens(&b))))
}

/// Labeled sentences, each with the line number it starts on.
pub fn read_labeled<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, LabeledSentence), LabelFileError>> {
    read_blocks(reader, 3).map(|block| {
        let block = block?;
        let labels = block
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r[2].parse::<ExtendedLabel>().map_err(|source| LabelFileError::Label {
                    line: block.line + i,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((block.line, LabeledSentence::new(tokens(&block), labels)))
    })
}

/// Starting line, tokens and per-leaf chains of one `.psi` block.
pub type PsiBlock = (usize, Vec<Token>, Vec<Option<String>>);

/// Sentences with leaf-chain labels.
pub fn read_psi<R: BufRead>(reader: R) -> impl Iterator<Item = Result<PsiBlock, LabelFileError>> {
    read_blocks(reader, 3).map(|b| {
        b.map(|b| {
            let chains = b.rows.iter().map(|r| unary_from_str(&r[2])).collect();
            (b.line, tokens(&b), chains)
        })
    })
}

pub fn write_labeled<W: Write>(mut out: W, sentence: &LabeledSentence) -> io::Result<()> {
    for (t, l) in sentence.tokens.iter().zip(&sentence.labels) {
        writeln!(out, "{}\t{}\t{}", t.word, t.pos, l)?;
    }
    writeln!(out)
}

pub fn write_psi<W: Write>(mut out: W, tokens: &[Token], chains: &[Option<String>]) -> io::Result<()> {
    for (t, c) in tokens.iter().zip(chains) {
        writeln!(out, "{}\t{}\t{}", t.word, t.plain_pos(), unary_to_string(c.as_deref()))?;
    }
    writeln!(out)
}

pub fn write_tagged<W: Write>(mut out: W, tokens: &[Token]) -> io::Result<()> {
    for t in tokens {
        writeln!(out, "{}\t{}", t.word, t.pos)?;
    }
    writeln!(out)
}
