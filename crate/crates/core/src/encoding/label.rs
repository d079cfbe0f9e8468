use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::treebank::Token;

/// Nonterminal carried by the end-of-sentence dummy label.
pub const EOS: &str = "EOS";
/// Serialized form of an empty leaf unary chain.
pub const NONE: &str = "NONE";

/// How a label places the lowest common ancestor of `w_i` and `w_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// Number of common ancestors.
    Absolute(i32),
    /// Difference to the previous position's number of common ancestors.
    Relative(i32),
    /// The lowest common ancestor is the root.
    Root,
    /// The single negative value of the k-ary encoding.
    Neg,
    /// Final dummy position.
    Eos,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Absolute(n) => write!(f, "{n}"),
            Level::Relative(d) => write!(f, "{d:+}"),
            Level::Root => f.write_str("ROOT"),
            Level::Neg => f.write_str("NEG"),
            Level::Eos => f.write_str(EOS),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed label {text:?}: {reason}")]
pub struct LabelSyntaxError {
    pub text: String,
    pub reason: &'static str,
}

impl LabelSyntaxError {
    fn new(text: &str, reason: &'static str) -> Self {
        LabelSyntaxError {
            text: text.to_owned(),
            reason,
        }
    }
}

impl FromStr for Level {
    type Err = LabelSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ROOT" => Ok(Level::Root),
            "NEG" => Ok(Level::Neg),
            EOS => Ok(Level::Eos),
            _ if s.starts_with('+') || s.starts_with('-') => s
                .parse()
                .map(Level::Relative)
                .map_err(|_| LabelSyntaxError::new(s, "bad relative level")),
            _ => s
                .parse()
                .map(Level::Absolute)
                .map_err(|_| LabelSyntaxError::new(s, "bad absolute level")),
        }
    }
}

/// The `(n, c)` pair assigned to one word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelCore {
    pub level: Level,
    pub nonterminal: String,
}

impl LabelCore {
    pub fn new(level: Level, nonterminal: impl Into<String>) -> Self {
        LabelCore {
            level,
            nonterminal: nonterminal.into(),
        }
    }

    pub fn eos() -> Self {
        LabelCore::new(Level::Eos, EOS)
    }

    pub fn is_eos(&self) -> bool {
        self.level == Level::Eos
    }
}

impl fmt::Display for LabelCore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.level, self.nonterminal)
    }
}

/// A label core plus the collapsed leaf unary chain of its word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedLabel {
    pub core: LabelCore,
    pub unary: Option<String>,
}

impl ExtendedLabel {
    pub fn new(core: LabelCore, unary: Option<String>) -> Self {
        ExtendedLabel { core, unary }
    }

    pub fn plain(level: Level, nonterminal: impl Into<String>) -> Self {
        ExtendedLabel::new(LabelCore::new(level, nonterminal), None)
    }

    pub fn eos() -> Self {
        ExtendedLabel::new(LabelCore::eos(), None)
    }

    pub fn level(&self) -> Level {
        self.core.level
    }

    pub fn nonterminal(&self) -> &str {
        &self.core.nonterminal
    }

    pub fn is_eos(&self) -> bool {
        self.core.is_eos()
    }
}

impl From<LabelCore> for ExtendedLabel {
    fn from(core: LabelCore) -> Self {
        ExtendedLabel { core, unary: None }
    }
}

impl fmt::Display for ExtendedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.unary {
            Some(u) => write!(f, "{}|{}", self.core, u),
            None => self.core.fmt(f),
        }
    }
}

impl FromStr for ExtendedLabel {
    type Err = LabelSyntaxError;

    /// Parses `n|c` or `n|c|u`. A `u` of `NONE` is read as no chain.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split('|');
        let level = parts.next().unwrap_or_default();
        let nonterminal = parts
            .next()
            .ok_or_else(|| LabelSyntaxError::new(s, "expected n|c or n|c|u"))?;
        let unary = parts.next();
        if parts.next().is_some() {
            return Err(LabelSyntaxError::new(s, "too many '|' fields"));
        }
        if nonterminal.is_empty() {
            return Err(LabelSyntaxError::new(s, "empty nonterminal"));
        }
        let unary = match unary {
            None | Some(NONE) => None,
            Some("") => return Err(LabelSyntaxError::new(s, "empty unary chain")),
            Some(u) => Some(u.to_owned()),
        };
        let level: Level = level.parse().map_err(|_| LabelSyntaxError::new(s, "bad level"))?;
        Ok(ExtendedLabel::new(LabelCore::new(level, nonterminal), unary))
    }
}

/// Serializes a leaf-unary-chain label, `NONE` for no chain.
pub fn unary_to_string(u: Option<&str>) -> &str {
    u.unwrap_or(NONE)
}

/// Parses a leaf-unary-chain label.
pub fn unary_from_str(s: &str) -> Option<String> {
    (s != NONE).then(|| s.to_owned())
}

/// A sentence with one label per token; the last label is the dummy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSentence {
    pub tokens: Vec<Token>,
    pub labels: Vec<ExtendedLabel>,
}

impl LabeledSentence {
    pub fn new(tokens: Vec<Token>, labels: Vec<ExtendedLabel>) -> Self {
        LabeledSentence { tokens, labels }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Equal lengths and exactly one dummy label, in last position.
    pub fn is_well_formed(&self) -> bool {
        !self.tokens.is_empty()
            && self.tokens.len() == self.labels.len()
            && self.labels.last().is_some_and(ExtendedLabel::is_eos)
            && self.labels.iter().filter(|l| l.is_eos()).count() == 1
    }

    /// Labels without the final dummy.
    pub fn content_labels(&self) -> &[ExtendedLabel] {
        match self.labels.split_last() {
            Some((last, rest)) if last.is_eos() => rest,
            _ => &self.labels,
        }
    }
}
