//! Linearization of collapsed constituent trees into one label per word.
//!
//! Each word `w_i` except the last gets a pair `(n_i, c_i)`: `n_i` places
//! the lowest common ancestor of `w_i` and `w_{i+1}` (by its number of
//! common ancestors, or the difference to the previous position), and
//! `c_i` is that ancestor's nonterminal. The last word gets a dummy label.

mod encode;
mod label;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use encode::{
    abs_to_rel, abs_to_rel_counts, ancestor_counts, apply_root_links, common_ancestors, encode, encode_absolute,
    encode_extended, encode_kary, encode_leaf_unaries_psi, encode_relative, encode_scale, rel_to_abs,
    rel_to_abs_counts,
};
pub use label::{
    unary_from_str, unary_to_string, ExtendedLabel, LabelCore, LabelSyntaxError, LabeledSentence, Level, EOS, NONE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("tree has a unary branch; collapse unary chains first")]
    UnaryBranchPresent,
    #[error("tree is not strictly {k}-ary: a node has {found} children")]
    NotStrictlyKary { k: usize, found: usize },
    #[error("leaf pair index {index} out of range for {leaves} leaves")]
    IndexOutOfRange { index: usize, leaves: usize },
    #[error("non-positive running count at position {position}")]
    NonPositivePrefixSum { position: usize },
    #[error("label at position {position} does not belong to the expected scale")]
    ScaleMismatch { position: usize },
}

/// How `n_i` is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Absolute,
    Relative,
    /// Relative, with positions whose lowest common ancestor is the root
    /// tagged `ROOT`.
    RelativeWithRoot,
    /// Relative over strictly k-ary trees, all negative values mapped to
    /// `NEG`.
    KAry(usize),
}

impl Scale {
    /// Whether a content (non-dummy) level is valid under this scale.
    pub fn accepts(&self, level: Level) -> bool {
        matches!(
            (self, level),
            (Scale::Absolute, Level::Absolute(_))
                | (Scale::Relative, Level::Relative(_))
                | (Scale::RelativeWithRoot, Level::Relative(_) | Level::Root)
                | (Scale::KAry(_), Level::Relative(_) | Level::Neg)
        )
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Absolute => f.write_str("abs"),
            Scale::Relative => f.write_str("rel"),
            Scale::RelativeWithRoot => f.write_str("rel-root"),
            Scale::KAry(k) => write!(f, "kary:{k}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown scheme component {0:?}")]
pub struct SchemeParseError(pub String);

impl FromStr for Scale {
    type Err = SchemeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "abs" => Ok(Scale::Absolute),
            "rel" => Ok(Scale::Relative),
            "rel-root" => Ok(Scale::RelativeWithRoot),
            "kary" => Ok(Scale::KAry(2)),
            _ => s
                .strip_prefix("kary:")
                .and_then(|k| k.parse().ok())
                .filter(|&k| k >= 2)
                .map(Scale::KAry)
                .ok_or_else(|| SchemeParseError(s.to_owned())),
        }
    }
}

/// How leaf unary chains are predicted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum UnaryStrategy {
    /// A separate tagging pass enriches PoS tags before the main pass.
    #[default]
    TwoPass,
    /// The chain is a third label component.
    Extended,
}

impl fmt::Display for UnaryStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnaryStrategy::TwoPass => "two-pass",
            UnaryStrategy::Extended => "extended",
        })
    }
}

impl FromStr for UnaryStrategy {
    type Err = SchemeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two-pass" => Ok(UnaryStrategy::TwoPass),
            "extended" => Ok(UnaryStrategy::Extended),
            _ => Err(SchemeParseError(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EncodingScheme {
    pub scale: Scale,
    pub unaries: UnaryStrategy,
}

impl EncodingScheme {
    pub fn new(scale: Scale, unaries: UnaryStrategy) -> Self {
        EncodingScheme { scale, unaries }
    }
}

impl Default for EncodingScheme {
    fn default() -> Self {
        EncodingScheme::new(Scale::RelativeWithRoot, UnaryStrategy::TwoPass)
    }
}

impl fmt::Display for EncodingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.scale, self.unaries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_names() {
        for s in [
            Scale::Absolute,
            Scale::Relative,
            Scale::RelativeWithRoot,
            Scale::KAry(3),
        ] {
            assert_eq!(s.to_string().parse::<Scale>().unwrap(), s);
        }
        assert_eq!("kary".parse::<Scale>().unwrap(), Scale::KAry(2));
        assert!("kary:1".parse::<Scale>().is_err());
        assert!("relative".parse::<Scale>().is_err());
    }

    #[test]
    fn scale_acceptance() {
        assert!(Scale::RelativeWithRoot.accepts(Level::Root));
        assert!(!Scale::Relative.accepts(Level::Root));
        assert!(!Scale::Absolute.accepts(Level::Relative(1)));
        assert!(Scale::KAry(2).accepts(Level::Neg));
        assert!(!Scale::Absolute.accepts(Level::Eos));
    }
}
