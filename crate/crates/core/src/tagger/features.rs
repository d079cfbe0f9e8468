//! Discrete feature templates over a ±1 word window.

use crate::treebank::Token;

/// Word and PoS of the sentinel before the first word.
pub const BOS: &str = "<s>";
/// Word and PoS of the sentinel after the last word.
pub const EOS: &str = "</s>";

/// The features active at one position, in extraction order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FeatureVector(pub Vec<String>);

impl FeatureVector {
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, feature: &str) -> bool {
        self.0.iter().any(|f| f == feature)
    }
}

/// Adds the beginning and end sentinels.
pub fn pad(sentence: &[Token]) -> Vec<Token> {
    let mut out = Vec::with_capacity(sentence.len() + 2);
    out.push(Token::new(BOS, BOS));
    out.extend_from_slice(sentence);
    out.push(Token::new(EOS, EOS));
    out
}

/// `true` iff every character is a digit, comma or period, with at least
/// one digit.
pub fn is_number(word: &str) -> bool {
    word.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '.') && word.chars().any(|c| c.is_ascii_digit())
}

pub fn is_capitalized(word: &str) -> bool {
    word.chars().next().is_some_and(char::is_uppercase)
}

/// `true` iff the word has cased characters and all of them are uppercase.
pub fn is_uppercased(word: &str) -> bool {
    let mut cased = word.chars().filter(|c| c.is_lowercase() || c.is_uppercase()).peekable();
    cased.peek().is_some() && cased.all(char::is_uppercase)
}

fn prefix(s: &str, n: usize) -> &str {
    match s.char_indices().nth(n) {
        Some((idx, _)) => &s[..idx],
        None => s,
    }
}

fn suffix(s: &str, n: usize) -> &str {
    let count = s.chars().count();
    if count <= n {
        return s;
    }
    match s.char_indices().nth(count - n) {
        Some((idx, _)) => &s[idx..],
        None => s,
    }
}

/// Features for position `i` of a padded sentence (`1..=n` are the words).
///
/// For each of the positions `i-1`, `i`, `i+1`: lowercased word, PoS, PoS
/// prefix of length 2, and the binary flags first/last/number/capitalized/
/// uppercased (only emitted when true, never for sentinels). For `i`
/// itself: suffixes of length 3 and 2 of the lowercased word. Plus a bias.
pub fn extract_features(padded: &[Token], i: usize) -> FeatureVector {
    assert!(
        i >= 1 && i + 1 < padded.len(),
        "position {i} is not a word of the padded sentence"
    );
    let n = padded.len() - 2;
    let mut out = Vec::with_capacity(32);
    out.push("bias".to_owned());
    for (offset, name) in [(-1isize, "-1"), (0, "0"), (1, "+1")] {
        let j = (i as isize + offset) as usize;
        let token = &padded[j];
        let sentinel = j == 0 || j == n + 1;
        let word = if sentinel {
            token.word.clone()
        } else {
            token.word.to_lowercase()
        };
        out.push(format!("w{name}={word}"));
        out.push(format!("p{name}={}", token.pos));
        let pre = if sentinel {
            token.pos.as_str()
        } else {
            prefix(&token.pos, 2)
        };
        out.push(format!("p{name}pre2={pre}"));
        if sentinel {
            continue;
        }
        let flags = [
            ("first", j == 1),
            ("last", j == n),
            ("num", is_number(&token.word)),
            ("cap", is_capitalized(&token.word)),
            ("upper", is_uppercased(&token.word)),
        ];
        for (flag, on) in flags {
            if on {
                out.push(format!("{flag}{name}=true"));
            }
        }
    }
    let word = padded[i].word.to_lowercase();
    out.push(format!("suf3={}", suffix(&word, 3)));
    out.push(format!("suf2={}", suffix(&word, 2)));
    FeatureVector(out)
}
