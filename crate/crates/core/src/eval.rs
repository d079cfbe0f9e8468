//! Bracketing precision/recall/F1 in the style of evalb, and label
//! accuracy.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::encoding::{encode, EncodingScheme, LabeledSentence, Scale};
use crate::treebank::{binarize, collapse_unaries, Tree};

/// Labels ignored by default: TOP/S1 roots, empty elements and
/// punctuation. Leaves with one of these PoS tags do not count when
/// computing span indices.
pub const DEFAULT_DELETED_LABELS: &[&str] = &["TOP", "S1", "-NONE-", ",", ":", "``", "''", "."];

pub fn default_deleted_labels() -> HashSet<String> {
    DEFAULT_DELETED_LABELS.iter().map(|s| s.to_string()).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("{gold} gold items but {pred} predicted")]
    LengthMismatch { gold: usize, pred: usize },
    #[error("sentence {sentence}: gold and predicted tokens differ")]
    TokenMismatch { sentence: usize },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvalReport {
    pub matched_brackets: usize,
    pub gold_brackets: usize,
    pub pred_brackets: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub label_accuracy: Option<f64>,
    pub exact_match: f64,
    pub n_sentences: usize,
}

impl EvalReport {
    fn from_counts(matched: usize, gold: usize, pred: usize, exact: usize, n_sentences: usize) -> Self {
        let ratio = |num: usize, den: usize| {
            if den > 0 {
                num as f64 / den as f64
            } else if num == 0 && gold == pred {
                1.0
            } else {
                0.0
            }
        };
        let precision = ratio(matched, pred);
        let recall = ratio(matched, gold);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        EvalReport {
            matched_brackets: matched,
            gold_brackets: gold,
            pred_brackets: pred,
            precision,
            recall,
            f1,
            label_accuracy: None,
            exact_match: if n_sentences > 0 {
                exact as f64 / n_sentences as f64
            } else {
                1.0
            },
            n_sentences,
        }
    }

    /// `P=<p> R=<r> F1=<f> ACC=<a> EXACT=<e>`, four decimals each.
    pub fn summary_line(&self) -> String {
        let acc = self
            .label_accuracy
            .map_or_else(|| "n/a".to_owned(), |a| format!("{a:.4}"));
        format!(
            "P={:.4} R={:.4} F1={:.4} ACC={} EXACT={:.4}",
            self.precision, self.recall, self.f1, acc, self.exact_match
        )
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let acc = self
            .label_accuracy
            .map_or_else(|| "n/a".to_owned(), |a| format!("{:.2}", 100.0 * a));
        writeln!(f, "Sentences          {:>10}", self.n_sentences)?;
        writeln!(f, "Matched brackets   {:>10}", self.matched_brackets)?;
        writeln!(f, "Gold brackets      {:>10}", self.gold_brackets)?;
        writeln!(f, "Predicted brackets {:>10}", self.pred_brackets)?;
        writeln!(f, "Precision          {:>10.2}", 100.0 * self.precision)?;
        writeln!(f, "Recall             {:>10.2}", 100.0 * self.recall)?;
        writeln!(f, "F1                 {:>10.2}", 100.0 * self.f1)?;
        writeln!(f, "Label accuracy     {acc:>10}")?;
        write!(f, "Exact match        {:>10.2}", 100.0 * self.exact_match)
    }
}

/// Labeled spans `(label, start, end)` (half-open, over kept leaves).
pub type Span = (String, usize, usize);

/// Multiset of labeled spans of `tree`. `kept[i]` says whether leaf `i`
/// takes part in span indexing; nodes whose label is deleted, and spans
/// covering no kept leaf, are skipped.
pub fn spans(tree: &Tree, kept: &[bool], deleted: &HashSet<String>) -> HashMap<Span, usize> {
    let mut out = HashMap::new();
    fn walk(
        tree: &Tree,
        leaf: &mut usize,
        index: &mut usize,
        kept: &[bool],
        deleted: &HashSet<String>,
        out: &mut HashMap<Span, usize>,
    ) {
        match tree {
            Tree::Leaf(_) => {
                if kept[*leaf] {
                    *index += 1;
                }
                *leaf += 1;
            }
            Tree::Internal { label, children } => {
                let start = *index;
                for c in children {
                    walk(c, leaf, index, kept, deleted, out);
                }
                if *index > start && !deleted.contains(label) {
                    *out.entry((label.clone(), start, *index)).or_insert(0) += 1;
                }
            }
        }
    }
    walk(tree, &mut 0, &mut 0, kept, deleted, &mut out);
    out
}

/// Micro-averaged labeled bracketing scores.
///
/// Leaves whose gold PoS is deleted are dropped from span indexing in both
/// trees; the root span counts unless its label is deleted.
pub fn bracketing_score(gold: &[Tree], pred: &[Tree], deleted: &HashSet<String>) -> Result<EvalReport, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let (mut matched, mut n_gold, mut n_pred, mut exact) = (0, 0, 0, 0);
    for (sentence, (g, p)) in gold.iter().zip(pred).enumerate() {
        let gold_tokens = g.tokens();
        let pred_tokens = p.tokens();
        if gold_tokens.len() != pred_tokens.len() || gold_tokens.iter().zip(&pred_tokens).any(|(a, b)| a.word != b.word)
        {
            return Err(EvalError::TokenMismatch { sentence });
        }
        let kept: Vec<bool> = gold_tokens.iter().map(|t| !deleted.contains(&t.pos)).collect();
        let gs = spans(g, &kept, deleted);
        let ps = spans(p, &kept, deleted);
        let m: usize = gs.iter().map(|(s, &c)| c.min(ps.get(s).copied().unwrap_or(0))).sum();
        matched += m;
        n_gold += gs.values().sum::<usize>();
        n_pred += ps.values().sum::<usize>();
        if gs == ps {
            exact += 1;
        }
    }
    Ok(EvalReport::from_counts(matched, n_gold, n_pred, exact, gold.len()))
}

/// Fraction of positions (dummy included) whose serialized labels agree.
pub fn label_accuracy(gold: &[LabeledSentence], pred: &[LabeledSentence]) -> Result<f64, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    let (mut correct, mut total) = (0usize, 0usize);
    for (sentence, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.labels.len() != p.labels.len() {
            return Err(EvalError::TokenMismatch { sentence });
        }
        total += g.labels.len();
        correct += g
            .labels
            .iter()
            .zip(&p.labels)
            .filter(|(a, b)| a.to_string() == b.to_string())
            .count();
    }
    Ok(if total == 0 { 1.0 } else { correct as f64 / total as f64 })
}

/// Encodes full trees (collapsing, and binarizing for k-ary scales) so that
/// their label sequences can be compared.
pub fn encode_for_comparison(tree: &Tree, scheme: &EncodingScheme) -> Option<LabeledSentence> {
    let collapsed = collapse_unaries(tree);
    let tree = match scheme.scale {
        Scale::KAry(_) => binarize(&collapsed),
        _ => collapsed.into_inner(),
    };
    encode(&tree, scheme).ok()
}

/// Bracketing scores plus the label accuracy of the two tree lists'
/// encodings under `scheme`.
pub fn evaluate_trees(
    gold: &[Tree],
    pred: &[Tree],
    deleted: &HashSet<String>,
    scheme: &EncodingScheme,
) -> Result<EvalReport, EvalError> {
    let mut report = bracketing_score(gold, pred, deleted)?;
    let encoded = |trees: &[Tree]| -> Option<Vec<LabeledSentence>> {
        trees.iter().map(|t| encode_for_comparison(t, scheme)).collect()
    };
    if let (Some(g), Some(p)) = (encoded(gold), encoded(pred)) {
        report.label_accuracy = Some(label_accuracy(&g, &p)?);
    }
    Ok(report)
}
