use super::label::{ExtendedLabel, LabelCore, LabeledSentence, Level};
use super::{EncodeError, EncodingScheme, Scale, UnaryStrategy};
use crate::treebank::{validate_no_unaries, Token, Tree};

/// For every adjacent leaf pair `(i, i+1)`, the number of common ancestors
/// and the label of the lowest one.
///
/// Every internal node at depth `d` (root at 0) is the lowest common
/// ancestor of exactly the pairs straddling the boundaries between its
/// children, each with `d + 1` common ancestors.
pub fn ancestor_counts(tree: &Tree) -> Vec<(usize, String)> {
    let n = tree.n_leaves();
    let mut out: Vec<Option<(usize, String)>> = vec![None; n.saturating_sub(1)];
    fn walk(tree: &Tree, depth: usize, offset: usize, out: &mut [Option<(usize, String)>]) -> usize {
        match tree {
            Tree::Leaf(_) => 1,
            Tree::Internal { label, children } => {
                let mut seen = 0;
                for (j, child) in children.iter().enumerate() {
                    seen += walk(child, depth + 1, offset + seen, out);
                    if j + 1 < children.len() {
                        out[offset + seen - 1] = Some((depth + 1, label.clone()));
                    }
                }
                seen
            }
        }
    }
    walk(tree, 0, 0, &mut out);
    out.into_iter()
        .map(|x| x.expect("every adjacent pair has a lowest common ancestor"))
        .collect()
}

/// Common-ancestor count and lowest-common-ancestor label for the leaf pair
/// `(i, i+1)`, with `i` 0-based.
pub fn common_ancestors(tree: &Tree, i: usize) -> Result<(usize, String), EncodeError> {
    let leaves = tree.n_leaves();
    if i + 1 >= leaves {
        return Err(EncodeError::IndexOutOfRange { index: i, leaves });
    }
    Ok(ancestor_counts(tree).swap_remove(i))
}

fn with_dummy(tokens: Vec<Token>, mut labels: Vec<ExtendedLabel>) -> LabeledSentence {
    labels.push(ExtendedLabel::eos());
    LabeledSentence::new(tokens, labels)
}

pub fn encode_absolute(tree: &Tree) -> Result<LabeledSentence, EncodeError> {
    if !validate_no_unaries(tree) {
        return Err(EncodeError::UnaryBranchPresent);
    }
    let labels = ancestor_counts(tree)
        .into_iter()
        .map(|(count, label)| ExtendedLabel::plain(Level::Absolute(count as i32), label))
        .collect();
    Ok(with_dummy(tree.tokens(), labels))
}

pub fn encode_relative(tree: &Tree) -> Result<LabeledSentence, EncodeError> {
    abs_to_rel(&encode_absolute(tree)?)
}

/// Retags every position whose lowest common ancestor is the root as
/// `(ROOT, root label)`.
pub fn apply_root_links(seq: &LabeledSentence, tree: &Tree) -> LabeledSentence {
    let mut out = seq.clone();
    for (label, (count, _)) in out.labels.iter_mut().zip(ancestor_counts(tree)) {
        if count == 1 {
            label.core = LabelCore::new(Level::Root, tree.label());
        }
    }
    out
}

/// Relative encoding of a strictly k-ary tree with every negative value
/// replaced by `NEG`.
pub fn encode_kary(tree: &Tree, k: usize) -> Result<LabeledSentence, EncodeError> {
    check_kary(tree, k)?;
    let mut seq = encode_relative(tree)?;
    for label in &mut seq.labels {
        if matches!(label.core.level, Level::Relative(d) if d < 0) {
            label.core.level = Level::Neg;
        }
    }
    Ok(seq)
}

fn check_kary(tree: &Tree, k: usize) -> Result<(), EncodeError> {
    match tree {
        Tree::Leaf(_) => Ok(()),
        Tree::Internal { children, .. } if children.len() != k => Err(EncodeError::NotStrictlyKary {
            k,
            found: children.len(),
        }),
        Tree::Internal { children, .. } => children.iter().try_for_each(|c| check_kary(c, k)),
    }
}

/// One leaf-unary-chain label per token: the collapsed chain above the PoS
/// tag, or `None`.
pub fn encode_leaf_unaries_psi(tree: &Tree) -> Vec<Option<String>> {
    let mut out = Vec::new();
    tree.visit_tokens(&mut |t| out.push(t.leaf_chain().map(str::to_owned)));
    out
}

/// Encodes under `scale`, leaving tokens (and any collapsed leaf chains in
/// their PoS) untouched.
pub fn encode_scale(tree: &Tree, scale: Scale) -> Result<LabeledSentence, EncodeError> {
    match scale {
        Scale::Absolute => encode_absolute(tree),
        Scale::Relative => encode_relative(tree),
        Scale::RelativeWithRoot => Ok(apply_root_links(&encode_relative(tree)?, tree)),
        Scale::KAry(k) => encode_kary(tree, k),
    }
}

/// Encodes with 3-tuple labels: each label also carries its own word's leaf
/// unary chain, and the tokens are left with plain PoS tags. The dummy
/// label carries the last word's chain.
pub fn encode_extended(tree: &Tree, scale: Scale) -> Result<LabeledSentence, EncodeError> {
    let mut seq = encode_scale(tree, scale)?;
    for (label, token) in seq.labels.iter_mut().zip(seq.tokens.iter_mut()) {
        label.unary = token.leaf_chain().map(str::to_owned);
        token.pos = token.plain_pos().to_owned();
    }
    Ok(seq)
}

/// Encodes a collapsed tree under `scheme`.
///
/// With [`UnaryStrategy::TwoPass`] the tokens keep their enriched PoS tags
/// and the leaf chains are obtained separately through
/// [`encode_leaf_unaries_psi`].
pub fn encode(tree: &Tree, scheme: &EncodingScheme) -> Result<LabeledSentence, EncodeError> {
    match scheme.unaries {
        UnaryStrategy::TwoPass => encode_scale(tree, scheme.scale),
        UnaryStrategy::Extended => encode_extended(tree, scheme.scale),
    }
}

/// Successive differences, the first taken against 0.
pub fn abs_to_rel_counts(counts: &[i32]) -> Vec<i32> {
    let mut prev = 0;
    counts
        .iter()
        .map(|&c| {
            let d = c - prev;
            prev = c;
            d
        })
        .collect()
}

/// Running sums of relative values. Every sum must stay positive.
pub fn rel_to_abs_counts(deltas: &[i32]) -> Result<Vec<i32>, EncodeError> {
    let mut acc = 0;
    deltas
        .iter()
        .enumerate()
        .map(|(position, &d)| {
            acc += d;
            if acc < 1 {
                Err(EncodeError::NonPositivePrefixSum { position })
            } else {
                Ok(acc)
            }
        })
        .collect()
}

/// Converts the absolute content labels of `seq` to the relative scale.
pub fn abs_to_rel(seq: &LabeledSentence) -> Result<LabeledSentence, EncodeError> {
    let mut out = seq.clone();
    let mut prev = 0;
    for (position, label) in out.labels.iter_mut().enumerate() {
        match label.core.level {
            Level::Absolute(n) => {
                label.core.level = Level::Relative(n - prev);
                prev = n;
            }
            Level::Eos => {}
            _ => return Err(EncodeError::ScaleMismatch { position }),
        }
    }
    Ok(out)
}

/// Converts relative content labels of `seq` to the absolute scale. `ROOT`
/// labels become absolute 1.
pub fn rel_to_abs(seq: &LabeledSentence) -> Result<LabeledSentence, EncodeError> {
    let mut out = seq.clone();
    let mut acc = 0;
    for (position, label) in out.labels.iter_mut().enumerate() {
        match label.core.level {
            Level::Relative(d) => {
                acc += d;
                if acc < 1 {
                    return Err(EncodeError::NonPositivePrefixSum { position });
                }
                label.core.level = Level::Absolute(acc);
            }
            Level::Root => {
                acc = 1;
                label.core.level = Level::Absolute(1);
            }
            Level::Eos => {}
            _ => return Err(EncodeError::ScaleMismatch { position }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::parse_bracketed;

    fn t(s: &str) -> Tree {
        parse_bracketed(s).unwrap()
    }

    fn levels(seq: &LabeledSentence) -> Vec<String> {
        seq.labels.iter().map(|l| l.to_string()).collect()
    }

    #[test]
    fn common_ancestor_examples() {
        assert_eq!(common_ancestors(&t("(S (A a) (B b))"), 0).unwrap(), (1, "S".into()));
        assert_eq!(
            common_ancestors(&t("(S (A a) (X (B b) (C c)))"), 1).unwrap(),
            (2, "X".into())
        );
        assert_eq!(
            common_ancestors(&t("(S (A a) (B b))"), 1),
            Err(EncodeError::IndexOutOfRange { index: 1, leaves: 2 })
        );
    }

    #[test]
    fn absolute_examples() {
        assert_eq!(
            levels(&encode_absolute(&t("(S (A a) (B b))")).unwrap()),
            ["1|S", "EOS|EOS"]
        );
        assert_eq!(
            levels(&encode_absolute(&t("(S (A a) (X (B b) (C c)))")).unwrap()),
            ["1|S", "2|X", "EOS|EOS"]
        );
        assert_eq!(
            levels(&encode_absolute(&t("(S (X (A a) (B b)) (C c))")).unwrap()),
            ["2|X", "1|S", "EOS|EOS"]
        );
        assert_eq!(
            encode_absolute(&t("(S (X (A a) (B b)))")),
            Err(EncodeError::UnaryBranchPresent)
        );
    }

    #[test]
    fn relative_examples() {
        assert_eq!(
            levels(&encode_relative(&t("(S (A a) (B b))")).unwrap()),
            ["+1|S", "EOS|EOS"]
        );
        assert_eq!(
            levels(&encode_relative(&t("(S (X (A a) (B b)) (C c))")).unwrap()),
            ["+2|X", "-1|S", "EOS|EOS"]
        );
    }

    #[test]
    fn root_link_examples() {
        let tree = t("(S (X (A a) (B b)) (C c))");
        let seq = apply_root_links(&encode_relative(&tree).unwrap(), &tree);
        assert_eq!(levels(&seq), ["+2|X", "ROOT|S", "EOS|EOS"]);

        // only the final punctuation links to the root
        let tree = t("(S (X (A a) (B b) (C c)) (. .))");
        let seq = encode_scale(&tree, Scale::RelativeWithRoot).unwrap();
        assert_eq!(levels(&seq), ["+2|X", "+0|X", "ROOT|S", "EOS|EOS"]);
    }

    #[test]
    fn kary_examples() {
        let tree = t("(S (X (A a) (B b)) (C c))");
        assert_eq!(levels(&encode_kary(&tree, 2).unwrap()), ["+2|X", "NEG|S", "EOS|EOS"]);
        assert_eq!(
            encode_kary(&t("(S (A a) (B b) (C c))"), 2),
            Err(EncodeError::NotStrictlyKary { k: 2, found: 3 })
        );
        assert!(encode_kary(&t("(S (A a) (B b) (C c))"), 3).is_ok());
    }

    #[test]
    fn psi_examples() {
        let tree = t("(S (X (A a) (B b)) (Z+T5 w5))");
        assert_eq!(encode_leaf_unaries_psi(&tree), vec![None, None, Some("Z".to_owned())]);
        let tree = t("(S (A a) (X+Y+T t))");
        assert_eq!(encode_leaf_unaries_psi(&tree), vec![None, Some("X+Y".to_owned())]);
        let tree = t("(S (A a) (B b))");
        assert_eq!(encode_leaf_unaries_psi(&tree), vec![None, None]);
    }

    #[test]
    fn extended_moves_chain_into_labels() {
        let tree = t("(S (X (A a) (B b)) (Z+T5 w5))");
        let seq = encode_extended(&tree, Scale::RelativeWithRoot).unwrap();
        assert_eq!(levels(&seq), ["+2|X", "ROOT|S", "EOS|EOS|Z"]);
        assert_eq!(seq.tokens[2], Token::new("w5", "T5"));
        let abs = encode_extended(&tree, Scale::Absolute).unwrap();
        assert_eq!(levels(&abs), ["2|X", "1|S", "EOS|EOS|Z"]);
    }

    #[test]
    fn single_word_sentence_has_only_dummy() {
        let seq = encode_absolute(&Tree::leaf("hi", "S+NN")).unwrap();
        assert_eq!(levels(&seq), ["EOS|EOS"]);
        let seq = encode_extended(&Tree::leaf("hi", "S+NN"), Scale::Relative).unwrap();
        assert_eq!(levels(&seq), ["EOS|EOS|S"]);
    }

    #[test]
    fn count_conversions() {
        assert_eq!(abs_to_rel_counts(&[1, 2]), vec![1, 1]);
        assert_eq!(abs_to_rel_counts(&[2, 1]), vec![2, -1]);
        assert_eq!(rel_to_abs_counts(&[1, 1]).unwrap(), vec![1, 2]);
        assert_eq!(rel_to_abs_counts(&[2, -1]).unwrap(), vec![2, 1]);
        assert_eq!(
            rel_to_abs_counts(&[1, -1]),
            Err(EncodeError::NonPositivePrefixSum { position: 1 })
        );
    }

    #[test]
    fn sequence_conversions() {
        let tree = t("(S (X (A a) (B b)) (C c) (D d))");
        let abs = encode_absolute(&tree).unwrap();
        let rel = encode_relative(&tree).unwrap();
        assert_eq!(abs_to_rel(&abs).unwrap(), rel);
        assert_eq!(rel_to_abs(&rel).unwrap(), abs);
        let root = encode_scale(&tree, Scale::RelativeWithRoot).unwrap();
        assert_eq!(rel_to_abs(&root).unwrap(), abs);
        assert_eq!(abs_to_rel(&rel), Err(EncodeError::ScaleMismatch { position: 0 }));
    }
}
