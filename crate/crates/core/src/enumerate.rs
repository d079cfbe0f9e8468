//! Exhaustive enumeration of small trees, for property checks.

use crate::treebank::{Token, Tree};

/// All ordered tree shapes with `n` leaves and no unary nodes. Internal
/// nodes are labelled `X`, leaves are `(T w<i>)`.
pub fn shapes(n: usize) -> Vec<Tree> {
    let mut memo: Vec<Vec<Tree>> = vec![Vec::new()];
    for size in 1..=n {
        let mut out = if size == 1 {
            vec![Tree::leaf("w", "T")]
        } else {
            Vec::new()
        };
        if size >= 2 {
            // first child takes `first` leaves, the rest form >= 1 more children
            for first in 1..size {
                for head in &memo[first] {
                    for tail in forests(&memo, size - first) {
                        let mut children = vec![head.clone()];
                        children.extend(tail);
                        out.push(Tree::internal("X", children));
                    }
                }
            }
        }
        memo.push(out);
    }
    memo.swap_remove(n)
}

/// Ordered forests of unary-free trees with `n` leaves in total.
fn forests(memo: &[Vec<Tree>], n: usize) -> Vec<Vec<Tree>> {
    let mut out = Vec::new();
    for first in 1..=n {
        for head in &memo[first] {
            if first == n {
                out.push(vec![head.clone()]);
            } else {
                for tail in forests(memo, n - first) {
                    let mut f = vec![head.clone()];
                    f.extend(tail);
                    out.push(f);
                }
            }
        }
    }
    out
}

fn count_internal(tree: &Tree) -> usize {
    match tree {
        Tree::Leaf(_) => 0,
        Tree::Internal { children, .. } => 1 + children.iter().map(count_internal).sum::<usize>(),
    }
}

/// Iterator over every unary-free tree with `n` leaves whose nonterminals
/// and PoS tags are drawn from the given sets. Words are `w1 .. wn`.
pub struct UnaryFreeTrees {
    shapes: std::vec::IntoIter<Tree>,
    current: Option<(Tree, usize)>,
    index: usize,
    total: usize,
    nonterminals: Vec<String>,
    pos_tags: Vec<String>,
    n: usize,
}

impl UnaryFreeTrees {
    pub fn new(n: usize, nonterminals: &[&str], pos_tags: &[&str]) -> Self {
        assert!(n >= 1 && !nonterminals.is_empty() && !pos_tags.is_empty());
        UnaryFreeTrees {
            shapes: shapes(n).into_iter(),
            current: None,
            index: 0,
            total: 0,
            nonterminals: nonterminals.iter().map(|s| s.to_string()).collect(),
            pos_tags: pos_tags.iter().map(|s| s.to_string()).collect(),
            n,
        }
    }

    fn label(&self, shape: &Tree, internal: usize) -> Tree {
        let mut code = self.index;
        let mut nts = Vec::with_capacity(internal);
        for _ in 0..internal {
            nts.push(self.nonterminals[code % self.nonterminals.len()].clone());
            code /= self.nonterminals.len();
        }
        let tokens: Vec<Token> = (0..self.n)
            .map(|i| {
                let pos = self.pos_tags[code % self.pos_tags.len()].clone();
                code /= self.pos_tags.len();
                Token::new(format!("w{}", i + 1), pos)
            })
            .collect();
        fn walk(t: &Tree, nts: &mut std::vec::IntoIter<String>) -> Tree {
            match t {
                Tree::Leaf(tok) => Tree::Leaf(tok.clone()),
                Tree::Internal { children, .. } => {
                    let label = nts.next().unwrap();
                    Tree::Internal {
                        label,
                        children: children.iter().map(|c| walk(c, nts)).collect(),
                    }
                }
            }
        }
        walk(shape, &mut nts.into_iter()).with_tokens(&tokens)
    }
}

impl Iterator for UnaryFreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        loop {
            if let Some((shape, internal)) = &self.current {
                if self.index < self.total {
                    let tree = self.label(shape, *internal);
                    self.index += 1;
                    return Some(tree);
                }
            }
            let shape = self.shapes.next()?;
            let internal = count_internal(&shape);
            self.total = self.nonterminals.len().pow(internal as u32) * self.pos_tags.len().pow(self.n as u32);
            self.index = 0;
            self.current = Some((shape, internal));
        }
    }
}

/// All trees obtained from `tree` by stacking unary chains of length
/// `1..=max_len` (labels from `nonterminals`) above at most `max_sites`
/// distinct nodes. Leaves count as sites, yielding leaf chains. The
/// unmodified tree is included.
pub fn with_unary_chains(tree: &Tree, nonterminals: &[&str], max_len: usize, max_sites: usize) -> Vec<Tree> {
    let chains = all_chains(nonterminals, max_len);
    let sites = count_nodes(tree);
    let mut out = Vec::new();
    let mut chosen: Vec<Option<&[String]>> = vec![None; sites];
    fn rec<'a>(
        tree: &Tree,
        chains: &'a [Vec<String>],
        chosen: &mut Vec<Option<&'a [String]>>,
        from: usize,
        left: usize,
        out: &mut Vec<Tree>,
    ) {
        out.push(inject(tree, chosen, &mut 0));
        if left == 0 {
            return;
        }
        for site in from..chosen.len() {
            for chain in chains {
                chosen[site] = Some(chain);
                rec(tree, chains, chosen, site + 1, left - 1, out);
            }
            chosen[site] = None;
        }
    }
    rec(tree, &chains, &mut chosen, 0, max_sites, &mut out);
    out
}

fn all_chains(nonterminals: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = Vec::new();
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|c| {
                nonterminals.iter().map(move |nt| {
                    let mut c = c.clone();
                    c.push(nt.to_string());
                    c
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn count_nodes(tree: &Tree) -> usize {
    1 + tree.children().iter().map(count_nodes).sum::<usize>()
}

fn inject(tree: &Tree, chosen: &[Option<&[String]>], next: &mut usize) -> Tree {
    let site = *next;
    *next += 1;
    let node = match tree {
        Tree::Leaf(_) => tree.clone(),
        Tree::Internal { label, children } => Tree::Internal {
            label: label.clone(),
            children: children.iter().map(|c| inject(c, chosen, next)).collect(),
        },
    };
    match chosen[site] {
        None => node,
        Some(chain) => chain
            .iter()
            .rev()
            .fold(node, |child, label| Tree::internal(label.clone(), vec![child])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::treebank::validate_no_unaries;
    use std::collections::HashSet;

    #[test]
    fn shape_counts_are_little_schroeder_numbers() {
        let counts: Vec<usize> = (1..=6).map(|n| shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 11, 45, 197]);
        for n in 1..=6 {
            let s = shapes(n);
            assert!(s.iter().all(validate_no_unaries));
            assert!(s.iter().all(|t| t.n_leaves() == n));
            assert_eq!(s.iter().collect::<HashSet<_>>().len(), s.len());
        }
    }

    #[test]
    fn labelled_enumeration_is_complete_and_distinct() {
        // 3 leaves: shapes (X a b c) with 1 internal and two with 2 internal
        let trees: Vec<Tree> = UnaryFreeTrees::new(3, &["S", "X"], &["A", "B"]).collect();
        assert_eq!(trees.len(), (2 + 4 + 4) * 8);
        assert_eq!(trees.iter().collect::<HashSet<_>>().len(), trees.len());
        assert_eq!(trees[0].tokens()[2].word, "w3");
    }

    #[test]
    fn unary_injection() {
        let base = Tree::internal("S", vec![Tree::leaf("a", "A"), Tree::leaf("b", "B")]);
        let one_site = with_unary_chains(&base, &["X"], 2, 1);
        // identity + 3 sites x 2 chains
        assert_eq!(one_site.len(), 1 + 3 * 2);
        assert!(one_site.contains(&crate::treebank::parse_bracketed("(S (X (X (A a))) (B b))").unwrap()));
        let two_sites = with_unary_chains(&base, &["S", "X"], 3, 2);
        assert_eq!(two_sites.iter().collect::<HashSet<_>>().len(), two_sites.len());
    }
}
