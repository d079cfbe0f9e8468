use super::Tree;

/// Marks auxiliary nodes introduced by [`binarize`].
pub const AUX_SUFFIX: char = '*';

/// Right-branching binarization: `(S a b c)` becomes `(S a (S* b c))`.
///
/// Expects a collapsed tree; unary nodes are left as they are.
pub fn binarize(tree: &Tree) -> Tree {
    match tree {
        Tree::Leaf(_) => tree.clone(),
        Tree::Internal { label, children } => {
            let children: Vec<Tree> = children.iter().map(binarize).collect();
            Tree::Internal {
                label: label.clone(),
                children: group_right(label, children),
            }
        }
    }
}

fn group_right(label: &str, mut children: Vec<Tree>) -> Vec<Tree> {
    if children.len() <= 2 {
        return children;
    }
    let aux_label = format!("{label}{AUX_SUFFIX}");
    let last = children.pop().unwrap();
    let second_last = children.pop().unwrap();
    let mut tail = Tree::Internal {
        label: aux_label.clone(),
        children: vec![second_last, last],
    };
    while children.len() > 1 {
        let c = children.pop().unwrap();
        tail = Tree::Internal {
            label: aux_label.clone(),
            children: vec![c, tail],
        };
    }
    children.push(tail);
    children
}

/// Splices out every node whose label ends in `*`, promoting its children.
pub fn debinarize(tree: &Tree) -> Tree {
    match tree {
        Tree::Leaf(_) => tree.clone(),
        Tree::Internal { label, children } => {
            let mut flat = Vec::with_capacity(children.len());
            for child in children {
                splice_into(child, &mut flat);
            }
            Tree::Internal {
                label: label.clone(),
                children: flat,
            }
        }
    }
}

fn splice_into(tree: &Tree, out: &mut Vec<Tree>) {
    match tree {
        Tree::Internal { label, children } if label.ends_with(AUX_SUFFIX) => {
            for child in children {
                splice_into(child, out);
            }
        }
        _ => out.push(debinarize(tree)),
    }
}
