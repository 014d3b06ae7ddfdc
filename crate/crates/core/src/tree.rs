//! Planted planar trees stored as preorder node sequences.
//!
//! A tree is the list of its nodes visited depth first, left to right, parent
//! before children. Leaves are `Node::Leaf`; the bare edge is the one-node
//! sequence `[Leaf]`. Inner vertices appear in path order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{OpError, Result};

pub trait Arity {
    fn arity(&self) -> usize;
}

impl Arity for usize {
    fn arity(&self) -> usize {
        *self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node<L> {
    Leaf,
    Vertex(L),
}

impl<L> Node<L> {
    pub fn label(&self) -> Option<&L> {
        match self {
            Node::Leaf => None,
            Node::Vertex(l) => Some(l),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree<L> {
    nodes: Arc<[Node<L>]>,
}

/// Unlabelled shape; each vertex records only its arity.
pub type PlanarTree = Tree<usize>;

/// Result of a graft together with the vertex injections. `left[k]` is the
/// new path-order index of vertex `k` of the receiving tree, `right[k]` the
/// same for the grafted tree.
#[derive(Clone, Debug)]
pub struct Grafted<L> {
    pub tree: Tree<L>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl<L: Clone + Arity> Tree<L> {
    pub fn identity() -> Self {
        Tree { nodes: Arc::from(vec![Node::Leaf]) }
    }

    pub fn corolla(label: L) -> Self {
        let n = label.arity();
        let mut v = Vec::with_capacity(n + 1);
        v.push(Node::Vertex(label));
        v.extend(std::iter::repeat_n(Node::Leaf, n));
        Tree { nodes: Arc::from(v) }
    }

    pub fn from_nodes(nodes: Vec<Node<L>>) -> Result<Self> {
        let end = scan(&nodes, 0)?;
        if end != nodes.len() {
            return Err(OpError::Malformed(format!(
                "{} trailing nodes",
                nodes.len() - end
            )));
        }
        Ok(Tree { nodes: Arc::from(nodes) })
    }

    /// Trusted constructor for sequences built by the crate itself.
    pub(crate) fn from_nodes_unchecked(nodes: Vec<Node<L>>) -> Self {
        debug_assert_eq!(scan(&nodes, 0).ok(), Some(nodes.len()));
        Tree { nodes: Arc::from(nodes) }
    }

    /// `label(children...)`; each child may be the bare edge.
    pub fn node(label: L, children: Vec<Tree<L>>) -> Result<Self> {
        if children.len() != label.arity() {
            return Err(OpError::LengthMismatch {
                expected: label.arity(),
                got: children.len(),
            });
        }
        let mut v = vec![Node::Vertex(label)];
        for c in &children {
            v.extend(c.nodes.iter().cloned());
        }
        Ok(Tree { nodes: Arc::from(v) })
    }

    pub fn nodes(&self) -> &[Node<L>] {
        &self.nodes
    }

    pub fn arity(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Leaf)).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len() - self.arity()
    }

    pub fn is_identity(&self) -> bool {
        matches!(&*self.nodes, [Node::Leaf])
    }

    pub fn root(&self) -> Option<&L> {
        self.nodes[0].label()
    }

    /// Labels in path order.
    pub fn labels(&self) -> impl Iterator<Item = &L> {
        self.nodes.iter().filter_map(|n| n.label())
    }

    /// Node positions of the inner vertices in path order.
    pub fn path_order_vertices(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&p| matches!(self.nodes[p], Node::Vertex(_)))
            .collect()
    }

    /// One past the last node of the subtree rooted at `pos`.
    pub fn subtree_end(&self, pos: usize) -> usize {
        scan_trusted(&self.nodes, pos)
    }

    /// Positions of the children of the vertex at `pos`.
    pub fn child_positions(&self, pos: usize) -> Vec<usize> {
        match &self.nodes[pos] {
            Node::Leaf => Vec::new(),
            Node::Vertex(l) => {
                let mut out = Vec::with_capacity(l.arity());
                let mut p = pos + 1;
                for _ in 0..l.arity() {
                    out.push(p);
                    p = self.subtree_end(p);
                }
                out
            }
        }
    }

    pub fn subtree(&self, pos: usize) -> Tree<L> {
        let end = self.subtree_end(pos);
        Tree { nodes: Arc::from(self.nodes[pos..end].to_vec()) }
    }

    /// Subtrees hanging from the root; empty for the bare edge.
    pub fn root_children(&self) -> Vec<Tree<L>> {
        self.child_positions(0).into_iter().map(|p| self.subtree(p)).collect()
    }

    /// Node position of leaf `i` (1-based).
    pub fn leaf_position(&self, i: usize) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n, Node::Leaf))
            .nth(i - 1)
            .map(|(p, _)| p)
    }

    /// Level of each inner vertex keyed by node position; the root has level 1.
    pub fn vertex_levels(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        self.levels_from(0, 1, &mut out);
        out
    }

    fn levels_from(&self, pos: usize, level: usize, out: &mut BTreeMap<usize, usize>) {
        if let Node::Vertex(_) = self.nodes[pos] {
            out.insert(pos, level);
            for c in self.child_positions(pos) {
                self.levels_from(c, level + 1, out);
            }
        }
    }

    /// Graft `s` into leaf `i` (1-based).
    pub fn graft(&self, i: usize, s: &Tree<L>) -> Result<Grafted<L>> {
        let pos = self.leaf_position(i).ok_or(OpError::SlotOutOfRange {
            slot: i,
            arity: self.arity(),
        })?;
        let before = self.nodes[..pos]
            .iter()
            .filter(|n| matches!(n, Node::Vertex(_)))
            .count();
        let sv = s.vertex_count();
        let tv = self.vertex_count();
        let mut v = Vec::with_capacity(self.nodes.len() + s.nodes.len() - 1);
        v.extend(self.nodes[..pos].iter().cloned());
        v.extend(s.nodes.iter().cloned());
        v.extend(self.nodes[pos + 1..].iter().cloned());
        let left = (0..tv).map(|k| if k < before { k } else { k + sv }).collect();
        let right = (0..sv).map(|k| k + before).collect();
        Ok(Grafted { tree: Tree { nodes: Arc::from(v) }, left, right })
    }

    pub fn shape(&self) -> PlanarTree {
        self.map(|l| l.arity())
    }

    pub fn map<M: Clone + Arity>(&self, mut f: impl FnMut(&L) -> M) -> Tree<M> {
        let v: Vec<Node<M>> = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Leaf => Node::Leaf,
                Node::Vertex(l) => {
                    let m = f(l);
                    debug_assert_eq!(m.arity(), l.arity());
                    Node::Vertex(m)
                }
            })
            .collect();
        Tree { nodes: Arc::from(v) }
    }
}

fn scan<L: Arity>(nodes: &[Node<L>], pos: usize) -> Result<usize> {
    // iterative: count of open slots
    let mut need = 1usize;
    let mut p = pos;
    while need > 0 {
        match nodes.get(p) {
            None => return Err(OpError::Malformed("truncated node sequence".into())),
            Some(Node::Leaf) => need -= 1,
            Some(Node::Vertex(l)) => need = need - 1 + l.arity(),
        }
        p += 1;
    }
    Ok(p)
}

fn scan_trusted<L: Arity>(nodes: &[Node<L>], pos: usize) -> usize {
    let mut need = 1usize;
    let mut p = pos;
    while need > 0 {
        match &nodes[p] {
            Node::Leaf => need -= 1,
            Node::Vertex(l) => need = need - 1 + l.arity(),
        }
        p += 1;
    }
    p
}

impl<L: fmt::Display + Arity> fmt::Display for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go<L: fmt::Display + Arity>(
            nodes: &[Node<L>],
            p: &mut usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            let n = &nodes[*p];
            *p += 1;
            match n {
                Node::Leaf => write!(f, "|"),
                Node::Vertex(l) => {
                    write!(f, "{l}")?;
                    if l.arity() > 0 {
                        write!(f, "(")?;
                        for i in 0..l.arity() {
                            if i > 0 {
                                write!(f, ",")?;
                            }
                            go(nodes, p, f)?;
                        }
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        let mut p = 0;
        go(&self.nodes, &mut p, f)
    }
}

impl<L: fmt::Debug> fmt::Debug for Tree<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.nodes.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> PlanarTree {
        Tree::corolla(n)
    }

    #[test]
    fn constant_is_not_identity() {
        assert!(!c(0).is_identity());
        assert!(Tree::<usize>::identity().is_identity());
        assert_eq!(c(0).vertex_count(), 1);
    }

    // v1(v2(|, v3, v4), v5) with arbitrary arities for the upper vertices
    fn five() -> PlanarTree {
        let v2 = Tree::node(3, vec![Tree::identity(), c(2), c(0)]).unwrap();
        Tree::node(2, vec![v2, c(1)]).unwrap()
    }

    #[test]
    fn path_order_follows_subscripts() {
        let t = five();
        let order = t.path_order_vertices();
        assert_eq!(order.len(), 5);
        let ar: Vec<usize> = order.iter().map(|&p| *t.nodes()[p].label().unwrap()).collect();
        assert_eq!(ar, vec![2, 3, 2, 0, 1]);
    }

    #[test]
    fn levels() {
        let t = five();
        let lv: Vec<usize> = t.vertex_levels().values().copied().collect();
        // keyed by position, which is path order
        assert_eq!(lv, vec![1, 2, 3, 3, 2]);
        assert_eq!(c(4).vertex_levels().len(), 1);
        assert!(PlanarTree::identity().vertex_levels().is_empty());
        assert!(PlanarTree::identity().path_order_vertices().is_empty());
    }

    #[test]
    fn graft_basics() {
        let g = c(2).graft(1, &c(3)).unwrap();
        assert_eq!(g.tree.arity(), 4);
        assert_eq!(g.tree, Tree::node(2, vec![c(3), Tree::identity()]).unwrap());
        assert_eq!(g.left, vec![0]);
        assert_eq!(g.right, vec![1]);
        let t = five();
        assert_eq!(t.graft(2, &Tree::identity()).unwrap().tree, t);
        assert_eq!(PlanarTree::identity().graft(1, &t).unwrap().tree, t);
        assert!(t.graft(0, &c(1)).is_err());
        assert!(t.graft(t.arity() + 1, &c(1)).is_err());
    }

    #[test]
    fn graft_injections_shuffle() {
        let t = five();
        let s = Tree::node(2, vec![c(1), Tree::identity()]).unwrap();
        // leaf 3 sits under v3, between v3 and v4
        let g = t.graft(3, &s).unwrap();
        assert_eq!(g.left, vec![0, 1, 2, 5, 6]);
        assert_eq!(g.right, vec![3, 4]);
        let mut all: Vec<usize> = g.left.iter().chain(&g.right).copied().collect();
        all.sort();
        assert_eq!(all, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn from_nodes_validates() {
        assert!(PlanarTree::from_nodes(vec![Node::Vertex(2), Node::Leaf]).is_err());
        assert!(PlanarTree::from_nodes(vec![Node::Leaf, Node::Leaf]).is_err());
        assert!(PlanarTree::from_nodes(vec![Node::Vertex(0)]).is_ok());
    }

    #[test]
    fn display() {
        assert_eq!(five().to_string(), "2(3(|,2(|,|),0),1(|))");
    }
}
