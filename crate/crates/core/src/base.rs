//! Base operads and coproduct normal form.

use std::fmt;

use crate::error::{OpError, Result};
use crate::koszul::{pass_sign, Sign};
use crate::label::{BaseLabel, Label};
use crate::tree::{Node, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Initial,
    Assoc,
    UAssoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseOperad {
    pub kind: BaseKind,
    pub suspended: bool,
}

impl BaseOperad {
    pub const INITIAL: BaseOperad = BaseOperad { kind: BaseKind::Initial, suspended: false };
    pub const ASSOC: BaseOperad = BaseOperad { kind: BaseKind::Assoc, suspended: false };
    pub const UASSOC: BaseOperad = BaseOperad { kind: BaseKind::UAssoc, suspended: false };

    pub fn parse(s: &str) -> Result<BaseOperad> {
        match s {
            "initial" => Ok(Self::INITIAL),
            "assoc" => Ok(Self::ASSOC),
            "uassoc" => Ok(Self::UASSOC),
            _ => Err(OpError::UnknownPresentation(format!("base `{s}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            BaseKind::Initial => "initial",
            BaseKind::Assoc => "assoc",
            BaseKind::UAssoc => "uassoc",
        }
    }

    pub fn suspend(self) -> BaseOperad {
        BaseOperad { suspended: true, ..self }
    }

    pub fn desuspend(self) -> BaseOperad {
        BaseOperad { suspended: false, ..self }
    }

    /// Whether `m_n` exists. `m_1` is the identity and is never stored.
    pub fn has(&self, n: usize) -> bool {
        match self.kind {
            BaseKind::Initial => n == 1,
            BaseKind::Assoc => n >= 1,
            BaseKind::UAssoc => true,
        }
    }

    pub fn label(&self, n: usize) -> Option<Label> {
        self.has(n).then_some(Label::Base(BaseLabel { arity: n, suspended: self.suspended }))
    }

    /// Basis in arity `n` (empty or one element).
    pub fn basis(&self, n: usize) -> Vec<BaseLabel> {
        self.label(n)
            .map(|l| match l {
                Label::Base(b) => b,
                _ => unreachable!(),
            })
            .into_iter()
            .collect()
    }
}

impl fmt::Display for BaseOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `m_p o_j m_q = sign * m_{p+q-1}`; the sign is trivial unless suspended.
pub fn base_compose(u: BaseLabel, j: usize, v: BaseLabel) -> (Sign, BaseLabel) {
    let out = BaseLabel { arity: u.arity + v.arity - 1, suspended: u.suspended };
    if !u.suspended {
        return (Sign::PLUS, out);
    }
    let q = v.arity as i64;
    let p = u.arity as i64;
    (Sign::pow((1 - q) * (p - j as i64)), out)
}

/// A contraction step available in a node sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Redex {
    /// base identity at this position
    Unit(usize),
    /// base parent at `parent` with base child at `child` in slot `slot`
    Merge { parent: usize, child: usize, slot: usize },
}

fn redexes(nodes: &[Node<Label>]) -> Vec<Redex> {
    let tree = Tree::from_nodes_unchecked(nodes.to_vec());
    let mut out = Vec::new();
    for (p, n) in nodes.iter().enumerate() {
        if let Node::Vertex(Label::Base(b)) = n {
            if b.arity == 1 {
                out.push(Redex::Unit(p));
                continue;
            }
            for (j, c) in tree.child_positions(p).into_iter().enumerate() {
                if let Node::Vertex(Label::Base(cb)) = &nodes[c] {
                    if cb.arity != 1 {
                        out.push(Redex::Merge { parent: p, child: c, slot: j + 1 });
                    }
                }
            }
        }
    }
    out
}

fn apply(nodes: &mut Vec<Node<Label>>, r: Redex) -> Sign {
    match r {
        Redex::Unit(p) => {
            nodes.remove(p);
            Sign::PLUS
        }
        Redex::Merge { parent, child, slot } => {
            let (Node::Vertex(Label::Base(u)), Node::Vertex(Label::Base(v))) =
                (&nodes[parent], &nodes[child])
            else {
                unreachable!()
            };
            let (u, v) = (*u, *v);
            let between = nodes[parent + 1..child].iter().filter_map(|n| n.label()).map(Label::degree);
            let mut s = pass_sign(v.degree(), between);
            let (bs, w) = base_compose(u, slot, v);
            s *= bs;
            nodes[parent] = Node::Vertex(Label::Base(w));
            nodes.remove(child);
            s
        }
    }
}

/// Normal form, always contracting the rightmost available redex.
pub fn contract(nodes: Vec<Node<Label>>) -> (Sign, Tree<Label>) {
    contract_with(nodes, &mut |rs: &[Redex]| rs.len() - 1)
}

/// Normal form with a caller-chosen merge order; used to test confluence.
pub fn contract_with(
    mut nodes: Vec<Node<Label>>,
    choose: &mut dyn FnMut(&[Redex]) -> usize,
) -> (Sign, Tree<Label>) {
    let mut sign = Sign::PLUS;
    if nodes.iter().any(|n| matches!(n, Node::Vertex(Label::Base(_)))) {
        loop {
            let rs = redexes(&nodes);
            if rs.is_empty() {
                break;
            }
            let k = choose(&rs).min(rs.len() - 1);
            sign *= apply(&mut nodes, rs[k]);
        }
    }
    (sign, Tree::from_nodes_unchecked(nodes))
}

/// Whether a monomial is in normal form.
pub fn is_normal(t: &Tree<Label>) -> bool {
    redexes(t.nodes()).is_empty()
}

/// Checks that every base label exists in `base`.
pub fn validate(base: &BaseOperad, t: &Tree<Label>) -> Result<()> {
    for l in t.labels() {
        if let Label::Base(b) = l {
            if !base.has(b.arity) || b.suspended != base.suspended {
                return Err(OpError::Alphabet(l.to_string(), format!("not in the {base} base")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize) -> Label {
        Label::Base(BaseLabel { arity: n, suspended: false })
    }

    fn nodes(t: &Tree<Label>) -> Vec<Node<Label>> {
        t.nodes().to_vec()
    }

    #[test]
    fn comb_contracts() {
        let t = Tree::node(m(2), vec![Tree::corolla(m(2)), Tree::identity()]).unwrap();
        let (s, c) = contract(nodes(&t));
        assert_eq!(s, Sign::PLUS);
        assert_eq!(c, Tree::corolla(m(3)));
    }

    #[test]
    fn unit_contracts_to_identity() {
        let t = Tree::node(m(2), vec![Tree::corolla(m(0)), Tree::identity()]).unwrap();
        let (s, c) = contract(nodes(&t));
        assert_eq!(s, Sign::PLUS);
        assert!(c.is_identity());
    }

    #[test]
    fn suspended_merge_sign() {
        let sm = |n| Label::Base(BaseLabel { arity: n, suspended: true });
        // m_2 o_1 m_2 in the suspended base: (1-2)(2-1) odd
        let t = Tree::node(sm(2), vec![Tree::corolla(sm(2)), Tree::identity()]).unwrap();
        let (s, c) = contract(nodes(&t));
        assert_eq!(s, Sign::MINUS);
        assert_eq!(c, Tree::corolla(sm(3)));
        let t = Tree::node(sm(2), vec![Tree::identity(), Tree::corolla(sm(2))]).unwrap();
        assert_eq!(contract(nodes(&t)).0, Sign::PLUS);
    }

    #[test]
    fn initial_base_has_only_identity() {
        assert!(BaseOperad::INITIAL.has(1));
        assert!(!BaseOperad::INITIAL.has(2));
        assert!(BaseOperad::UASSOC.has(0));
        assert!(!BaseOperad::ASSOC.has(0));
        assert_eq!(BaseOperad::ASSOC.basis(3).len(), 1);
    }
}
