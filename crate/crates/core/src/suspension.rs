//! Operadic suspension as a signed relabeling of monomials.

use std::sync::Arc;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::koszul::Sign;
use crate::label::{BaseLabel, Generator, Label, Marker};
use crate::presentation::DgOperad;
use crate::terms::{Element, Monomial};
use crate::tree::{Arity, Node};

/// Regrading `|x| + 1 - arity`.
pub fn suspend_label(l: &Label) -> Result<Label> {
    match l {
        Label::Base(b) if b.suspended => Err(OpError::Alphabet(l.to_string(), "already suspended".into())),
        Label::Base(b) => Ok(Label::Base(BaseLabel { suspended: true, ..*b })),
        Label::Cell(g) => Ok(Label::Cell(Generator { degree: g.degree + 1 - g.arity as i64, ..*g })),
    }
}

pub fn desuspend_label(l: &Label) -> Result<Label> {
    match l {
        Label::Base(b) if !b.suspended => Err(OpError::Alphabet(l.to_string(), "not suspended".into())),
        Label::Base(b) => Ok(Label::Base(BaseLabel { suspended: false, ..*b })),
        Label::Cell(g) => Ok(Label::Cell(Generator { degree: g.degree - 1 + g.arity as i64, ..*g })),
    }
}

pub fn suspend_generator(g: &Generator) -> Generator {
    Generator { degree: g.degree + 1 - g.arity as i64, ..*g }
}

pub fn desuspend_generator(g: &Generator) -> Generator {
    Generator { degree: g.degree - 1 + g.arity as i64, ..*g }
}

/// Sign relating the monomial read with the original compositions to the
/// same tree read with the suspended ones. Degrees are the unsuspended ones.
pub fn suspension_sign(t: &Monomial) -> Sign {
    fn go(t: &Monomial, pos: usize) -> (Sign, i64, i64) {
        match &t.nodes()[pos] {
            Node::Leaf => (Sign::PLUS, 1, 0),
            Node::Vertex(l) => {
                let k = l.arity() as i64;
                let mut s = Sign::PLUS;
                let mut before = 0i64;
                let mut deg = l.degree();
                for (i, c) in t.child_positions(pos).into_iter().enumerate() {
                    let (sc, ac, dc) = go(t, c);
                    let norm = dc + 1 - ac;
                    s *= sc * Sign::pow(norm * (k - 1 - i as i64) + dc * before);
                    before += ac;
                    deg += dc;
                }
                (s, before, deg)
            }
        }
    }
    go(t, 0).0
}

pub fn suspend_element(e: &Element) -> Result<Element> {
    map_monomials(e, |t| {
        let s = suspension_sign(t);
        let n = relabel_tree(t, suspend_label)?;
        Ok((s, n))
    })
}

pub fn desuspend_element(e: &Element) -> Result<Element> {
    map_monomials(e, |t| {
        let n = relabel_tree(t, desuspend_label)?;
        Ok((suspension_sign(&n), n))
    })
}

fn relabel_tree(t: &Monomial, f: fn(&Label) -> Result<Label>) -> Result<Monomial> {
    let mut v = Vec::with_capacity(t.nodes().len());
    for n in t.nodes() {
        v.push(match n {
            Node::Leaf => Node::Leaf,
            Node::Vertex(l) => Node::Vertex(f(l)?),
        });
    }
    Ok(Monomial::from_nodes_unchecked(v))
}

fn map_monomials(e: &Element, f: impl Fn(&Monomial) -> Result<(Sign, Monomial)>) -> Result<Element> {
    let mut out = Element::zero();
    for (t, c) in e.terms() {
        let (s, m) = f(t)?;
        out.add_signed(m, s, c);
    }
    Ok(out)
}

/// The suspension of a presentation: same generators regraded, boundaries
/// transported.
pub struct Suspended {
    inner: Arc<dyn DgOperad>,
}

impl Suspended {
    pub fn new(inner: Arc<dyn DgOperad>) -> Suspended {
        Suspended { inner }
    }
}

impl DgOperad for Suspended {
    fn name(&self) -> String {
        format!("lambda({})", self.inner.name())
    }

    fn base(&self) -> BaseOperad {
        self.inner.base().suspend()
    }

    fn boundary(&self, g: &Generator) -> Result<Element> {
        let b = self.inner.boundary(&desuspend_generator(g))?;
        let a = b.arity().unwrap_or(g.arity);
        Ok(suspend_element(&b)?.with_grading(a, g.total_degree() - 1))
    }

    fn generators(&self, max_arity: usize) -> Vec<Generator> {
        self.inner.generators(max_arity).iter().map(suspend_generator).collect()
    }

    fn resolve(&self, marker: Marker, name: &str) -> Option<Label> {
        self.inner.resolve(marker, name).and_then(|l| suspend_label(&l).ok())
    }

    fn label_name(&self, l: &Label) -> String {
        desuspend_label(l).map(|d| self.inner.label_name(&d)).unwrap_or_else(|_| l.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(name: &str, arity: usize, degree: i64) -> Element {
        Element::generator(Label::Cell(Generator::new(name, arity, degree, 0)))
    }

    #[test]
    fn composition_rule() {
        for (p, dx) in [(2usize, 0i64), (3, 1), (2, 1)] {
            for (q, dy) in [(2usize, 0i64), (3, 1), (1, 1), (0, 2)] {
                let x = g("x", p, dx);
                let y = g("y", q, dy);
                for i in 1..=p {
                    let lhs = suspend_element(&x.compose_at(i, &y).unwrap()).unwrap();
                    let sx = suspend_element(&x).unwrap();
                    let sy = suspend_element(&y).unwrap();
                    let norm = dy + 1 - q as i64;
                    let e = norm * (p - i) as i64 + dy * (i as i64 - 1);
                    let rhs = sx.compose_at(i, &sy).unwrap().signed(Sign::pow(e));
                    assert_eq!(lhs, rhs, "p={p} q={q} i={i}");
                }
            }
        }
    }

    #[test]
    fn round_trip() {
        let x = g("x", 3, 1);
        let y = g("y", 2, 0);
        let e = x.compose_at(2, &y).unwrap().compose_at(1, &y).unwrap();
        assert_eq!(desuspend_element(&suspend_element(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn mu_has_degree_minus_one() {
        for n in 2..8usize {
            let l = Label::Cell(Generator::new("mu", n, n as i64 - 2, 0));
            assert_eq!(suspend_label(&l).unwrap().degree(), -1);
        }
    }
}
