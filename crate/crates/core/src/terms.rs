//! Monomials and their Z-linear combinations.
//!
//! A monomial is a labeled tree in normal form. Its coefficient is relative
//! to the tensor product of its labels in path order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::base::contract;
use crate::error::{OpError, Result};
use crate::koszul::{pass_sign, reorder_sign, Sign};
use crate::label::Label;
use crate::tree::{Arity, Node, Tree};

pub type Monomial = Tree<Label>;

pub fn degree_of(m: &Monomial) -> i64 {
    m.labels().map(Label::degree).sum()
}

/// Raw full composition `x0(args...)` before normalization.
pub(crate) fn splice_full(x0: &Monomial, args: &[&Monomial]) -> (Sign, Vec<Node<Label>>) {
    let v0 = x0.vertex_count();
    let mut offs = Vec::with_capacity(args.len());
    let mut acc = v0;
    for a in args {
        offs.push(acc);
        acc += a.vertex_count();
    }
    let mut out = Vec::with_capacity(x0.nodes().len() + args.iter().map(|a| a.nodes().len()).sum::<usize>());
    let mut seq = Vec::with_capacity(acc);
    let mut own = 0;
    let mut leaf = 0;
    for n in x0.nodes() {
        match n {
            Node::Leaf => {
                let mut k = offs[leaf];
                for m in args[leaf].nodes() {
                    if let Node::Vertex(l) = m {
                        seq.push((l.degree(), k));
                        k += 1;
                    }
                    out.push(m.clone());
                }
                leaf += 1;
            }
            Node::Vertex(l) => {
                seq.push((l.degree(), own));
                own += 1;
                out.push(n.clone());
            }
        }
    }
    (reorder_sign(&seq), out)
}

/// Raw `x o_i y` before normalization.
pub(crate) fn splice_at(x: &Monomial, i: usize, y: &Monomial) -> Result<(Sign, Vec<Node<Label>>)> {
    let pos = x.leaf_position(i).ok_or(OpError::SlotOutOfRange { slot: i, arity: x.arity() })?;
    let after = x.nodes()[pos + 1..].iter().filter_map(|n| n.label()).map(Label::degree);
    let s = pass_sign(degree_of(y), after);
    let mut out = Vec::with_capacity(x.nodes().len() + y.nodes().len() - 1);
    out.extend_from_slice(&x.nodes()[..pos]);
    out.extend_from_slice(y.nodes());
    out.extend_from_slice(&x.nodes()[pos + 1..]);
    Ok((s, out))
}

/// Replaces the label of vertex `k` (path order) by `images[k]` when present.
/// Images must have the arity of the vertex they replace.
pub(crate) fn substitute(t: &Monomial, images: &[Option<&Monomial>]) -> (Sign, Vec<Node<Label>>) {
    let nodes = t.nodes();
    let mut offs = Vec::with_capacity(images.len());
    let mut acc = 0;
    for im in images {
        offs.push(acc);
        acc += im.map_or(1, |m| m.vertex_count());
    }
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(acc);
    let mut vidx = 0usize;
    emit(t, 0, images, &offs, &mut vidx, &mut out, &mut seq);
    debug_assert_eq!(out.iter().filter(|n| matches!(n, Node::Leaf)).count(), t.arity());
    let _ = nodes;
    (reorder_sign(&seq), out)
}

fn emit(
    t: &Monomial,
    pos: usize,
    images: &[Option<&Monomial>],
    offs: &[usize],
    vidx: &mut usize,
    out: &mut Vec<Node<Label>>,
    seq: &mut Vec<(i64, usize)>,
) {
    match &t.nodes()[pos] {
        Node::Leaf => out.push(Node::Leaf),
        Node::Vertex(l) => {
            let k = *vidx;
            *vidx += 1;
            let children = t.child_positions(pos);
            match images[k] {
                None => {
                    out.push(Node::Vertex(*l));
                    seq.push((l.degree(), offs[k]));
                    for c in children {
                        emit(t, c, images, offs, vidx, out, seq);
                    }
                }
                Some(img) => {
                    let mut own = 0;
                    let mut leaf = 0;
                    for n in img.nodes() {
                        match n {
                            Node::Leaf => {
                                emit(t, children[leaf], images, offs, vidx, out, seq);
                                leaf += 1;
                            }
                            Node::Vertex(m) => {
                                out.push(Node::Vertex(*m));
                                seq.push((m.degree(), offs[k] + own));
                                own += 1;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Finite Z-linear combination of monomials of one arity and degree.
#[derive(Clone, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, BigInt>,
    grading: Option<(usize, i64)>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for Element {}

impl Element {
    /// The zero that adds to anything.
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn zero_graded(arity: usize, degree: i64) -> Element {
        Element { terms: BTreeMap::new(), grading: Some((arity, degree)) }
    }

    pub fn identity() -> Element {
        Element::from_monomial(Monomial::identity())
    }

    pub fn from_monomial(m: Monomial) -> Element {
        Element::term(BigInt::one(), m)
    }

    pub fn term(c: BigInt, m: Monomial) -> Element {
        let g = (m.arity(), degree_of(&m));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Element { terms, grading: Some(g) }
    }

    pub fn generator(l: Label) -> Element {
        Element::from_monomial(Monomial::corolla(l))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn arity(&self) -> Option<usize> {
        match self.terms.keys().next() {
            Some(m) => Some(m.arity()),
            None => self.grading.map(|g| g.0),
        }
    }

    pub fn degree(&self) -> Option<i64> {
        match self.terms.keys().next() {
            Some(m) => Some(degree_of(m)),
            None => self.grading.map(|g| g.1),
        }
    }

    pub fn grading(&self) -> Option<(usize, i64)> {
        self.arity().zip(self.degree())
    }

    pub fn with_grading(mut self, arity: usize, degree: i64) -> Element {
        if self.grading.is_none() {
            self.grading = Some((arity, degree));
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// Adds `c * m` without grading checks.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if self.grading.is_none() {
            self.grading = Some((m.arity(), degree_of(&m)));
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_signed(&mut self, m: Monomial, s: Sign, c: &BigInt) {
        if s.is_negative() {
            self.add_term(m, -c);
        } else {
            self.add_term(m, c.clone());
        }
    }

    /// `self += c * other` without grading checks.
    pub fn add_scaled(&mut self, other: &Element, c: &BigInt) {
        if self.grading.is_none() {
            self.grading = other.grading();
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c * d);
        }
    }

    pub fn checked_add(&self, other: &Element) -> Result<Element> {
        if let (Some(a), Some(b)) = (self.grading(), other.grading()) {
            if a != b && !self.is_zero_wild() && !other.is_zero_wild() {
                return Err(OpError::GradingMismatch(a.0, a.1, b.0, b.1));
            }
        }
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one());
        Ok(out)
    }

    // a zero whose grading came from context only is still allowed to absorb
    // anything, matching the wildcard convention for empty sums
    fn is_zero_wild(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &BigInt) -> Element {
        if c.is_zero() {
            return Element { terms: BTreeMap::new(), grading: self.grading() };
        }
        Element {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
            grading: self.grading(),
        }
    }

    pub fn scale_i(&self, c: i64) -> Element {
        self.scale(&BigInt::from(c))
    }

    pub fn signed(&self, s: Sign) -> Element {
        if s.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Largest absolute coefficient; zero for the zero element.
    pub fn max_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn compose_at(&self, i: usize, y: &Element) -> Result<Element> {
        if let Some(a) = self.arity() {
            if i == 0 || i > a {
                return Err(OpError::SlotOutOfRange { slot: i, arity: a });
            }
        }
        let mut out = Element::zero();
        for (mx, cx) in &self.terms {
            for (my, cy) in &y.terms {
                let (s1, nodes) = splice_at(mx, i, my)?;
                let (s2, m) = contract(nodes);
                out.add_signed(m, s1 * s2, &(cx * cy));
            }
        }
        if let (Some((ax, dx)), Some((ay, dy))) = (self.grading(), y.grading()) {
            out = out.with_grading(ax + ay - 1, dx + dy);
        }
        Ok(out)
    }

    /// `x0(args...)`, grafting all arguments at once.
    pub fn compose_full(&self, args: &[Element]) -> Result<Element> {
        if let Some(a) = self.arity() {
            if a != args.len() {
                return Err(OpError::LengthMismatch { expected: a, got: args.len() });
            }
        }
        let mut out = Element::zero();
        if !self.is_zero() && args.iter().all(|a| !a.is_zero()) {
            let lists: Vec<Vec<(&Monomial, &BigInt)>> =
                args.iter().map(|a| a.terms.iter().collect()).collect();
            for (m0, c0) in &self.terms {
                for_each_choice(&lists, &mut |pick: &[(&Monomial, &BigInt)]| {
                    let ms: Vec<&Monomial> = pick.iter().map(|p| p.0).collect();
                    let (s1, nodes) = splice_full(m0, &ms);
                    let (s2, m) = contract(nodes);
                    let mut c = c0.clone();
                    for p in pick {
                        c *= p.1;
                    }
                    out.add_signed(m, s1 * s2, &c);
                });
            }
        }
        if let Some((_, d0)) = self.grading() {
            let gs: Option<Vec<(usize, i64)>> = args.iter().map(|a| a.grading()).collect();
            if let Some(gs) = gs {
                let ar = gs.iter().map(|g| g.0).sum();
                let dg = d0 + gs.iter().map(|g| g.1).sum::<i64>();
                out = out.with_grading(ar, dg);
            }
        }
        Ok(out)
    }

    /// `x0(args...)` as iterated partial compositions, first slot first. The
    /// slot of each later argument is shifted by the arities already grafted.
    pub fn compose_full_iterated(&self, args: &[Element]) -> Result<Element> {
        if let Some(a) = self.arity() {
            if a != args.len() {
                return Err(OpError::LengthMismatch { expected: a, got: args.len() });
            }
        }
        let mut acc = self.clone();
        let mut slot = 1;
        for a in args {
            acc = acc.compose_at(slot, a)?;
            slot += a.arity().unwrap_or(1);
        }
        Ok(acc)
    }

    /// Brace operation: all order-preserving insertions of `args`.
    pub fn brace(&self, args: &[Element]) -> Result<Element> {
        let n = args.len();
        let mut out = Element::zero();
        let Some(m) = self.arity() else {
            return Ok(out);
        };
        if n > m {
            return Ok(out);
        }
        let id = Element::identity();
        let mut slots: Vec<usize> = (0..n).collect();
        loop {
            let mut full = vec![id.clone(); m];
            for (k, &s) in slots.iter().enumerate() {
                full[s] = args[k].clone();
            }
            out.add_scaled(&self.compose_full(&full)?, &BigInt::one());
            if !next_combination(&mut slots, m) {
                break;
            }
        }
        Ok(out)
    }

    /// Applies the derivation of degree `deg` whose value on a label is
    /// `f(label)` (`None` means zero).
    pub fn derivation(
        &self,
        deg: i64,
        f: &mut dyn FnMut(&Label) -> Result<Option<Element>>,
    ) -> Result<Element> {
        let mut out = Element::zero();
        for (t, c) in &self.terms {
            let labels: Vec<Label> = t.labels().copied().collect();
            let mut before = 0i64;
            for (k, l) in labels.iter().enumerate() {
                if let Some(img) = f(l)? {
                    let s0 = Sign::pow(deg * before);
                    let mut images: Vec<Option<&Monomial>> = vec![None; labels.len()];
                    for (m, cm) in &img.terms {
                        images[k] = Some(m);
                        let (s1, nodes) = substitute(t, &images);
                        let (s2, r) = contract(nodes);
                        out.add_signed(r, s0 * s1 * s2, &(c * cm));
                    }
                }
                before += l.degree();
            }
        }
        if let Some((a, d)) = self.grading() {
            out = out.with_grading(a, d + deg);
        }
        Ok(out)
    }

    /// Applies the degree 0 operad map whose value on a label is `f(label)`.
    pub fn operad_map(&self, f: &mut dyn FnMut(&Label) -> Result<Element>) -> Result<Element> {
        let mut out = Element::zero();
        let mut memo: BTreeMap<Label, Element> = BTreeMap::new();
        for (t, c) in &self.terms {
            let mut lists: Vec<Vec<(&Monomial, &BigInt)>> = Vec::new();
            for l in t.labels() {
                if !memo.contains_key(l) {
                    let v = f(l)?;
                    memo.insert(*l, v);
                }
            }
            for l in t.labels() {
                lists.push(memo[l].terms.iter().collect());
            }
            if lists.iter().any(|l| l.is_empty()) {
                continue;
            }
            for_each_choice(&lists, &mut |pick| {
                let images: Vec<Option<&Monomial>> = pick.iter().map(|p| Some(p.0)).collect();
                let (s1, nodes) = substitute(t, &images);
                let (s2, r) = contract(nodes);
                let mut k = c.clone();
                for p in pick {
                    k *= p.1;
                }
                out.add_signed(r, s1 * s2, &k);
            });
        }
        if let Some(g) = self.grading() {
            out = out.with_grading(g.0, g.1);
        }
        Ok(out)
    }

    /// Label-wise map where each label goes to a signed label or to zero.
    pub fn relabel(&self, f: &dyn Fn(&Label) -> Option<(Sign, Label)>) -> Element {
        let mut out = Element::zero();
        'terms: for (t, c) in &self.terms {
            let mut s = Sign::PLUS;
            let mut nodes = Vec::with_capacity(t.nodes().len());
            for n in t.nodes() {
                match n {
                    Node::Leaf => nodes.push(Node::Leaf),
                    Node::Vertex(l) => match f(l) {
                        None => continue 'terms,
                        Some((s1, m)) => {
                            debug_assert_eq!(m.arity(), l.arity());
                            s *= s1;
                            nodes.push(Node::Vertex(m));
                        }
                    },
                }
            }
            let (s2, r) = contract(nodes);
            out.add_signed(r, s * s2, c);
        }
        if let Some((a, _)) = self.grading() {
            if out.is_zero() {
                out.grading = Some((a, self.degree().unwrap_or(0)));
            }
        }
        out
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Element {
        Element {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
            grading: self.grading(),
        }
    }

    /// Text form in the expression grammar, naming labels with `name`.
    pub fn to_text_with(&self, name: &dyn Fn(&Label) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&monomial_text(m, name));
        }
        s
    }
}

/// Nested text of a monomial: `label(child,...)` with `id` for leaves.
pub fn monomial_text(m: &Monomial, name: &dyn Fn(&Label) -> String) -> String {
    fn go(m: &Monomial, p: &mut usize, name: &dyn Fn(&Label) -> String, out: &mut String) {
        let n = &m.nodes()[*p];
        *p += 1;
        match n {
            Node::Leaf => out.push_str("id"),
            Node::Vertex(l) => {
                out.push_str(&name(l));
                let k = l.arity();
                let all_leaves = *p + k <= m.nodes().len()
                    && m.nodes()[*p..*p + k].iter().all(|n| matches!(n, Node::Leaf));
                if k > 0 && all_leaves {
                    *p += k;
                } else if k > 0 {
                    out.push('(');
                    for i in 0..k {
                        if i > 0 {
                            out.push(',');
                        }
                        go(m, p, name, out);
                    }
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    let mut p = 0;
    go(m, &mut p, name, &mut out);
    out
}

type Pick<'a> = (&'a Monomial, &'a BigInt);

fn for_each_choice<'a>(
    lists: &[Vec<Pick<'a>>],
    f: &mut dyn FnMut(&[Pick<'a>]),
) {
    let mut pick = Vec::with_capacity(lists.len());
    fn rec<'a>(
        lists: &[Vec<Pick<'a>>],
        pick: &mut Vec<Pick<'a>>,
        f: &mut dyn FnMut(&[Pick<'a>]),
    ) {
        let k = pick.len();
        if k == lists.len() {
            f(pick);
            return;
        }
        for &e in &lists[k] {
            pick.push(e);
            rec(lists, pick, f);
            pick.pop();
        }
    }
    rec(lists, &mut pick, f);
}

/// Advances a strictly increasing selection of `k` slots out of `m`.
pub(crate) fn next_combination(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < m - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_with(&|l| l.to_string()))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{self}]")
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics on a grading mismatch; see `checked_add`.
    fn add(self, rhs: &Element) -> Element {
        self.checked_add(rhs).expect("grading mismatch")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            grading: self.grading(),
        }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl std::iter::Sum for Element {
    fn sum<I: Iterator<Item = Element>>(iter: I) -> Element {
        let mut out = Element::zero();
        for e in iter {
            out.add_scaled(&e, &BigInt::one());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{BaseLabel, Generator};

    fn g(name: &str, arity: usize, degree: i64) -> Element {
        Element::generator(Label::Cell(Generator::new(name, arity, degree, 0)))
    }

    fn m(n: usize) -> Element {
        Element::generator(Label::Base(BaseLabel { arity: n, suspended: false }))
    }

    #[test]
    fn left_comb_no_sign() {
        let mu = g("mu_2", 2, 0);
        let e = mu.compose_at(1, &mu).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.terms().next().unwrap().1, &BigInt::one());
        assert_eq!(e.to_string(), "mu_2(mu_2,id)");
    }

    #[test]
    fn unit_laws() {
        let x = g("x", 3, 1);
        let id = Element::identity();
        assert_eq!(id.compose_at(1, &x).unwrap(), x);
        for i in 1..=3 {
            assert_eq!(x.compose_at(i, &id).unwrap(), x);
        }
        assert!(x.compose_at(4, &id).is_err());
        assert!(x.compose_at(0, &id).is_err());
    }

    #[test]
    fn odd_commutation_example() {
        let a = g("a", 2, 0);
        let y = g("y", 2, 1);
        let z = g("z", 2, 1);
        let lhs = a.compose_at(2, &y).unwrap().compose_at(1, &z).unwrap();
        let rhs = a.compose_at(1, &z).unwrap().compose_at(3, &y).unwrap();
        assert_eq!(lhs, -rhs);
    }

    #[test]
    fn full_vs_iterated() {
        let x = g("x", 2, 1);
        let y = g("y", 2, 1);
        let z = g("z", 1, 1);
        let a = x.compose_full(&[y.clone(), z.clone()]).unwrap();
        let b = x.compose_full_iterated(&[y.clone(), z.clone()]).unwrap();
        assert_eq!(a, b);
        // last slot first picks up the Koszul sign of swapping y and z
        let c = x.compose_at(2, &z).unwrap().compose_at(1, &y).unwrap();
        assert_eq!(a, -c);
    }

    #[test]
    fn brace_examples() {
        let mu = g("mu_2", 2, 0);
        let lhs = mu.brace(std::slice::from_ref(&mu)).unwrap();
        let rhs = mu.compose_at(1, &mu).unwrap() + mu.compose_at(2, &mu).unwrap();
        assert_eq!(lhs, rhs);
        assert!(mu.brace(&[mu.clone(), mu.clone(), mu.clone()]).unwrap().is_zero());
        assert_eq!(mu.brace(&[]).unwrap(), mu);
    }

    #[test]
    fn algebra() {
        let x = g("x", 2, 0).compose_at(1, &g("x", 2, 0)).unwrap();
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&Element::zero() + &x, x);
        assert_eq!(x.scale_i(2) - x.clone(), x);
        assert!(x.checked_add(&g("x", 2, 0)).is_err());
    }

    #[test]
    fn base_contraction_inside_composition() {
        let e = m(2).compose_at(1, &m(0)).unwrap();
        assert_eq!(e, Element::identity());
        let e = m(2).compose_at(2, &m(3)).unwrap();
        assert_eq!(e, m(4));
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut n = 1;
        while next_combination(&mut c, 4) {
            n += 1;
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn derivation_sign() {
        // d(x o_1 y) with d(x) = a, d(y) = b, |x| = 1
        let x = Label::Cell(Generator::new("x", 1, 1, 1));
        let y = Label::Cell(Generator::new("y", 1, 1, 1));
        let a = g("a", 1, 0);
        let b = g("b", 1, 0);
        let e = Element::generator(x).compose_at(1, &Element::generator(y)).unwrap();
        let d = e
            .derivation(-1, &mut |l| {
                Ok(if *l == x { Some(a.clone()) } else if *l == y { Some(b.clone()) } else { None })
            })
            .unwrap();
        let expect = a.compose_at(1, &Element::generator(y)).unwrap()
            - Element::generator(x).compose_at(1, &b).unwrap();
        assert_eq!(d, expect);
    }
}
