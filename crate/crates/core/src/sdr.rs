//! Cylinder homotopy of a pseudo-cellular operad.
//!
//! The homotopy is evaluated by the recursion `h' = h0 + h'(dI h0)` stage by
//! stage, where `h0` is the tensor-product homotopy of the coproduct at the
//! top stage and `dI` the perturbation. Results are memoized per monomial.

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{OpError, Result};
use crate::koszul::Sign;
use crate::label::{Generator, Label, Marker};
use crate::presentation::DgOperad;
use crate::terms::{degree_of, splice_full, Element, Monomial};
use crate::tree::{Arity, Node};

const DEFAULT_BUDGET: usize = 4_000_000;

pub struct SdrEngine {
    source: Arc<dyn DgOperad>,
    h_memo: DashMap<Monomial, Element>,
    h0_memo: DashMap<(u32, Monomial), Element>,
    corr_memo: DashMap<Generator, Element>,
    budget: usize,
}

fn check_cyl(l: &Label) -> Result<()> {
    match l.marker() {
        Marker::I0 | Marker::I1 | Marker::Sigma => Ok(()),
        Marker::Plain if l.is_base() => Ok(()),
        _ => Err(OpError::Alphabet(l.to_string(), "not a cylinder label".into())),
    }
}

/// Label-level `i0 p`: both ends go to the bottom copy, sigma dies.
fn i0p_label(l: &Label) -> Option<(Sign, Label)> {
    match l {
        Label::Base(_) => Some((Sign::PLUS, *l)),
        Label::Cell(g) => match g.marker {
            Marker::I0 | Marker::I1 => Some((Sign::PLUS, Label::Cell(g.with_marker(Marker::I0)))),
            _ => None,
        },
    }
}

pub fn i0p_monomial(m: &Monomial) -> Option<Monomial> {
    let mut v = Vec::with_capacity(m.nodes().len());
    for n in m.nodes() {
        v.push(match n {
            Node::Leaf => Node::Leaf,
            Node::Vertex(l) => Node::Vertex(i0p_label(l)?.1),
        });
    }
    Some(Monomial::from_nodes_unchecked(v))
}

fn mono(m: Monomial) -> Element {
    Element::from_monomial(m)
}

fn max_stage(m: &Monomial) -> Option<u32> {
    m.labels().filter_map(Label::stage).max()
}

fn stage_count(m: &Monomial, gamma: u32) -> usize {
    m.labels().filter(|l| l.stage() == Some(gamma)).count()
}

impl SdrEngine {
    pub fn new(source: Arc<dyn DgOperad>) -> SdrEngine {
        let budget = std::env::var("OPCYL_CACHE").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BUDGET);
        SdrEngine::with_budget(source, budget)
    }

    pub fn with_budget(source: Arc<dyn DgOperad>, budget: usize) -> SdrEngine {
        SdrEngine {
            source,
            h_memo: DashMap::new(),
            h0_memo: DashMap::new(),
            corr_memo: DashMap::new(),
            budget,
        }
    }

    pub fn source(&self) -> &Arc<dyn DgOperad> {
        &self.source
    }

    pub fn cache_len(&self) -> usize {
        self.h_memo.len() + self.h0_memo.len()
    }

    fn mark(e: &Element, marker: Marker) -> Result<Element> {
        for m in e.monomials() {
            for l in m.labels() {
                if l.marker() != Marker::Plain {
                    return Err(OpError::Alphabet(l.to_string(), "expected a plain label".into()));
                }
            }
        }
        Ok(e.relabel(&|l| match l {
            Label::Base(_) => Some((Sign::PLUS, *l)),
            Label::Cell(g) => Some((Sign::PLUS, Label::Cell(g.with_marker(marker)))),
        }))
    }

    pub fn i0_map(&self, e: &Element) -> Result<Element> {
        Self::mark(e, Marker::I0)
    }

    pub fn i1_map(&self, e: &Element) -> Result<Element> {
        Self::mark(e, Marker::I1)
    }

    pub fn p_map(&self, e: &Element) -> Result<Element> {
        for m in e.monomials() {
            m.labels().try_for_each(check_cyl)?;
        }
        Ok(e.relabel(&|l| match l {
            Label::Base(_) => Some((Sign::PLUS, *l)),
            Label::Cell(g) => match g.marker {
                Marker::I0 | Marker::I1 => Some((Sign::PLUS, Label::Cell(g.plain()))),
                _ => None,
            },
        }))
    }

    pub fn i0p_map(&self, e: &Element) -> Result<Element> {
        for m in e.monomials() {
            m.labels().try_for_each(check_cyl)?;
        }
        Ok(e.relabel(&i0p_label))
    }

    /// `h_I` on one label.
    pub fn h_label(l: &Label) -> Option<Label> {
        match l {
            Label::Cell(g) if g.marker == Marker::I1 => Some(Label::Cell(g.with_marker(Marker::Sigma))),
            _ => None,
        }
    }

    /// `H(i1 d(x))` for a plain generator `x`.
    pub fn sigma_correction(&self, x: &Generator) -> Result<Element> {
        let x = x.plain();
        if let Some(v) = self.corr_memo.get(&x) {
            return Ok(v.clone());
        }
        let b = self.source.boundary(&x)?;
        let v = self.cylinder_homotopy(&self.i1_map(&b)?)?.with_grading(x.arity, x.degree);
        self.corr_memo.insert(x, v.clone());
        Ok(v)
    }

    /// The perturbation at stage `gamma`: a derivation that is zero away from
    /// stage `gamma` cylinder labels.
    pub fn perturbation_extension(&self, gamma: u32, e: &Element) -> Result<Element> {
        e.derivation(-1, &mut |l| self.perturb_label(gamma, l))
    }

    fn perturb_label(&self, gamma: u32, l: &Label) -> Result<Option<Element>> {
        let Label::Cell(g) = l else {
            return Ok(None);
        };
        if g.stage != gamma {
            return Ok(None);
        }
        match g.marker {
            Marker::I0 => Ok(Some(self.i0_map(&self.source.boundary(&g.plain())?)?)),
            Marker::I1 => Ok(Some(self.i1_map(&self.source.boundary(&g.plain())?)?)),
            Marker::Sigma => Ok(Some(-self.sigma_correction(g)?)),
            _ => Err(OpError::Alphabet(l.to_string(), "not a cylinder label".into())),
        }
    }

    /// Differential of the cylinder on one generator.
    pub fn cylinder_differential(&self, g: &Generator) -> Result<Element> {
        let x = g.plain();
        let b = self.source.boundary(&x)?;
        let out = match g.marker {
            Marker::I0 => self.i0_map(&b)?,
            Marker::I1 => self.i1_map(&b)?,
            Marker::Sigma => {
                let i0 = Element::generator(Label::Cell(x.with_marker(Marker::I0)));
                let i1 = Element::generator(Label::Cell(x.with_marker(Marker::I1)));
                &(&i0 - &i1) - &self.sigma_correction(&x)?
            }
            _ => return Err(OpError::Alphabet(Label::Cell(*g).to_string(), "not a cylinder label".into())),
        };
        Ok(out.with_grading(g.arity, g.total_degree() - 1))
    }

    /// Differential of the cylinder on any element.
    pub fn differential(&self, e: &Element) -> Result<Element> {
        e.derivation(-1, &mut |l| match l {
            Label::Base(_) => Ok(None),
            Label::Cell(g) => self.cylinder_differential(g).map(Some),
        })
    }

    /// Tensor-product homotopy of the coproduct at stage `gamma`.
    pub fn tensor_homotopy(&self, gamma: u32, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.h0(gamma, m)?, c);
        }
        Ok(out.with_grading(e.arity().unwrap_or(1), e.degree().unwrap_or(0) + 1))
    }

    fn h0(&self, gamma: u32, t: &Monomial) -> Result<Element> {
        if t.is_identity() {
            return Ok(Element::zero_graded(1, 1));
        }
        let key = (gamma, t.clone());
        if let Some(v) = self.h0_memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.h0_with(gamma, t, &|x0| self.homotopy_monomial(x0), true)?;
        if self.h0_memo.len() < self.budget {
            self.h0_memo.insert(key, v.clone());
        }
        Ok(v)
    }

    fn h0_rec(
        &self,
        gamma: u32,
        t: &Monomial,
        lower: &dyn Fn(&Monomial) -> Result<Element>,
        memo: bool,
    ) -> Result<Element> {
        if memo {
            self.h0(gamma, t)
        } else if t.is_identity() {
            Ok(Element::zero_graded(1, 1))
        } else {
            self.h0_with(gamma, t, lower, false)
        }
    }

    fn h0_with(
        &self,
        gamma: u32,
        t: &Monomial,
        lower: &dyn Fn(&Monomial) -> Result<Element>,
        memo: bool,
    ) -> Result<Element> {
        let grading = (t.arity(), degree_of(t) + 1);
        for l in t.labels() {
            check_cyl(l)?;
            if l.stage().is_some_and(|s| s > gamma) {
                return Err(OpError::Alphabet(l.to_string(), format!("above stage {gamma}")));
            }
        }
        let root = *t.root().expect("not the identity");
        let mut out = Element::zero();
        if root.stage() == Some(gamma) {
            let children: Vec<Monomial> = t.root_children();
            let args: Vec<Element> = children.iter().cloned().map(mono).collect();
            if let Some(s) = SdrEngine::h_label(&root) {
                out.add_scaled(&Element::generator(s).compose_full(&args)?, &BigInt::one());
            }
            if let Some((_, r0)) = i0p_label(&root) {
                self.spread(gamma, &Element::generator(r0), root.degree(), &children, lower, memo, &mut out)?;
            }
        } else {
            let (x0, xs) = split_lower(t, gamma);
            let refs: Vec<&Monomial> = xs.iter().collect();
            let (s, nodes) = splice_full(&x0, &refs);
            debug_assert_eq!(nodes.as_slice(), t.nodes());
            let args: Vec<Element> = xs.iter().cloned().map(mono).collect();
            let mut acc = lower(&x0)?.compose_full(&args)?;
            if let Some(p0) = i0p_monomial(&x0) {
                self.spread(gamma, &mono(p0), degree_of(&x0), &xs, lower, memo, &mut acc)?;
            }
            out = acc.signed(s);
        }
        Ok(out.with_grading(grading.0, grading.1))
    }

    /// Adds the sum over `i` of `head(i0p(c_1),..,h0(c_i),c_{i+1},..)` with the
    /// Koszul sign of the factors before `c_i`.
    #[allow(clippy::too_many_arguments)]
    fn spread(
        &self,
        gamma: u32,
        head: &Element,
        head_degree: i64,
        children: &[Monomial],
        lower: &dyn Fn(&Monomial) -> Result<Element>,
        memo: bool,
        out: &mut Element,
    ) -> Result<()> {
        let mut before = head_degree;
        let mut pre: Vec<Element> = Vec::with_capacity(children.len());
        for (i, c) in children.iter().enumerate() {
            if !c.is_identity() {
                let hc = self.h0_rec(gamma, c, lower, memo)?;
                if !hc.is_zero() {
                    let mut args = pre.clone();
                    args.push(hc);
                    args.extend(children[i + 1..].iter().cloned().map(mono));
                    let v = head.compose_full(&args)?;
                    out.add_signed_element(&v, Sign::pow(before));
                }
            }
            match i0p_monomial(c) {
                Some(p) => pre.push(mono(p)),
                None => break,
            }
            before += degree_of(c);
        }
        Ok(())
    }

    /// The cylinder homotopy, evaluated at the top stage of each monomial.
    pub fn cylinder_homotopy(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.homotopy_monomial(m)?, c);
        }
        Ok(out.with_grading(e.arity().unwrap_or(1), e.degree().unwrap_or(0) + 1))
    }

    pub fn homotopy_monomial(&self, t: &Monomial) -> Result<Element> {
        let grading = (t.arity(), degree_of(t) + 1);
        let Some(gamma) = max_stage(t) else {
            for l in t.labels() {
                check_cyl(l)?;
            }
            return Ok(Element::zero_graded(grading.0, grading.1));
        };
        if let Some(v) = self.h_memo.get(t) {
            return Ok(v.clone());
        }
        let r = self.h0(gamma, t)?;
        let s = self.perturbation_extension(gamma, &r)?;
        let n = stage_count(t, gamma);
        let mut out = r;
        for (m, c) in s.terms() {
            if stage_count(m, gamma) >= n && max_stage(m) == Some(gamma) {
                return Err(OpError::Filtration(m.to_string()));
            }
            out.add_scaled(&self.homotopy_monomial(m)?, c);
        }
        let out = out.with_grading(grading.0, grading.1);
        if self.h_memo.len() < self.budget {
            self.h_memo.insert(t.clone(), out.clone());
        }
        Ok(out)
    }

    /// The homotopy of the truncation keeping stages below `bound`, by the
    /// literal stage recursion and without memoization. Used to test that
    /// the stages agree.
    pub fn cylinder_homotopy_at(&self, bound: u32, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.homotopy_at(bound, m)?, c);
        }
        Ok(out)
    }

    fn homotopy_at(&self, bound: u32, t: &Monomial) -> Result<Element> {
        if let Some(s) = max_stage(t) {
            if s >= bound {
                return Err(OpError::Alphabet(t.to_string(), format!("above stage {bound}")));
            }
        }
        if bound == 0 {
            return Ok(Element::zero());
        }
        let gamma = bound - 1;
        let lower = |x0: &Monomial| self.homotopy_at(gamma, x0);
        let r = if t.is_identity() { Element::zero() } else { self.h0_with(gamma, t, &lower, false)? };
        let s = r.derivation(-1, &mut |l| {
            let Label::Cell(g) = l else { return Ok(None) };
            if g.stage != gamma {
                return Ok(None);
            }
            match g.marker {
                Marker::Sigma => {
                    let b = self.i1_map(&self.source.boundary(&g.plain())?)?;
                    Ok(Some(-self.cylinder_homotopy_at(gamma, &b)?))
                }
                _ => self.perturb_label(gamma, l),
            }
        })?;
        let mut out = r;
        for (m, c) in s.terms() {
            out.add_scaled(&self.homotopy_at(bound, m)?, c);
        }
        Ok(out)
    }

    /// `sum_n (h0 dI)^n h0` at stage `gamma`, stopping when a term vanishes.
    pub fn homotopy_series(&self, gamma: u32, e: &Element, max_terms: usize) -> Result<Element> {
        let mut acc = Element::zero();
        let mut cur = self.tensor_homotopy(gamma, e)?;
        for _ in 0..max_terms {
            if cur.is_zero() {
                return Ok(acc);
            }
            acc.add_scaled(&cur, &BigInt::one());
            cur = self.tensor_homotopy(gamma, &self.perturbation_extension(gamma, &cur)?)?;
        }
        Err(OpError::Filtration(format!("series did not stop after {max_terms} terms")))
    }
}

/// Splits a monomial whose root is not at stage `gamma` into its maximal
/// lower root factor and the arguments hanging from its leaves.
fn split_lower(t: &Monomial, gamma: u32) -> (Monomial, Vec<Monomial>) {
    let nodes = t.nodes();
    let mut head = Vec::new();
    let mut args = Vec::new();
    let mut p = 0;
    let mut need = 1usize;
    while need > 0 {
        match &nodes[p] {
            Node::Leaf => {
                head.push(Node::Leaf);
                args.push(Monomial::identity());
                need -= 1;
                p += 1;
            }
            Node::Vertex(l) if l.stage() == Some(gamma) => {
                let end = t.subtree_end(p);
                head.push(Node::Leaf);
                args.push(Monomial::from_nodes_unchecked(nodes[p..end].to_vec()));
                need -= 1;
                p = end;
            }
            Node::Vertex(l) => {
                head.push(Node::Vertex(*l));
                need = need - 1 + l.arity();
                p += 1;
            }
        }
    }
    (Monomial::from_nodes_unchecked(head), args)
}

impl Element {
    pub(crate) fn add_signed_element(&mut self, e: &Element, s: Sign) {
        let c = BigInt::from(s.to_i64());
        self.add_scaled(e, &c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::presentations::{ainf, lambda_ainf};

    fn engine(p: crate::presentation::Presentation) -> SdrEngine {
        SdrEngine::new(Arc::new(p))
    }

    fn lab(p: &dyn DgOperad, m: Marker, n: &str) -> Element {
        Element::generator(p.resolve(m, n).unwrap())
    }

    #[test]
    fn h_of_i1_is_sigma() {
        let e = engine(ainf());
        let p = e.source().clone();
        for n in 2..6 {
            let name = format!("mu_{n}");
            let h = e.cylinder_homotopy(&lab(&*p, Marker::I1, &name)).unwrap();
            assert_eq!(h, lab(&*p, Marker::Sigma, &name));
        }
        assert!(e.cylinder_homotopy(&Element::identity()).unwrap().is_zero());
    }

    #[test]
    fn bottom_sigma_vanishes() {
        let e = engine(ainf());
        let p = e.source().clone();
        let t = lab(&*p, Marker::Sigma, "mu_2").compose_at(1, &lab(&*p, Marker::I1, "mu_3")).unwrap();
        assert!(e.tensor_homotopy(2, &t).unwrap().is_zero());
    }

    #[test]
    fn two_factor_sign() {
        // i0(x) o_1 i1(y) at one stage; (-1)^{|x|} i0(x) o_1 sigma(y)
        for (name, sign) in [("mu_2", 1), ("mu_3", -1)] {
            let e = engine(ainf());
            let p = e.source().clone();
            let x = lab(&*p, Marker::I0, name);
            let y1 = lab(&*p, Marker::I1, name);
            let ys = lab(&*p, Marker::Sigma, name);
            let gamma = p.resolve(Marker::Plain, name).unwrap().stage().unwrap();
            let t = x.compose_at(1, &y1).unwrap();
            let h = e.tensor_homotopy(gamma, &t).unwrap();
            assert_eq!(h, x.compose_at(1, &ys).unwrap().scale_i(sign));
        }
    }

    #[test]
    fn lambda_mu3_correction() {
        let e = engine(lambda_ainf());
        let p = e.source().clone();
        let mu3 = p.resolve(Marker::Plain, "mu_3").unwrap();
        let h = e.sigma_correction(mu3.cell().unwrap()).unwrap();
        let s2 = lab(&*p, Marker::Sigma, "mu_2");
        let i12 = lab(&*p, Marker::I1, "mu_2");
        let i02 = lab(&*p, Marker::I0, "mu_2");
        let expect = s2.brace(&[i12]).unwrap() - i02.brace(std::slice::from_ref(&s2)).unwrap();
        assert_eq!(h, expect);
    }

    #[test]
    fn structure_maps() {
        let e = engine(ainf());
        let p = e.source().clone();
        let t = lab(&*p, Marker::I0, "mu_3").compose_at(2, &lab(&*p, Marker::Sigma, "mu_2")).unwrap();
        assert!(e.p_map(&t).unwrap().is_zero());
        let t = lab(&*p, Marker::I0, "mu_3").compose_at(2, &lab(&*p, Marker::I1, "mu_2")).unwrap();
        let plain = lab(&*p, Marker::Plain, "mu_3").compose_at(2, &lab(&*p, Marker::Plain, "mu_2")).unwrap();
        assert_eq!(e.p_map(&t).unwrap(), plain);
        assert!(e.p_map(&plain).is_err());
    }

    #[test]
    fn d_sigma_mu2() {
        let e = engine(ainf());
        let p = e.source().clone();
        let g = *p.resolve(Marker::Sigma, "mu_2").unwrap().cell().unwrap();
        let d = e.cylinder_differential(&g).unwrap();
        assert_eq!(d, lab(&*p, Marker::I0, "mu_2") - lab(&*p, Marker::I1, "mu_2"));
    }
}
