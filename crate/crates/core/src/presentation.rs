//! Pseudo-cellular DG-operads: staged generators with boundaries over earlier
//! stages, the derivation differential, and the consistency checks.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::label::{Generator, Label, Marker};
use crate::terms::Element;

/// Anything with a cell alphabet and boundaries: presentations, their
/// suspensions and cylinders.
pub trait DgOperad: Send + Sync {
    fn name(&self) -> String;
    fn base(&self) -> BaseOperad;
    /// Boundary of a cell generator, an element over earlier stages.
    fn boundary(&self, g: &Generator) -> Result<Element>;
    /// Cell generators of arity at most `max_arity`, in a fixed order.
    fn generators(&self, max_arity: usize) -> Vec<Generator>;
    /// Looks up `name` carrying `marker`; base names resolve with `Plain`.
    fn resolve(&self, marker: Marker, name: &str) -> Option<Label>;
    /// Name used when printing a label.
    fn label_name(&self, l: &Label) -> String {
        l.to_string()
    }
}

/// The derivation extending the boundary of each cell and vanishing on base
/// labels.
pub fn differential(p: &dyn DgOperad, e: &Element) -> Result<Element> {
    e.derivation(-1, &mut |l| match l {
        Label::Base(_) => Ok(None),
        Label::Cell(g) => p.boundary(g).map(Some),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub what: String,
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failure: Option<Failure>,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report { name: name.into(), checks: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records a check; keeps only the first failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String, residue: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure { what: what(), residue: residue() });
        }
    }

    pub fn fail(&mut self, what: String, residue: String) {
        self.check(false, || what, || residue);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({} checks)", self.name, self.checks),
            Some(f) => format!("FAIL {} at {}: {}", self.name, f.what, f.residue),
        }
    }
}

/// d(d(x)) = 0 for every generator up to the bounds.
pub fn check_d_squared(p: &dyn DgOperad, max_arity: usize, max_stage: Option<u32>) -> Report {
    let mut r = Report::new(&format!("d2 {}", p.name()));
    for g in p.generators(max_arity) {
        if max_stage.is_some_and(|s| g.stage > s) {
            continue;
        }
        let res = p.boundary(&g).and_then(|b| differential(p, &b));
        match res {
            Ok(dd) => r.check(
                dd.is_zero(),
                || p.label_name(&Label::Cell(g)),
                || dd.to_text_with(&|l| p.label_name(l)),
            ),
            Err(e) => r.fail(p.label_name(&Label::Cell(g)), e.to_string()),
        }
    }
    r
}

/// Constant part, linear part and remainder of a boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearParts {
    pub d0: Element,
    pub d1: Element,
    pub rest: Element,
}

pub fn cell_count(m: &crate::terms::Monomial) -> usize {
    m.labels().filter(|l| !l.is_base()).count()
}

pub fn linear_parts(p: &dyn DgOperad, g: &Generator) -> Result<LinearParts> {
    let b = p.boundary(g)?;
    Ok(LinearParts {
        d0: b.filter(|m| cell_count(m) == 0),
        d1: b.filter(|m| cell_count(m) == 1),
        rest: b.filter(|m| cell_count(m) > 1),
    })
}

/// Linear up to the arity bound: every boundary has at most one cell vertex
/// per monomial.
pub fn is_linear(p: &dyn DgOperad, max_arity: usize) -> Result<bool> {
    for g in p.generators(max_arity) {
        if !linear_parts(p, &g)?.rest.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_strictly_linear(p: &dyn DgOperad, max_arity: usize) -> Result<bool> {
    for g in p.generators(max_arity) {
        let lp = linear_parts(p, &g)?;
        if !lp.rest.is_zero() || !lp.d0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

type Enumerate = Box<dyn Fn(usize) -> Vec<Generator> + Send + Sync>;
type Lookup = Box<dyn Fn(&str) -> Option<Generator> + Send + Sync>;
type Boundary = Box<dyn Fn(&Generator, &Presentation) -> Result<Element> + Send + Sync>;

/// A generator schema: an index rule producing generators and boundaries.
pub struct Family {
    pub enumerate: Enumerate,
    pub lookup: Lookup,
    pub boundary: Boundary,
}

impl Family {
    pub fn new(
        enumerate: impl Fn(usize) -> Vec<Generator> + Send + Sync + 'static,
        lookup: impl Fn(&str) -> Option<Generator> + Send + Sync + 'static,
        boundary: impl Fn(&Generator, &Presentation) -> Result<Element> + Send + Sync + 'static,
    ) -> Family {
        Family { enumerate: Box::new(enumerate), lookup: Box::new(lookup), boundary: Box::new(boundary) }
    }

    /// Finite list of generators whose boundaries are produced on demand.
    pub fn finite(
        gens: Vec<Generator>,
        boundary: impl Fn(&Generator, &Presentation) -> Result<Element> + Send + Sync + 'static,
    ) -> Family {
        let g2 = gens.clone();
        Family::new(
            move |a| gens.iter().filter(|g| g.arity <= a).copied().collect(),
            move |n| g2.iter().find(|g| g.name.as_str() == n).copied(),
            boundary,
        )
    }
}

/// Presentation built from generator schemas over a base operad.
pub struct Presentation {
    name: String,
    base: BaseOperad,
    families: Vec<Family>,
    aliases: Vec<(String, usize)>,
    cache: Mutex<HashMap<Generator, Element>>,
}

impl Presentation {
    pub fn new(name: &str, base: BaseOperad) -> Presentation {
        Presentation {
            name: name.into(),
            base,
            families: Vec::new(),
            aliases: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn family(mut self, f: Family) -> Presentation {
        self.families.push(f);
        self
    }

    /// Extra printable name for the base element `m_n`.
    pub fn alias(mut self, name: &str, n: usize) -> Presentation {
        self.aliases.push((name.into(), n));
        self
    }

    pub fn base_label(&self, n: usize) -> Result<Label> {
        self.base
            .label(n)
            .ok_or_else(|| OpError::Alphabet(format!("m_{n}"), format!("not in the {} base", self.base)))
    }

    /// Generator by name; panics if absent. For building boundaries.
    pub fn gen(&self, name: &str) -> Generator {
        self.lookup(name).unwrap_or_else(|| panic!("no generator {name} in {}", self.name))
    }

    pub fn lookup(&self, name: &str) -> Option<Generator> {
        self.families.iter().find_map(|f| (f.lookup)(name))
    }

    pub fn el(&self, name: &str) -> Element {
        Element::generator(self.resolve(Marker::Plain, name).unwrap_or_else(|| panic!("no label {name}")))
    }
}

impl DgOperad for Presentation {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn base(&self) -> BaseOperad {
        self.base
    }

    fn boundary(&self, g: &Generator) -> Result<Element> {
        if g.marker != Marker::Plain {
            return Err(OpError::Alphabet(Label::Cell(*g).to_string(), format!("{} has no markers", self.name)));
        }
        if let Some(b) = self.cache.lock().unwrap().get(g) {
            return Ok(b.clone());
        }
        let fam = self
            .families
            .iter()
            .find(|f| (f.lookup)(g.name.as_str()) == Some(*g))
            .ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
        let b = (fam.boundary)(g, self)?.with_grading(g.arity, g.degree - 1);
        if let Some((a, d)) = b.grading() {
            if a != g.arity || d != g.degree - 1 {
                return Err(OpError::GradingMismatch(a, d, g.arity, g.degree - 1));
            }
        }
        for m in b.monomials() {
            for l in m.labels() {
                if let Label::Cell(h) = l {
                    if h.stage >= g.stage {
                        return Err(OpError::Alphabet(
                            l.to_string(),
                            format!("boundary of {} must use earlier stages", g.name),
                        ));
                    }
                }
            }
        }
        self.cache.lock().unwrap().insert(*g, b.clone());
        Ok(b)
    }

    fn generators(&self, max_arity: usize) -> Vec<Generator> {
        let mut v: Vec<Generator> = self.families.iter().flat_map(|f| (f.enumerate)(max_arity)).collect();
        v.sort_by_key(|g| (g.stage, g.arity, g.name));
        v
    }

    fn resolve(&self, marker: Marker, name: &str) -> Option<Label> {
        if marker == Marker::Plain {
            if let Some((_, n)) = self.aliases.iter().find(|(a, _)| a == name) {
                return self.base.label(*n);
            }
            if let Some(n) = name.strip_prefix("m_").and_then(|k| k.parse::<usize>().ok()) {
                if n != 1 {
                    if let Some(l) = self.base.label(n) {
                        return Some(l);
                    }
                }
            }
        }
        self.lookup(name).map(|g| Label::Cell(g.with_marker(marker)))
    }

    fn label_name(&self, l: &Label) -> String {
        match l {
            Label::Base(b) => match self.aliases.iter().find(|(_, n)| *n == b.arity) {
                Some((a, _)) => a.clone(),
                None => l.to_string(),
            },
            _ => l.to_string(),
        }
    }
}

/// Sum of `coeff * element` pairs.
pub fn combine(parts: impl IntoIterator<Item = (i64, Element)>) -> Element {
    let mut out = Element::zero();
    for (c, e) in parts {
        out.add_scaled(&e, &BigInt::from(c));
    }
    out
}

/// `a o_i b` on generators, panicking on slot errors.
pub fn comp(a: &Element, i: usize, b: &Element) -> Element {
    a.compose_at(i, b).expect("slot in range")
}
