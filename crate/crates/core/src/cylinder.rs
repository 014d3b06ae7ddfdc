//! The cylinder of a pseudo-cellular operad as a DG-operad in its own right.

use std::sync::Arc;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::label::{Generator, Label, Marker};
use crate::presentation::DgOperad;
use crate::sdr::SdrEngine;
use crate::terms::{Element, Monomial};
use crate::tree::Node;

pub const CYLINDER_MARKERS: [Marker; 3] = [Marker::I0, Marker::I1, Marker::Sigma];

pub struct Cylinder {
    engine: Arc<SdrEngine>,
}

impl Cylinder {
    pub fn new(source: Arc<dyn DgOperad>) -> Cylinder {
        Cylinder { engine: Arc::new(SdrEngine::new(source)) }
    }

    pub fn from_engine(engine: Arc<SdrEngine>) -> Cylinder {
        Cylinder { engine }
    }

    pub fn engine(&self) -> &Arc<SdrEngine> {
        &self.engine
    }

    pub fn source(&self) -> &Arc<dyn DgOperad> {
        self.engine.source()
    }

    pub fn homotopy(&self, e: &Element) -> Result<Element> {
        self.engine.cylinder_homotopy(e)
    }

    pub fn differential(&self, e: &Element) -> Result<Element> {
        self.engine.differential(e)
    }
}

impl DgOperad for Cylinder {
    fn name(&self) -> String {
        format!("cyl:{}", self.source().name())
    }

    fn base(&self) -> BaseOperad {
        self.source().base()
    }

    fn boundary(&self, g: &Generator) -> Result<Element> {
        self.engine.cylinder_differential(g)
    }

    fn generators(&self, max_arity: usize) -> Vec<Generator> {
        let mut v = Vec::new();
        for g in self.source().generators(max_arity) {
            for m in CYLINDER_MARKERS {
                v.push(g.with_marker(m));
            }
        }
        v
    }

    fn resolve(&self, marker: Marker, name: &str) -> Option<Label> {
        let l = self.source().resolve(Marker::Plain, name)?;
        match (l, marker) {
            (Label::Base(_), Marker::Plain) => Some(l),
            (Label::Cell(g), m) if CYLINDER_MARKERS.contains(&m) => Some(Label::Cell(g.with_marker(m))),
            _ => None,
        }
    }

    fn label_name(&self, l: &Label) -> String {
        match l {
            Label::Base(_) => self.source().label_name(l),
            Label::Cell(g) => format!("{}:{}", g.marker, self.source().label_name(&Label::Cell(g.plain()))),
        }
    }
}

/// Every label carries a cylinder marker.
pub fn is_standard(m: &Monomial) -> bool {
    m.labels().all(|l| CYLINDER_MARKERS.contains(&l.marker()) && !l.is_base())
}

/// Some inner edge has an `i0` label below an `i1` label.
pub fn has_forbidden_edge(m: &Monomial) -> bool {
    let nodes = m.nodes();
    (0..nodes.len()).any(|p| match &nodes[p] {
        Node::Vertex(l) if l.marker() == Marker::I0 => m
            .child_positions(p)
            .into_iter()
            .any(|c| nodes[c].label().is_some_and(|k| k.marker() == Marker::I1)),
        _ => false,
    })
}

/// Marker of the root label; `None` for the identity.
pub fn bottom_label_kind(m: &Monomial) -> Option<Marker> {
    m.root().map(Label::marker)
}

/// A cylinder presented with plain generators, so that it can itself be fed
/// to the engine. Within a source stage the ends come first and the sigma
/// cells next.
pub struct Flattened {
    inner: Arc<dyn DgOperad>,
}

impl Flattened {
    pub fn new(inner: Arc<dyn DgOperad>) -> Flattened {
        Flattened { inner }
    }

    fn flatten_gen(g: &Generator) -> Generator {
        let name = format!("{}.{}", g.marker, g.name);
        let stage = 2 * g.stage + u32::from(g.marker.shift() != 0);
        Generator::new(&name, g.arity, g.total_degree(), stage)
    }

    fn unflatten_gen(&self, g: &Generator) -> Result<Generator> {
        let (m, n) = g
            .name
            .as_str()
            .split_once('.')
            .ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
        let m = Marker::parse(m).ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
        match self.inner.resolve(m, n) {
            Some(Label::Cell(h)) => Ok(h),
            _ => Err(OpError::UnknownGenerator(g.name.to_string())),
        }
    }

    pub fn flatten(e: &Element) -> Element {
        e.relabel(&|l| match l {
            Label::Base(_) => Some((crate::Sign::PLUS, *l)),
            Label::Cell(g) => Some((crate::Sign::PLUS, Label::Cell(Self::flatten_gen(g)))),
        })
    }
}

impl DgOperad for Flattened {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn base(&self) -> BaseOperad {
        self.inner.base()
    }

    fn boundary(&self, g: &Generator) -> Result<Element> {
        if g.marker != Marker::Plain {
            return Err(OpError::Alphabet(Label::Cell(*g).to_string(), "flattened cells are plain".into()));
        }
        let h = self.unflatten_gen(g)?;
        Ok(Self::flatten(&self.inner.boundary(&h)?))
    }

    fn generators(&self, max_arity: usize) -> Vec<Generator> {
        let mut v: Vec<Generator> = self.inner.generators(max_arity).iter().map(Self::flatten_gen).collect();
        v.sort_by_key(|g| (g.stage, g.arity, g.name));
        v
    }

    fn resolve(&self, marker: Marker, name: &str) -> Option<Label> {
        if let Some((m, n)) = name.split_once('.') {
            let l = self.inner.resolve(Marker::parse(m)?, n)?;
            let g = Self::flatten_gen(l.cell()?);
            return Some(Label::Cell(g.with_marker(marker)));
        }
        match self.inner.resolve(Marker::Plain, name)? {
            l @ Label::Base(_) if marker == Marker::Plain => Some(l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::presentations::{ainf, lambda_ainf};
    use crate::presentation::check_d_squared;

    fn lab(p: &dyn DgOperad, m: Marker, n: &str) -> Element {
        Element::generator(p.resolve(m, n).unwrap())
    }

    fn mono(e: &Element) -> Monomial {
        e.monomials().next().unwrap().clone()
    }

    #[test]
    fn d_sigma_mu3_lambda() {
        let c = Cylinder::new(Arc::new(lambda_ainf()));
        let g = *c.resolve(Marker::Sigma, "mu_3").unwrap().cell().unwrap();
        let d = c.boundary(&g).unwrap();
        let s2 = lab(&c, Marker::Sigma, "mu_2");
        let i12 = lab(&c, Marker::I1, "mu_2");
        let i02 = lab(&c, Marker::I0, "mu_2");
        let expect = lab(&c, Marker::I0, "mu_3") - lab(&c, Marker::I1, "mu_3") - s2.brace(&[i12]).unwrap()
            + i02.brace(&[s2]).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn d_sigma_mu3_ainf() {
        let c = Cylinder::new(Arc::new(ainf()));
        let g = *c.resolve(Marker::Sigma, "mu_3").unwrap().cell().unwrap();
        let d = c.boundary(&g).unwrap();
        let s2 = lab(&c, Marker::Sigma, "mu_2");
        let i12 = lab(&c, Marker::I1, "mu_2");
        let i02 = lab(&c, Marker::I0, "mu_2");
        let expect = lab(&c, Marker::I0, "mu_3") - lab(&c, Marker::I1, "mu_3")
            + s2.compose_at(1, &i12).unwrap()
            - s2.compose_at(2, &i12).unwrap()
            + i02.compose_at(1, &s2).unwrap()
            - i02.compose_at(2, &s2).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn d_i1_mu3() {
        let c = Cylinder::new(Arc::new(ainf()));
        let g = *c.resolve(Marker::I1, "mu_3").unwrap().cell().unwrap();
        let i12 = lab(&c, Marker::I1, "mu_2");
        let expect = i12.compose_at(2, &i12).unwrap() - i12.compose_at(1, &i12).unwrap();
        assert_eq!(c.boundary(&g).unwrap(), expect);
    }

    #[test]
    fn cylinder_d_squared() {
        for p in [ainf(), lambda_ainf()] {
            let c = Cylinder::new(Arc::new(p));
            let r = check_d_squared(&c, 5, None);
            assert!(r.passed(), "{}", r.line());
        }
    }

    #[test]
    fn predicates() {
        let c = Cylinder::new(Arc::new(ainf()));
        let i0 = lab(&c, Marker::I0, "mu_2");
        let i1 = lab(&c, Marker::I1, "mu_2");
        let s = lab(&c, Marker::Sigma, "mu_2");
        let t = mono(&i0.compose_at(1, &i1).unwrap());
        assert!(has_forbidden_edge(&t) && is_standard(&t));
        let t = mono(&s.compose_at(2, &i1).unwrap());
        assert!(!has_forbidden_edge(&t));
        assert_eq!(bottom_label_kind(&t), Some(Marker::Sigma));
        let t = mono(&i0.compose_at(1, &i0).unwrap());
        assert!(!has_forbidden_edge(&t));
        assert_eq!(bottom_label_kind(&t), Some(Marker::I0));
        assert_eq!(bottom_label_kind(&Monomial::identity()), None);
    }

    #[test]
    fn double_cylinder_of_ainf() {
        let c: Arc<dyn DgOperad> = Arc::new(Cylinder::new(Arc::new(ainf())));
        let f = Flattened::new(c);
        let cc = Cylinder::new(Arc::new(f));
        let r = check_d_squared(&cc, 3, None);
        assert!(r.passed(), "{}", r.line());
        assert!(cc.resolve(Marker::Sigma, "sigma.mu_3").is_some());
    }
}
