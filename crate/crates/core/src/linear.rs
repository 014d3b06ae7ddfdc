//! Closed cylinder formulas for linear operads, the pasted double cylinder
//! and the doubling and reversing maps.

use std::sync::Arc;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::koszul::Sign;
use crate::label::{Generator, Label, Marker};
use crate::presentation::{cell_count, linear_parts, DgOperad};
use crate::terms::{Element, Monomial};
use crate::tree::Node;

pub const DOUBLE_MARKERS: [Marker; 5] = [Marker::Bot, Marker::Sigma0, Marker::Mid, Marker::Sigma1, Marker::Top];

fn not_linear(p: &dyn DgOperad, g: &Generator) -> OpError {
    OpError::NotLinear(p.name(), p.label_name(&Label::Cell(g.plain())))
}

/// `d1(x)`, failing when the boundary of `x` has a term with two cells.
pub fn linear_part(p: &dyn DgOperad, g: &Generator) -> Result<Element> {
    let lp = linear_parts(p, &g.plain())?;
    if !lp.rest.is_zero() {
        return Err(not_linear(p, g));
    }
    Ok(lp.d1)
}

fn require_linear(p: &dyn DgOperad, e: &Element) -> Result<()> {
    for m in e.monomials() {
        for l in m.labels() {
            if let Label::Cell(g) = l {
                linear_part(p, g)?;
            }
        }
    }
    Ok(())
}

/// Moves `sigma` onto the single cell vertex of each monomial, passing the
/// base labels before it.
pub fn sigma_linear(e: &Element, target: Marker) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        if cell_count(m) != 1 {
            return Err(OpError::NotLinear(m.to_string(), "expected one cell vertex".into()));
        }
        let mut before = 0i64;
        let mut seen = false;
        let mut v = Vec::with_capacity(m.nodes().len());
        for n in m.nodes() {
            v.push(match n {
                Node::Vertex(Label::Cell(g)) => {
                    if g.marker != Marker::Plain {
                        return Err(OpError::Alphabet(n.label().unwrap().to_string(), "expected a plain cell".into()));
                    }
                    seen = true;
                    Node::Vertex(Label::Cell(g.with_marker(target)))
                }
                Node::Vertex(l) => {
                    if !seen {
                        before += l.degree();
                    }
                    n.clone()
                }
                Node::Leaf => Node::Leaf,
            });
        }
        out.add_signed(Monomial::from_nodes_unchecked(v), Sign::pow(before), c);
    }
    if let Some((a, d)) = e.grading() {
        out = out.with_grading(a, d + 1);
    }
    Ok(out)
}

fn marked(e: &Element, marker: Marker) -> Element {
    e.relabel(&|l| match l {
        Label::Base(_) => Some((Sign::PLUS, *l)),
        Label::Cell(g) => Some((Sign::PLUS, Label::Cell(g.with_marker(marker)))),
    })
}

/// `d(sigma x) = i0 x - i1 x - sigma d1(x)`.
pub fn linear_sigma_differential(p: &dyn DgOperad, g: &Generator) -> Result<Element> {
    let x = g.plain();
    let d1 = linear_part(p, &x)?;
    let i0 = Element::generator(Label::Cell(x.with_marker(Marker::I0)));
    let i1 = Element::generator(Label::Cell(x.with_marker(Marker::I1)));
    let s = sigma_linear(&d1, Marker::Sigma)?;
    Ok((&(&i0 - &i1) - &s).with_grading(x.arity, x.degree))
}

/// Cylinder differential of a generator by the linear formulas.
pub fn linear_cylinder_differential(p: &dyn DgOperad, g: &Generator) -> Result<Element> {
    match g.marker {
        Marker::I0 | Marker::I1 => {
            require_linear(p, &Element::generator(Label::Cell(*g)))?;
            Ok(marked(&p.boundary(&g.plain())?, g.marker).with_grading(g.arity, g.degree - 1))
        }
        Marker::Sigma => linear_sigma_differential(p, g),
        _ => Err(OpError::Alphabet(Label::Cell(*g).to_string(), "not a cylinder label".into())),
    }
}

/// The two cylinders glued along the top of the first and the bottom of the
/// second.
pub struct DoubleCylinder {
    source: Arc<dyn DgOperad>,
}

impl DoubleCylinder {
    pub fn new(source: Arc<dyn DgOperad>) -> DoubleCylinder {
        DoubleCylinder { source }
    }

    pub fn source(&self) -> &Arc<dyn DgOperad> {
        &self.source
    }
}

fn copy_map(e: &Element, ends: [Marker; 3]) -> Result<Element> {
    let mut bad = None;
    let out = e.relabel(&|l| match l {
        Label::Base(_) => Some((Sign::PLUS, *l)),
        Label::Cell(g) => {
            let m = match g.marker {
                Marker::I0 => ends[0],
                Marker::Sigma => ends[1],
                Marker::I1 => ends[2],
                _ => Marker::Plain,
            };
            Some((Sign::PLUS, Label::Cell(g.with_marker(m))))
        }
    });
    for m in e.monomials() {
        if let Some(l) = m.labels().find(|l| !l.is_base() && !matches!(l.marker(), Marker::I0 | Marker::I1 | Marker::Sigma)) {
            bad = Some(l.to_string());
        }
    }
    match bad {
        Some(l) => Err(OpError::Alphabet(l, "not a cylinder label".into())),
        None => Ok(out),
    }
}

/// Inclusion of the lower cylinder.
pub fn j0(e: &Element) -> Result<Element> {
    copy_map(e, [Marker::Bot, Marker::Sigma0, Marker::Mid])
}

/// Inclusion of the upper cylinder.
pub fn j1(e: &Element) -> Result<Element> {
    copy_map(e, [Marker::Mid, Marker::Sigma1, Marker::Top])
}

impl DgOperad for DoubleCylinder {
    fn name(&self) -> String {
        format!("double:{}", self.source.name())
    }

    fn base(&self) -> BaseOperad {
        self.source.base()
    }

    fn boundary(&self, g: &Generator) -> Result<Element> {
        let x = g.plain();
        let out = match g.marker {
            Marker::Bot | Marker::Mid | Marker::Top => {
                require_linear(&*self.source, &Element::generator(Label::Cell(x)))?;
                marked(&self.source.boundary(&x)?, g.marker)
            }
            Marker::Sigma0 => j0(&linear_sigma_differential(&*self.source, &x)?)?,
            Marker::Sigma1 => j1(&linear_sigma_differential(&*self.source, &x)?)?,
            _ => return Err(OpError::Alphabet(Label::Cell(*g).to_string(), "not a double cylinder label".into())),
        };
        Ok(out.with_grading(g.arity, g.total_degree() - 1))
    }

    fn generators(&self, max_arity: usize) -> Vec<Generator> {
        let mut v = Vec::new();
        for g in self.source.generators(max_arity) {
            for m in DOUBLE_MARKERS {
                v.push(g.with_marker(m));
            }
        }
        v
    }

    fn resolve(&self, marker: Marker, name: &str) -> Option<Label> {
        match (self.source.resolve(Marker::Plain, name)?, marker) {
            (l @ Label::Base(_), Marker::Plain) => Some(l),
            (Label::Cell(g), m) if DOUBLE_MARKERS.contains(&m) => Some(Label::Cell(g.with_marker(m))),
            _ => None,
        }
    }

    fn label_name(&self, l: &Label) -> String {
        match l {
            Label::Base(_) => self.source.label_name(l),
            Label::Cell(g) => format!("{}:{}", g.marker, self.source.label_name(&Label::Cell(g.plain()))),
        }
    }
}

fn cyl_only(e: &Element) -> Result<()> {
    for m in e.monomials() {
        for l in m.labels() {
            if !l.is_base() && !matches!(l.marker(), Marker::I0 | Marker::I1 | Marker::Sigma) {
                return Err(OpError::Alphabet(l.to_string(), "not a cylinder label".into()));
            }
        }
    }
    Ok(())
}

/// The doubling map: ends go to the outer ends, `sigma` to the sum of both
/// sigmas.
pub fn doubling(p: &dyn DgOperad, e: &Element) -> Result<Element> {
    cyl_only(e)?;
    require_linear(p, e)?;
    e.operad_map(&mut |l| {
        Ok(match l {
            Label::Base(_) => Element::generator(*l),
            Label::Cell(g) => match g.marker {
                Marker::I0 => Element::generator(Label::Cell(g.with_marker(Marker::Bot))),
                Marker::I1 => Element::generator(Label::Cell(g.with_marker(Marker::Top))),
                _ => {
                    Element::generator(Label::Cell(g.with_marker(Marker::Sigma0)))
                        + Element::generator(Label::Cell(g.with_marker(Marker::Sigma1)))
                }
            },
        })
    })
}

/// The reversing map: swaps the ends and negates `sigma`.
pub fn reversing(p: &dyn DgOperad, e: &Element) -> Result<Element> {
    cyl_only(e)?;
    require_linear(p, e)?;
    Ok(e.relabel(&|l| match l {
        Label::Base(_) => Some((Sign::PLUS, *l)),
        Label::Cell(g) => Some(match g.marker {
            Marker::I0 => (Sign::PLUS, Label::Cell(g.with_marker(Marker::I1))),
            Marker::I1 => (Sign::PLUS, Label::Cell(g.with_marker(Marker::I0))),
            _ => (Sign::MINUS, *l),
        }),
    }))
}

/// Projection of the double cylinder onto the source.
pub fn glued_projection(e: &Element) -> Result<Element> {
    for m in e.monomials() {
        for l in m.labels() {
            if !l.is_base() && !DOUBLE_MARKERS.contains(&l.marker()) {
                return Err(OpError::Alphabet(l.to_string(), "not a double cylinder label".into()));
            }
        }
    }
    Ok(e.relabel(&|l| match l {
        Label::Base(_) => Some((Sign::PLUS, *l)),
        Label::Cell(g) => match g.marker {
            Marker::Sigma0 | Marker::Sigma1 => None,
            _ => Some((Sign::PLUS, Label::Cell(g.plain()))),
        },
    }))
}
