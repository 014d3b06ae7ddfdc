//! Vertex labels: interned names, cylinder markers, generators and base basis
//! elements.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use crate::tree::Arity;

/// Interned name. Equality and hashing go through the pointer, ordering
/// through the text, so both agree.
#[derive(Clone, Copy)]
pub struct Symbol(&'static str);

impl Symbol {
    pub fn new(s: &str) -> Symbol {
        static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
        let mut t = TABLE.get_or_init(Default::default).lock().unwrap();
        if let Some(&k) = t.get(s) {
            return Symbol(k);
        }
        let k: &'static str = Box::leak(s.to_owned().into_boxed_str());
        t.insert(k);
        Symbol(k)
    }

    pub fn as_str(self) -> &'static str {
        self.0
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Symbol {}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state)
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Cylinder marker. `Bot`..`Top` are the five families of the pasted double
/// cylinder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    Plain,
    I0,
    I1,
    Sigma,
    Bot,
    Sigma0,
    Mid,
    Sigma1,
    Top,
}

impl Marker {
    pub const ALL: [Marker; 9] = [
        Marker::Plain,
        Marker::I0,
        Marker::I1,
        Marker::Sigma,
        Marker::Bot,
        Marker::Sigma0,
        Marker::Mid,
        Marker::Sigma1,
        Marker::Top,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Marker::Plain => "plain",
            Marker::I0 => "i0",
            Marker::I1 => "i1",
            Marker::Sigma => "sigma",
            Marker::Bot => "bot",
            Marker::Sigma0 => "s0",
            Marker::Mid => "mid",
            Marker::Sigma1 => "s1",
            Marker::Top => "top",
        }
    }

    pub fn parse(s: &str) -> Option<Marker> {
        Marker::ALL.into_iter().find(|m| m.name() == s)
    }

    pub fn shift(self) -> i64 {
        match self {
            Marker::Sigma | Marker::Sigma0 | Marker::Sigma1 => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A cell generator, possibly decorated by a cylinder marker. `degree` is the
/// degree of the undecorated generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: Symbol,
    pub arity: usize,
    pub degree: i64,
    pub stage: u32,
    pub marker: Marker,
}

impl Generator {
    pub fn new(name: &str, arity: usize, degree: i64, stage: u32) -> Generator {
        Generator { name: Symbol::new(name), arity, degree, stage, marker: Marker::Plain }
    }

    pub fn with_marker(self, marker: Marker) -> Generator {
        Generator { marker, ..self }
    }

    pub fn plain(self) -> Generator {
        self.with_marker(Marker::Plain)
    }

    pub fn total_degree(&self) -> i64 {
        self.degree + self.marker.shift()
    }
}

/// Basis element `m_n` of the base operad. In the suspended base it has
/// degree 1 - n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseLabel {
    pub arity: usize,
    pub suspended: bool,
}

impl BaseLabel {
    pub fn degree(&self) -> i64 {
        if self.suspended {
            1 - self.arity as i64
        } else {
            0
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Base(BaseLabel),
    Cell(Generator),
}

impl Label {
    pub fn degree(&self) -> i64 {
        match self {
            Label::Base(b) => b.degree(),
            Label::Cell(g) => g.total_degree(),
        }
    }

    pub fn stage(&self) -> Option<u32> {
        match self {
            Label::Base(_) => None,
            Label::Cell(g) => Some(g.stage),
        }
    }

    pub fn cell(&self) -> Option<&Generator> {
        match self {
            Label::Cell(g) => Some(g),
            Label::Base(_) => None,
        }
    }

    pub fn marker(&self) -> Marker {
        match self {
            Label::Base(_) => Marker::Plain,
            Label::Cell(g) => g.marker,
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(self, Label::Base(_))
    }

    /// Name without marker: `m_n` for base labels.
    pub fn name(&self) -> String {
        match self {
            Label::Base(b) => format!("m_{}", b.arity),
            Label::Cell(g) => g.name.to_string(),
        }
    }

    /// `<marker>:<name>/<arity>`, with `base` as marker for base labels.
    pub fn key(&self) -> String {
        match self {
            Label::Base(b) => format!("base:m_{}/{}", b.arity, b.arity),
            Label::Cell(g) => format!("{}:{}/{}", g.marker, g.name, g.arity),
        }
    }
}

impl Arity for Label {
    fn arity(&self) -> usize {
        match self {
            Label::Base(b) => b.arity,
            Label::Cell(g) => g.arity,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Base(b) => write!(f, "m_{}", b.arity),
            Label::Cell(g) if g.marker == Marker::Plain => write!(f, "{}", g.name),
            Label::Cell(g) => write!(f, "{}:{}", g.marker, g.name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning() {
        let a = Symbol::new("mu_3");
        let b = Symbol::new(&String::from("mu_3"));
        assert_eq!(a, b);
        assert!(Symbol::new("mu_10") < Symbol::new("mu_2"));
    }

    #[test]
    fn sigma_raises_degree() {
        let g = Generator::new("mu_4", 4, 2, 2);
        assert_eq!(g.with_marker(Marker::Sigma).total_degree(), 3);
        assert_eq!(g.with_marker(Marker::I1).total_degree(), 2);
        assert_eq!(Label::Cell(g.with_marker(Marker::Sigma)).key(), "sigma:mu_4/4");
    }

    #[test]
    fn base_degrees() {
        assert_eq!(BaseLabel { arity: 3, suspended: true }.degree(), -2);
        assert_eq!(BaseLabel { arity: 0, suspended: true }.degree(), 1);
        assert_eq!(BaseLabel { arity: 3, suspended: false }.degree(), 0);
    }

    #[test]
    fn markers_round_trip() {
        for m in Marker::ALL {
            assert_eq!(Marker::parse(m.name()), Some(m));
        }
    }
}
