//! LaTeX export: small monomials as labelled tikz trees, larger ones as
//! left-nested chains of partial compositions.

use crate::label::{Label, Marker};
use crate::presentation::DgOperad;
use crate::terms::{Element, Monomial};
use crate::tree::{Arity, Node};

pub const TREE_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Auto,
    Tree,
    Nested,
}

const GREEK: [&str; 8] = ["mu", "nu", "sigma", "alpha", "beta", "gamma", "delta", "lambda"];

/// `mu_3` to `\mu_{3}`, `nu_2^{1,2}` to `\nu_{2}^{\{1,2\}}`.
pub fn name_tex(name: &str) -> String {
    let (body, sup) = match name.split_once('^') {
        Some((b, s)) => (b, Some(s.trim_start_matches('{').trim_end_matches('}'))),
        None => (name, None),
    };
    let (stem, sub) = match body.split_once('_') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    let mut out = if GREEK.contains(&stem) { format!("\\{stem}") } else { stem.replace('.', "") };
    if let Some(s) = sub {
        out.push_str(&format!("_{{{s}}}"));
    }
    if let Some(s) = sup {
        out.push_str(&format!("^{{\\{{{s}\\}}}}"));
    }
    out
}

pub fn label_tex(p: &dyn DgOperad, l: &Label) -> String {
    let full = p.label_name(l);
    let name = match full.split_once(':') {
        Some((m, n)) if Marker::parse(m).is_some() => n.to_string(),
        _ => full,
    };
    let prefix = match l.marker() {
        Marker::Plain => "",
        Marker::I0 => "i_0",
        Marker::I1 => "i_1",
        Marker::Sigma => "\\sigma",
        Marker::Bot => "j_0i_0",
        Marker::Sigma0 => "j_0\\sigma",
        Marker::Mid => "j_0i_1",
        Marker::Sigma1 => "j_1\\sigma",
        Marker::Top => "j_1i_1",
    };
    format!("{prefix}{}", name_tex(&name))
}

fn tikz(p: &dyn DgOperad, m: &Monomial) -> String {
    fn go(p: &dyn DgOperad, m: &Monomial, pos: &mut usize, out: &mut String) {
        let n = &m.nodes()[*pos];
        *pos += 1;
        match n {
            Node::Leaf => out.push_str("child{}"),
            Node::Vertex(l) => {
                out.push_str(&format!("child{{[fill] circle (2pt) node [right] {{${}$}}", label_tex(p, l)));
                for _ in 0..l.arity() {
                    out.push(' ');
                    go(p, m, pos, out);
                }
                out.push('}');
            }
        }
    }
    let mut body = String::new();
    go(p, m, &mut 0, &mut body);
    format!(
        "\\begin{{array}}{{c}}\\begin{{tikzpicture}}[level distance = 6mm, sibling distance = 5mm]\n\\node [inner sep =0pt] {{}} [grow'=up]\n{body};\n\\end{{tikzpicture}}\\end{{array}}"
    )
}

/// `x_0 \circ_{k_1} c_1 \circ_{k_2} c_2 ..` read from the left, slots shifted
/// by the arities already grafted. Agrees with the stored orientation.
fn nested(p: &dyn DgOperad, m: &Monomial, pos: usize) -> String {
    let Node::Vertex(l) = &m.nodes()[pos] else {
        return "\\mathrm{id}".into();
    };
    let mut out = label_tex(p, l);
    let mut slot = 1;
    for c in m.child_positions(pos) {
        let sub = m.subtree(c);
        if sub.is_identity() {
            slot += 1;
            continue;
        }
        let inner = nested(p, m, c);
        if sub.vertex_count() > 1 {
            out = format!("{out}\\circ_{{{slot}}}({inner})");
        } else {
            out = format!("{out}\\circ_{{{slot}}}{inner}");
        }
        slot += sub.arity();
    }
    out
}

pub fn monomial_tex(p: &dyn DgOperad, m: &Monomial, form: Form) -> String {
    if m.is_identity() {
        return "\\mathrm{id}".into();
    }
    let tree = match form {
        Form::Tree => true,
        Form::Nested => false,
        Form::Auto => m.vertex_count() <= TREE_LIMIT,
    };
    if tree {
        tikz(p, m)
    } else {
        nested(p, m, 0)
    }
}

pub fn to_latex(p: &dyn DgOperad, e: &Element, form: Form) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (m, c)) in e.terms().enumerate() {
        let neg = c.sign() == num_bigint::Sign::Minus;
        let a = c.magnitude();
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str("\n-"),
            (_, false) => s.push_str("\n+"),
        }
        if *a != 1u32.into() {
            s.push_str(&a.to_string());
        }
        s.push_str(&monomial_tex(p, m, form));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::Cylinder;
    use crate::examples::presentations::{ainf, unital_nu};
    use crate::expr::parse_element;
    use std::sync::Arc;

    #[test]
    fn names() {
        assert_eq!(name_tex("mu_3"), "\\mu_{3}");
        assert_eq!(name_tex("nu_2^{1,2}"), "\\nu_{2}^{\\{1,2\\}}");
        assert_eq!(name_tex("D_4"), "D_{4}");
        assert_eq!(name_tex("u"), "u");
    }

    #[test]
    fn nested_form() {
        let c = Cylinder::new(Arc::new(ainf()));
        let e = parse_element(&c, "-i0:mu_3(id, sigma:mu_2, i1:mu_2(i1:mu_2, id))").unwrap();
        assert_eq!(
            to_latex(&c, &e, Form::Nested),
            "-i_0\\mu_{3}\\circ_{2}\\sigma\\mu_{2}\\circ_{4}(i_1\\mu_{2}\\circ_{1}i_1\\mu_{2})"
        );
        let t = to_latex(&c, &e, Form::Auto);
        assert!(t.contains("tikzpicture") && t.contains("child{}"));
    }

    #[test]
    fn base_alias() {
        let u = unital_nu(1).unwrap();
        let e = parse_element(&u, "mu o1 nu_1^{1}").unwrap();
        assert_eq!(to_latex(&u, &e, Form::Nested), "\\mu\\circ_{1}\\nu_{1}^{\\{1\\}}");
    }
}
