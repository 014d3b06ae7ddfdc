//! Element JSON.
//!
//! `{"arity":n,"degree":d,"terms":[{"coeff":"-2","tree":T}]}` where a tree
//! node is `{"label":"<marker>:<name>/<arity>","children":[..]}` or
//! `{"leaf":k}`. Unknown grading of a zero element is written as `null`.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::base::is_normal;
use crate::error::{OpError, Result};
use crate::label::{Label, Marker};
use crate::presentation::DgOperad;
use crate::terms::{Element, Monomial};
use crate::tree::{Arity, Node};

fn bad(msg: impl Into<String>) -> OpError {
    OpError::Json(msg.into())
}

fn tree_value(m: &Monomial) -> Value {
    fn go(m: &Monomial, p: &mut usize, leaf: &mut usize) -> Value {
        let n = &m.nodes()[*p];
        *p += 1;
        match n {
            Node::Leaf => {
                *leaf += 1;
                json!({ "leaf": *leaf })
            }
            Node::Vertex(l) => {
                let children: Vec<Value> = (0..l.arity()).map(|_| go(m, p, leaf)).collect();
                json!({ "label": l.key(), "children": children })
            }
        }
    }
    go(m, &mut 0, &mut 0)
}

pub fn to_value(e: &Element) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(m, c)| json!({ "coeff": c.to_string(), "tree": tree_value(m) }))
        .collect();
    let mut obj = Map::new();
    obj.insert("arity".into(), e.arity().map_or(Value::Null, Value::from));
    obj.insert("degree".into(), e.degree().map_or(Value::Null, Value::from));
    obj.insert("terms".into(), Value::Array(terms));
    Value::Object(obj)
}

pub fn to_json(e: &Element) -> String {
    to_value(e).to_string()
}

/// Resolves `<marker>:<name>/<arity>` against `p`.
pub fn resolve_key(p: &dyn DgOperad, key: &str) -> Result<Label> {
    let (head, arity) = key.rsplit_once('/').ok_or_else(|| bad(format!("label `{key}` has no arity")))?;
    let arity: usize = arity.parse().map_err(|_| bad(format!("bad arity in `{key}`")))?;
    let (marker, name) = head.split_once(':').ok_or_else(|| bad(format!("label `{key}` has no marker")))?;
    let l = if marker == "base" {
        let n = name.strip_prefix("m_").and_then(|k| k.parse::<usize>().ok());
        n.filter(|&n| n == arity).and_then(|n| p.base().label(n))
    } else {
        let m = Marker::parse(marker).ok_or_else(|| bad(format!("unknown marker `{marker}`")))?;
        p.resolve(m, name).filter(|l| !l.is_base())
    };
    let l = l.ok_or_else(|| OpError::UnknownGenerator(key.into()))?;
    if l.arity() != arity {
        return Err(bad(format!("`{key}` has arity {}", l.arity())));
    }
    Ok(l)
}

fn parse_tree(p: &dyn DgOperad, v: &Value, out: &mut Vec<Node<Label>>, leaf: &mut usize) -> Result<()> {
    let obj = v.as_object().ok_or_else(|| bad("tree node is not an object"))?;
    if let Some(k) = obj.get("leaf") {
        *leaf += 1;
        if k.as_u64() != Some(*leaf as u64) || obj.len() != 1 {
            return Err(bad(format!("expected leaf {}", *leaf)));
        }
        out.push(Node::Leaf);
        return Ok(());
    }
    let key = obj.get("label").and_then(Value::as_str).ok_or_else(|| bad("node without label"))?;
    let l = resolve_key(p, key)?;
    let children = obj.get("children").and_then(Value::as_array).ok_or_else(|| bad("node without children"))?;
    if children.len() != l.arity() || obj.len() != 2 {
        return Err(bad(format!("`{key}` needs {} children", l.arity())));
    }
    out.push(Node::Vertex(l));
    for c in children {
        parse_tree(p, c, out, leaf)?;
    }
    Ok(())
}

pub fn from_value(p: &dyn DgOperad, v: &Value) -> Result<Element> {
    let obj = v.as_object().ok_or_else(|| bad("element is not an object"))?;
    let grade = |k: &str| obj.get(k).ok_or_else(|| bad(format!("missing `{k}`")));
    let arity = grade("arity")?;
    let degree = grade("degree")?;
    let terms = obj.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing `terms`"))?;
    let mut e = Element::zero();
    for t in terms {
        let c = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("term without coeff"))?;
        let c: BigInt = c.parse().map_err(|_| bad(format!("bad coefficient `{c}`")))?;
        let mut nodes = Vec::new();
        parse_tree(p, t.get("tree").ok_or_else(|| bad("term without tree"))?, &mut nodes, &mut 0)?;
        let m = Monomial::from_nodes(nodes)?;
        if !is_normal(&m) {
            return Err(bad(format!("tree {m} is not in normal form")));
        }
        let piece = Element::term(c, m);
        e = e.checked_add(&piece)?;
    }
    match (arity.as_u64(), degree.as_i64()) {
        (Some(a), Some(d)) => {
            if e.grading().is_some_and(|g| g != (a as usize, d)) {
                return Err(bad("grading does not match the terms"));
            }
            Ok(e.with_grading(a as usize, d))
        }
        _ if arity.is_null() && degree.is_null() && e.is_zero() => Ok(e),
        _ => Err(bad("bad grading")),
    }
}

pub fn from_json(p: &dyn DgOperad, s: &str) -> Result<Element> {
    let v: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
    from_value(p, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::Cylinder;
    use crate::examples::presentations::{ainf, unital_nu};
    use crate::expr::parse_element;
    use std::sync::Arc;

    #[test]
    fn round_trip() {
        let c = Cylinder::new(Arc::new(ainf()));
        let g = *c.resolve(Marker::Sigma, "mu_4").unwrap().cell().unwrap();
        let e = c.boundary(&g).unwrap();
        let s = to_json(&e);
        let back = from_json(&c, &s).unwrap();
        assert_eq!(back, e);
        assert_eq!(to_json(&back), s);
    }

    #[test]
    fn shapes() {
        let p = ainf();
        let e = parse_element(&p, "-3*mu_2(mu_2,id)").unwrap();
        assert_eq!(
            to_json(&e),
            r#"{"arity":3,"degree":0,"terms":[{"coeff":"-3","tree":{"label":"plain:mu_2/2","children":[{"label":"plain:mu_2/2","children":[{"leaf":1},{"leaf":2}]},{"leaf":3}]}}]}"#
        );
        assert_eq!(to_json(&Element::zero()), r#"{"arity":null,"degree":null,"terms":[]}"#);
        assert_eq!(from_json(&p, &to_json(&Element::identity())).unwrap(), Element::identity());
    }

    #[test]
    fn base_labels() {
        let u = unital_nu(1).unwrap();
        let e = parse_element(&u, "mu o1 nu_1^{1} - id").unwrap();
        let s = to_json(&e);
        assert!(s.contains("base:m_2/2"));
        assert_eq!(from_json(&u, &s).unwrap(), e);
    }

    #[test]
    fn rejects() {
        let p = ainf();
        for s in [
            r#"{"arity":2,"degree":0,"terms":[{"coeff":"1","tree":{"label":"plain:mu_2/3","children":[]}}]}"#,
            r#"{"arity":2,"degree":0,"terms":[{"coeff":"x","tree":{"leaf":1}}]}"#,
            r#"{"arity":1,"degree":0,"terms":[{"coeff":"1","tree":{"leaf":2}}]}"#,
            r#"{"arity":5,"degree":0,"terms":[{"coeff":"1","tree":{"leaf":1}}]}"#,
            "[]",
        ] {
            assert!(from_json(&p, s).is_err(), "{s}");
        }
    }
}
