//! Presentation files.
//!
//! ```json
//! {"name": "toy", "base": "initial", "aliases": {"m": 2},
//!  "generators": [{"name": "x", "arity": 2, "degree": 0, "stage": 0, "boundary": "0"}]}
//! ```
//!
//! Boundaries use the element grammar and may only mention generators of
//! lower stages. `aliases` names base elements by arity and is optional.

use std::sync::Arc;

use serde_json::Value;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::expr::parse_element;
use crate::label::Generator;
use crate::presentation::{DgOperad, Family, Presentation};

fn bad(msg: impl Into<String>) -> OpError {
    OpError::Json(msg.into())
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| bad(format!("missing `{k}`")))
}

pub fn presentation_from_json(src: &str) -> Result<Presentation> {
    let v: Value = serde_json::from_str(src).map_err(|e| bad(e.to_string()))?;
    let name = field(&v, "name")?.as_str().ok_or_else(|| bad("`name` is not a string"))?;
    let base = BaseOperad::parse(field(&v, "base")?.as_str().ok_or_else(|| bad("`base` is not a string"))?)?;
    let list = field(&v, "generators")?.as_array().ok_or_else(|| bad("`generators` is not a list"))?;
    let mut gens = Vec::new();
    let mut sources = Vec::new();
    for g in list {
        let n = field(g, "name")?.as_str().ok_or_else(|| bad("generator name is not a string"))?;
        let arity = field(g, "arity")?.as_u64().ok_or_else(|| bad(format!("bad arity for `{n}`")))?;
        let degree = field(g, "degree")?.as_i64().ok_or_else(|| bad(format!("bad degree for `{n}`")))?;
        let stage = field(g, "stage")?.as_u64().ok_or_else(|| bad(format!("bad stage for `{n}`")))?;
        let b = field(g, "boundary")?.as_str().ok_or_else(|| bad(format!("boundary of `{n}` is not a string")))?;
        if gens.iter().any(|x: &Generator| x.name.as_str() == n) {
            return Err(bad(format!("duplicate generator `{n}`")));
        }
        gens.push(Generator::new(n, arity as usize, degree, stage as u32));
        sources.push(b.to_string());
    }
    let table: Arc<Vec<(Generator, String)>> = Arc::new(gens.iter().copied().zip(sources).collect());
    let t2 = table.clone();
    let mut p = Presentation::new(name, base).family(Family::finite(gens.clone(), move |g, p| {
        let (_, src) = t2.iter().find(|(x, _)| x == &g.plain()).ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
        Ok(parse_element(p, src)?.with_grading(g.arity, g.degree - 1))
    }));
    if let Some(a) = v.get("aliases") {
        let a = a.as_object().ok_or_else(|| bad("`aliases` is not an object"))?;
        for (k, n) in a {
            let n = n.as_u64().ok_or_else(|| bad(format!("alias `{k}` needs an arity")))? as usize;
            if !base.has(n) || n == 1 {
                return Err(bad(format!("base {base} has no element of arity {n} for `{k}`")));
            }
            p = p.alias(k, n);
        }
    }
    for (g, _) in table.iter() {
        let b = p.boundary(g)?;
        if let Some((a, d)) = b.grading() {
            if (a, d) != (g.arity, g.degree - 1) {
                return Err(bad(format!("boundary of `{}` has arity {a} degree {d}", g.name)));
            }
        }
        for m in b.monomials() {
            for l in m.labels() {
                if l.stage().is_some_and(|s| s >= g.stage) {
                    return Err(bad(format!("boundary of `{}` uses `{}` of stage {}", g.name, l.name(), l.stage().unwrap())));
                }
            }
        }
    }
    Ok(p)
}

pub fn load_presentation(path: &std::path::Path) -> Result<Presentation> {
    let s = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    presentation_from_json(&s)
}
