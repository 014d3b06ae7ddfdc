//! Built-in presentations.

use std::sync::Arc;

use crate::base::BaseOperad;
use crate::error::{OpError, Result};
use crate::label::{Generator, Label, Marker};
use crate::presentation::{combine, comp, DgOperad, Family, Presentation};
use crate::terms::Element;

fn indexed(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || (rest.len() > 1 && rest.starts_with('0')) {
        return None;
    }
    rest.parse().ok()
}

pub fn mu(n: usize, suspended: bool) -> Generator {
    let d = if suspended { -1 } else { n as i64 - 2 };
    Generator::new(&format!("mu_{n}"), n, d, n as u32 - 2)
}

pub fn der(n: usize, suspended: bool) -> Generator {
    let d = if suspended { 0 } else { n as i64 - 1 };
    Generator::new(&format!("D_{n}"), n, d, n as u32 - 1)
}

fn el(g: Generator) -> Element {
    Element::generator(Label::Cell(g))
}

fn mu_family(suspended: bool) -> Family {
    Family::new(
        move |a| (2..=a).map(|n| mu(n, suspended)).collect(),
        move |s| indexed(s, "mu_").filter(|&n| n >= 2).map(|n| mu(n, suspended)),
        move |g, _| {
            let n = g.arity;
            let mut parts = Vec::new();
            for p in 2..n {
                let q = n + 1 - p;
                if suspended {
                    parts.push((1, el(mu(p, true)).brace(&[el(mu(q, true))])?));
                } else {
                    for i in 1..=p {
                        let e = p as i64 - i as i64 + q as i64 * (i as i64 - 1);
                        parts.push((sgn(e), comp(&el(mu(p, false)), i, &el(mu(q, false)))));
                    }
                }
            }
            Ok(combine(parts))
        },
    )
}

fn der_family(suspended: bool) -> Family {
    Family::new(
        move |a| (1..=a).map(|n| der(n, suspended)).collect(),
        move |s| indexed(s, "D_").filter(|&n| n >= 1).map(|n| der(n, suspended)),
        move |g, _| {
            let n = g.arity;
            let mut parts = Vec::new();
            // mu_p with D_q
            for p in 2..=n {
                let q = n + 1 - p;
                if q < 1 {
                    continue;
                }
                if suspended {
                    parts.push((1, el(mu(p, true)).brace(&[el(der(q, true))])?));
                } else {
                    for i in 1..=p {
                        let e = (q as i64 - 1) * (i as i64 - 1);
                        parts.push((sgn(e), comp(&el(mu(p, false)), i, &el(der(q, false)))));
                    }
                }
            }
            // D_p with mu_q
            for q in 2..=n {
                let p = n + 1 - q;
                if p < 1 {
                    continue;
                }
                if suspended {
                    parts.push((-1, el(der(p, true)).brace(&[el(mu(q, true))])?));
                } else {
                    for i in 1..=p {
                        let e = p as i64 - i as i64 + q as i64 * (i as i64 - 1);
                        parts.push((-sgn(e), comp(&el(der(p, false)), i, &el(mu(q, false)))));
                    }
                }
            }
            Ok(combine(parts))
        },
    )
}

pub(crate) fn sgn(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn ainf() -> Presentation {
    Presentation::new("ainf", BaseOperad::INITIAL).family(mu_family(false))
}

/// Suspended A-infinity written directly with braces.
pub fn lambda_ainf() -> Presentation {
    Presentation::new("lambda-ainf", BaseOperad::INITIAL.suspend()).family(mu_family(true))
}

pub fn ainf_d() -> Presentation {
    Presentation::new("ainf-d", BaseOperad::INITIAL).family(mu_family(false)).family(der_family(false))
}

pub fn lambda_ainf_d() -> Presentation {
    Presentation::new("lambda-ainf-d", BaseOperad::INITIAL.suspend())
        .family(mu_family(true))
        .family(der_family(true))
}

/// Quotient of ainf-d by mu_n, n >= 3, relative to the associative base.
pub fn assoc_der() -> Presentation {
    let fam = Family::new(
        |a| (1..=a).map(|n| der(n, false)).collect(),
        |s| indexed(s, "D_").filter(|&n| n >= 1).map(|n| der(n, false)),
        |g, p| {
            let n = g.arity;
            if n == 1 {
                return Ok(Element::zero());
            }
            let m2 = Element::generator(p.base_label(2)?);
            let d = el(der(n - 1, false));
            let mut parts = vec![(1, comp(&m2, 1, &d)), (sgn(n as i64), comp(&m2, 2, &d))];
            for i in 1..n {
                parts.push((sgn((n + i) as i64), comp(&d, i, &m2)));
            }
            Ok(combine(parts))
        },
    );
    Presentation::new("assoc-der", BaseOperad::ASSOC).alias("mu_2", 2).family(fam)
}

/// Name of `nu_n^S`.
pub fn nu_name(n: usize, s: &[usize]) -> String {
    let list: Vec<String> = s.iter().map(|k| k.to_string()).collect();
    format!("nu_{n}^{{{}}}", list.join(","))
}

pub fn nu(m: usize, n: usize, s: &[usize]) -> Generator {
    Generator::new(&nu_name(n, s), n - m, (n + m) as i64 - 2, (n - m) as u32)
}

fn parse_nu(m: usize, name: &str) -> Option<(usize, Vec<usize>)> {
    let rest = name.strip_prefix("nu_")?;
    let (n, set) = rest.split_once("^{")?;
    let set = set.strip_suffix('}')?;
    let n: usize = n.parse().ok()?;
    let s: Vec<usize> = if set.is_empty() {
        Vec::new()
    } else {
        set.split(',').map(|k| k.parse().ok()).collect::<Option<_>>()?
    };
    let ok = n >= m
        && s.len() == m
        && s.windows(2).all(|w| w[0] < w[1])
        && s.iter().all(|&k| k >= 1 && k <= n)
        && nu_name(n, &s) == name;
    ok.then_some((n, s))
}

/// Subsets of {1..n} of size m in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut c: Vec<usize> = (0..m).collect();
    loop {
        out.push(c.iter().map(|k| k + 1).collect());
        if !crate::terms::next_combination(&mut c, n) {
            break;
        }
    }
    out
}

fn nu_boundary(m: usize, n: usize, s: &[usize], p: &Presentation) -> Result<Element> {
    let mu = Element::generator(p.base_label(2)?);
    let id = Element::identity();
    let nel = |n: usize, s: &[usize]| el(nu(m, n, s));
    if m == 1 && n == 1 {
        return Ok(Element::zero());
    }
    if m == 1 && n == 2 {
        let slot = s[0];
        return Ok(comp(&mu, slot, &nel(1, &[1])) - id);
    }
    let mut parts = Vec::new();
    let l = |k: usize| -> usize {
        if k == 0 {
            0
        } else if k == m + 1 {
            n + 1
        } else {
            s[k - 1]
        }
    };
    if l(m) != n {
        parts.push((sgn(n as i64), comp(&mu, 1, &nel(n - 1, s))));
    }
    if l(1) != 1 {
        let down: Vec<usize> = s.iter().map(|k| k - 1).collect();
        parts.push((1, comp(&mu, 2, &nel(n - 1, &down))));
    }
    for v in 1..=m + 1 {
        for i in 1..=n {
            let pos = i + v - 1;
            if l(v - 1) < pos && pos + 1 < l(v) {
                let mut t: Vec<usize> = s[..v - 1].to_vec();
                t.extend(s[v - 1..].iter().map(|k| k - 1));
                parts.push((sgn(pos as i64), comp(&nel(n - 1, &t), i, &mu)));
            }
        }
    }
    Ok(combine(parts))
}

pub fn unital_nu(m: usize) -> Result<Presentation> {
    if m == 0 {
        return Err(OpError::UnknownPresentation("unital-nu:m=0".into()));
    }
    let fam = Family::new(
        move |a| {
            let mut v = Vec::new();
            for n in m..=m + a {
                for s in subsets(n, m) {
                    v.push(nu(m, n, &s));
                }
            }
            v
        },
        move |name| parse_nu(m, name).map(|(n, s)| nu(m, n, &s)),
        move |g, p| {
            let (n, s) = parse_nu(m, g.name.as_str()).ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
            nu_boundary(m, n, &s, p)
        },
    );
    Ok(Presentation::new(&format!("unital-nu:m={m}"), BaseOperad::UASSOC)
        .alias("mu", 2)
        .alias("u", 0)
        .family(fam))
}

/// The homotopy H: I O -> O of the unital example, on one cylinder label.
pub fn unital_homotopy_label(m: usize, l: &Label, p: &Presentation) -> Result<Element> {
    let g = match l {
        Label::Base(_) => return Ok(Element::generator(*l)),
        Label::Cell(g) => g,
    };
    let (n, s) = parse_nu(m, g.name.as_str()).ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))?;
    let plain = el(nu(m, n, &s));
    match g.marker {
        Marker::I0 => Ok(plain),
        Marker::I1 => {
            if m == 1 && n == 1 {
                Ok(Element::generator(p.base_label(0)?))
            } else {
                Ok(Element::zero_graded(g.arity, g.degree))
            }
        }
        Marker::Sigma => {
            let l1 = s[0];
            let up: Vec<usize> = s.iter().map(|k| k + 1).collect();
            let u = Element::generator(p.base_label(0)?);
            let e = comp(&el(nu(m, n + 1, &up)), l1, &u);
            Ok(e.scale_i(sgn(l1 as i64 + 1)))
        }
        _ => Err(OpError::Alphabet(l.to_string(), "not a cylinder label".into())),
    }
}

/// Builds a presentation by name.
pub fn build(name: &str) -> Result<Arc<dyn DgOperad>> {
    Ok(Arc::new(build_presentation(name)?))
}

pub fn build_presentation(name: &str) -> Result<Presentation> {
    match name {
        "ainf" => Ok(ainf()),
        "lambda-ainf" => Ok(lambda_ainf()),
        "ainf-d" => Ok(ainf_d()),
        "lambda-ainf-d" => Ok(lambda_ainf_d()),
        "assoc-der" => Ok(assoc_der()),
        _ => {
            if let Some(k) = name.strip_prefix("unital-nu:m=") {
                let m: usize = k.parse().map_err(|_| OpError::UnknownPresentation(name.into()))?;
                return unital_nu(m);
            }
            Err(OpError::UnknownPresentation(name.into()))
        }
    }
}

pub const NAMES: [&str; 6] = ["ainf", "lambda-ainf", "ainf-d", "lambda-ainf-d", "assoc-der", "unital-nu:m=<k>"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{check_d_squared, differential, is_strictly_linear, linear_parts};

    #[test]
    fn d_mu3() {
        let p = ainf();
        let d = p.boundary(&p.gen("mu_3")).unwrap();
        let mu2 = p.el("mu_2");
        assert_eq!(d, comp(&mu2, 2, &mu2) - comp(&mu2, 1, &mu2));
        assert!(p.boundary(&p.gen("mu_2")).unwrap().is_zero());
        assert!(differential(&p, &Element::identity()).unwrap().is_zero());
    }

    #[test]
    fn d_squared_small() {
        for p in [ainf(), lambda_ainf(), ainf_d(), lambda_ainf_d(), assoc_der(), unital_nu(1).unwrap(), unital_nu(2).unwrap()] {
            let r = check_d_squared(&p, 5, None);
            assert!(r.passed(), "{}", r.line());
        }
    }

    #[test]
    fn unital_m1_specials() {
        let p = unital_nu(1).unwrap();
        assert!(p.boundary(&p.gen("nu_1^{1}")).unwrap().is_zero());
        let lp = linear_parts(&p, &p.gen("nu_2^{1}")).unwrap();
        assert_eq!(lp.d0, -Element::identity());
        assert_eq!(lp.d1, comp(&p.el("mu"), 1, &p.el("nu_1^{1}")));
        assert!(lp.rest.is_zero());
    }

    #[test]
    fn assoc_der_strictly_linear() {
        assert!(is_strictly_linear(&assoc_der(), 6).unwrap());
        assert!(!is_strictly_linear(&unital_nu(1).unwrap(), 3).unwrap());
        assert!(is_strictly_linear(&unital_nu(2).unwrap(), 3).unwrap());
        let lp = linear_parts(&ainf(), &ainf().gen("mu_4")).unwrap();
        assert!(!lp.rest.is_zero());
    }

    #[test]
    fn nu_names() {
        assert_eq!(nu_name(3, &[1, 2]), "nu_3^{1,2}");
        assert_eq!(parse_nu(2, "nu_3^{1,2}"), Some((3, vec![1, 2])));
        assert_eq!(parse_nu(2, "nu_3^{2,1}"), None);
        assert_eq!(parse_nu(1, "nu_3^{4}"), None);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn unknown_name() {
        assert!(build("nope").is_err());
        assert!(build("unital-nu:m=0").is_err());
    }
}
