//! Verification suites. Each returns a [`Report`] carrying the first
//! counterexample. Randomized suites are driven by a seeded ChaCha stream.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base::{is_normal, BaseOperad};
use crate::cylinder::{bottom_label_kind, has_forbidden_edge, is_standard, Cylinder, Flattened, CYLINDER_MARKERS};
use crate::error::{OpError, Result};
use crate::examples::formulas::{chain_homotopy, compositions, dsigma_ainf, first_series, h_i1_d_der, h_i1_d_mu, two_level, Slot};
use crate::examples::presentations::{build, build_presentation, der, mu, unital_homotopy_label};
use crate::label::{Generator, Label, Marker};
use crate::linear::{doubling, linear_part, glued_projection, j0, j1, linear_cylinder_differential, reversing, DoubleCylinder};
use crate::presentation::{check_d_squared, differential, DgOperad, Family, Presentation, Report};
use crate::sdr::SdrEngine;
use crate::suspension::{desuspend_element, suspend_element, Suspended};
use crate::terms::{Element, Monomial};
use crate::tree::{Arity, Node};

pub const SUITES: [&str; 11] = [
    "sdr",
    "d2",
    "vanishing",
    "ainf-formula",
    "tech",
    "conder",
    "linear",
    "unital-H",
    "braces",
    "suspension",
    "arity01",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_arity: usize,
    pub max_vertices: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_arity: 4, max_vertices: 3, seed: 0, samples: 200 }
    }
}

/// Presentation a suite runs on when none is given.
pub fn default_presentation(suite: &str) -> &'static str {
    match suite {
        "tech" => "lambda-ainf",
        "conder" => "lambda-ainf-d",
        "linear" => "assoc-der",
        "unital-H" => "unital-nu:m=1",
        "braces" | "suspension" => "ainf-d",
        _ => "ainf",
    }
}

pub fn run(suite: &str, p: Arc<dyn DgOperad>, b: &Bounds) -> Result<Report> {
    match suite {
        "sdr" => sdr(p, b),
        "d2" => d2(&*p, b),
        "vanishing" => vanishing(p, b),
        "ainf-formula" => ainf_formula(b),
        "tech" => tech(b),
        "conder" => conder(b),
        "linear" => linear(p, b),
        "unital-H" => unital_h(&p.name(), b),
        "braces" => algebra_laws(&*p, b),
        "suspension" => suspension(p, b),
        "arity01" => arity01(b),
        _ => Err(OpError::Malformed(format!("unknown suite `{suite}`"))),
    }
}

fn text(p: &dyn DgOperad, e: &Element) -> String {
    e.to_text_with(&|l| p.label_name(l))
}

fn mono_text(p: &dyn DgOperad, m: &Monomial) -> String {
    text(p, &Element::from_monomial(m.clone()))
}

/// Records `lhs == rhs`, printing the difference on failure.
fn same(r: &mut Report, p: &dyn DgOperad, what: impl FnOnce() -> String, lhs: &Element, rhs: &Element) {
    r.check(lhs == rhs, what, || text(p, &(lhs - rhs)));
}

/// Runs `f`, turning an error into a recorded failure.
fn guard(r: &mut Report, what: impl FnOnce() -> String, f: impl FnOnce(&mut Report) -> Result<()>) {
    if let Err(e) = f(r) {
        r.fail(what(), e.to_string());
    }
}

/// The operad itself when its generators are plain, otherwise the
/// relabeled copy whose markers are folded into names.
pub fn plain_source(p: Arc<dyn DgOperad>) -> Arc<dyn DgOperad> {
    let marked = p.generators(2).iter().chain(p.generators(4).iter()).any(|g| g.marker != Marker::Plain);
    if marked {
        Arc::new(Flattened::new(p))
    } else {
        p
    }
}

/// Labels of `p` usable at arity `max_arity`: cells and nontrivial base
/// elements.
pub fn alphabet(p: &dyn DgOperad, max_arity: usize, max_vertices: usize) -> Vec<Label> {
    let base = p.base();
    let mut out: Vec<Label> = (0..=max_arity + 1).filter(|&n| n != 1).filter_map(|n| base.label(n)).collect();
    let mut gens = p.generators(max_arity);
    if gens.iter().any(|g| g.arity == 0) || base.has(0) {
        gens = p.generators(max_arity + max_vertices);
    }
    out.extend(gens.into_iter().map(Label::Cell));
    out
}

/// Normal-form monomials over `labels` with at most `max_vertices` vertices
/// and arity at most `max_arity`, the identity included.
pub fn monomial_basis(labels: &[Label], max_arity: usize, max_vertices: usize) -> Vec<Monomial> {
    let shrinks = labels.iter().any(|l| l.arity() == 0);
    let cap = if shrinks { max_arity + max_vertices } else { max_arity };
    let mut exact: Vec<Vec<Vec<Node<Label>>>> = vec![vec![vec![Node::Leaf]]];
    for v in 1..=max_vertices {
        let mut here = Vec::new();
        for l in labels {
            let k = l.arity();
            if k == 0 {
                if v == 1 {
                    here.push(vec![Node::Vertex(*l)]);
                }
                continue;
            }
            for split in compositions(v - 1, k, 0) {
                let mut acc: Vec<Vec<Node<Label>>> = vec![vec![Node::Vertex(*l)]];
                for part in split {
                    let mut next = Vec::new();
                    for a in &acc {
                        for c in &exact[part] {
                            let mut t = a.clone();
                            t.extend_from_slice(c);
                            next.push(t);
                        }
                    }
                    acc = next;
                }
                here.extend(acc.into_iter().filter(|t| leaves(t) <= cap));
            }
        }
        exact.push(here);
    }
    let mut out = Vec::new();
    for trees in exact {
        for t in trees {
            if leaves(&t) > max_arity {
                continue;
            }
            let m = Monomial::from_nodes(t).expect("well formed");
            if is_normal(&m) {
                out.push(m);
            }
        }
    }
    out
}

fn leaves(t: &[Node<Label>]) -> usize {
    t.iter().filter(|n| matches!(n, Node::Leaf)).count()
}

fn cylinder_labels(p: &dyn DgOperad, max_arity: usize, max_vertices: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for l in alphabet(p, max_arity, max_vertices) {
        match l {
            Label::Base(_) => out.push(l),
            Label::Cell(g) => out.extend(CYLINDER_MARKERS.iter().map(|&m| Label::Cell(g.with_marker(m)))),
        }
    }
    out
}

/// The retraction identities on the monomial basis of the cylinder and of
/// the source.
pub fn sdr(p: Arc<dyn DgOperad>, b: &Bounds) -> Result<Report> {
    let src = plain_source(p);
    let cyl = Cylinder::new(src.clone());
    let e = cyl.engine().clone();
    let mut r = Report::new(&format!("sdr {}", cyl.name()));
    for s in monomial_basis(&alphabet(&*src, b.max_arity, b.max_vertices), b.max_arity, b.max_vertices) {
        let x = Element::from_monomial(s.clone());
        let what = || mono_text(&*src, &s);
        guard(&mut r, what, |r| {
            let i0 = e.i0_map(&x)?;
            let i1 = e.i1_map(&x)?;
            same(r, &*src, || format!("p i0 {}", mono_text(&*src, &s)), &e.p_map(&i0)?, &x);
            same(r, &*src, || format!("p i1 {}", mono_text(&*src, &s)), &e.p_map(&i1)?, &x);
            let h = e.cylinder_homotopy(&i0)?;
            r.check(h.is_zero(), || format!("h i0 {}", mono_text(&*src, &s)), || text(&cyl, &h));
            Ok(())
        });
    }
    for t in monomial_basis(&cylinder_labels(&*src, b.max_arity, b.max_vertices), b.max_arity, b.max_vertices) {
        let x = Element::from_monomial(t.clone());
        let what = || mono_text(&cyl, &t);
        guard(&mut r, what, |r| {
            let h = e.cylinder_homotopy(&x)?;
            let lhs = &e.differential(&h)? + &e.cylinder_homotopy(&e.differential(&x)?)?;
            let rhs = &e.i0p_map(&x)? - &x;
            same(r, &cyl, || format!("dh + hd {}", mono_text(&cyl, &t)), &lhs, &rhs);
            let ph = e.p_map(&h)?;
            r.check(ph.is_zero(), || format!("p h {}", mono_text(&cyl, &t)), || text(&*src, &ph));
            let hh = e.cylinder_homotopy(&h)?;
            r.check(hh.is_zero(), || format!("h h {}", mono_text(&cyl, &t)), || text(&cyl, &hh));
            Ok(())
        });
    }
    Ok(r)
}

/// d^2 = 0 on generators and on random monomials.
pub fn d2(p: &dyn DgOperad, b: &Bounds) -> Result<Report> {
    let mut r = check_d_squared(p, b.max_arity, None);
    let labels = alphabet(p, b.max_arity, b.max_vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    for _ in 0..b.samples.min(200) {
        let x = random_element(&mut rng, &labels, b.max_arity, b.max_vertices)?;
        guard(&mut r, || text(p, &x), |r| {
            let dd = differential(p, &differential(p, &x)?)?;
            r.check(dd.is_zero(), || format!("d d {}", text(p, &x)), || text(p, &dd));
            Ok(())
        });
    }
    Ok(r)
}

fn coefficient(rng: &mut ChaCha8Rng) -> i64 {
    [-2, -1, 1, 1, 2, 3][rng.gen_range(0..6)]
}

/// A random monomial grown by grafting labels at random leaves. Each step
/// leaves arity room for the grafts still to come.
pub fn random_monomial(rng: &mut ChaCha8Rng, labels: &[Label], max_arity: usize, max_vertices: usize) -> Result<Element> {
    let fits = |a: usize| labels.iter().copied().filter(move |l| l.arity() <= a).collect::<Vec<_>>();
    let k = rng.gen_range(1..=max_vertices.max(1));
    let room = |left: usize, cap: usize| {
        let v = fits(cap.saturating_sub(left).max(1));
        if v.is_empty() {
            fits(cap)
        } else {
            v
        }
    };
    let roots = room(k - 1, max_arity);
    if roots.is_empty() {
        return Ok(Element::identity());
    }
    let mut e = Element::generator(roots[rng.gen_range(0..roots.len())]);
    for step in 1..k {
        let a = e.arity().unwrap_or(0);
        if a == 0 {
            break;
        }
        let opts = room(k - 1 - step, max_arity + 1 - a);
        if opts.is_empty() {
            break;
        }
        let l = opts[rng.gen_range(0..opts.len())];
        let next = e.compose_at(rng.gen_range(1..=a), &Element::generator(l))?;
        if next.is_zero() {
            break;
        }
        e = next;
    }
    Ok(e)
}

/// A random monomial times a small coefficient, sometimes plus a second
/// monomial of the same grading.
pub fn random_element(rng: &mut ChaCha8Rng, labels: &[Label], max_arity: usize, max_vertices: usize) -> Result<Element> {
    let x = random_monomial(rng, labels, max_arity, max_vertices)?.scale_i(coefficient(rng));
    if rng.gen_bool(0.3) {
        for _ in 0..4 {
            let y = random_monomial(rng, labels, max_arity, max_vertices)?;
            if y.grading() == x.grading() {
                let c = coefficient(rng);
                return Ok(&x + &y.scale_i(c));
            }
        }
    }
    Ok(x)
}

/// h vanishes on standard monomials with bottom sigma, or bottom i0 and no
/// forbidden edge.
pub fn vanishing(p: Arc<dyn DgOperad>, b: &Bounds) -> Result<Report> {
    let src = plain_source(p);
    let cyl = Cylinder::new(src.clone());
    let e = cyl.engine().clone();
    let labels: Vec<Label> =
        cylinder_labels(&*src, b.max_arity, b.max_vertices).into_iter().filter(|l| !l.is_base()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut r = Report::new(&format!("vanishing {}", cyl.name()));
    let mut tries = 0usize;
    while r.checks < b.samples && tries < 200 * b.samples.max(1) {
        tries += 1;
        let x = random_monomial(&mut rng, &labels, b.max_arity, b.max_vertices)?;
        let Some(t) = x.monomials().next().cloned() else { continue };
        let ok = is_standard(&t)
            && match bottom_label_kind(&t) {
                Some(Marker::Sigma) => true,
                Some(Marker::I0) => !has_forbidden_edge(&t),
                _ => false,
            };
        if !ok {
            continue;
        }
        match e.homotopy_monomial(&t) {
            Ok(h) => r.check(h.is_zero(), || mono_text(&cyl, &t), || text(&cyl, &h)),
            Err(err) => r.fail(mono_text(&cyl, &t), err.to_string()),
        }
    }
    if r.checks < b.samples && r.passed() {
        r.fail("sampling".into(), format!("only {} admissible monomials found", r.checks));
    }
    Ok(r)
}

fn sigma_of(c: &Cylinder, name: &str) -> Result<Generator> {
    c.resolve(Marker::Sigma, name)
        .and_then(|l| l.cell().copied())
        .ok_or_else(|| OpError::UnknownGenerator(format!("sigma:{name}")))
}

/// Engine d(sigma mu_n) against the closed formula, directly and through
/// the suspended cylinder.
pub fn ainf_formula(b: &Bounds) -> Result<Report> {
    let ca = Cylinder::new(build("ainf")?);
    let cl = Cylinder::new(build("lambda-ainf")?);
    let mut r = Report::new("ainf-formula");
    for n in 2..=b.max_arity.max(2) {
        let name = format!("mu_{n}");
        guard(&mut r, || name.clone(), |r| {
            let f = dsigma_ainf(n)?;
            let direct = ca.boundary(&sigma_of(&ca, &name)?)?;
            same(r, &ca, || format!("d sigma {name}"), &direct, &f);
            let via = desuspend_element(&cl.boundary(&sigma_of(&cl, &name)?)?)?;
            same(r, &ca, || format!("desuspended d sigma {name}"), &via, &f);
            Ok(())
        });
    }
    Ok(r)
}

fn i1_boundary(c: &Cylinder, g: Generator) -> Result<Element> {
    c.engine().i1_map(&c.source().boundary(&g)?)
}

/// h i1 d(mu_{n+1}) against its closed form, and the first series over all
/// two-level monomials within the bounds.
pub fn tech(b: &Bounds) -> Result<Report> {
    let c = Cylinder::new(build("lambda-ainf")?);
    let mut r = Report::new("tech");
    for n in 2..b.max_arity.max(3) {
        guard(&mut r, || format!("n={n}"), |r| {
            let h = c.homotopy(&i1_boundary(&c, mu(n + 1, true))?)?;
            same(r, &c, || format!("h i1 d mu_{}", n + 1), &h, &h_i1_d_mu(n)?);
            Ok(())
        });
    }
    let cases = series_cases(b.max_arity, b.max_vertices);
    for (rr, slots) in cases {
        guard(&mut r, || format!("{rr} {slots:?}"), |r| {
            let x = two_level(rr, &slots)?;
            let h = c.homotopy(&x)?;
            same(r, &c, || format!("h {}", text(&c, &x)), &h, &first_series(rr, &slots)?);
            Ok(())
        });
    }
    Ok(r)
}

/// Every `i0 mu_r(slots)` with exactly one `i1` end, arity at most
/// `max_arity` and at most `max_vertices` vertices.
pub fn series_cases(max_arity: usize, max_vertices: usize) -> Vec<(usize, Vec<Slot>)> {
    let mut out = Vec::new();
    let mut opts = vec![Slot::Id];
    opts.extend((2..=max_arity).map(Slot::Sigma));
    opts.extend((2..=max_arity).map(Slot::End));
    fn go(r: usize, cur: &mut Vec<Slot>, opts: &[Slot], a: usize, v: usize, out: &mut Vec<(usize, Vec<Slot>)>) {
        let ends = cur.iter().filter(|s| matches!(s, Slot::End(_))).count();
        let verts = 1 + cur.iter().filter(|s| !matches!(s, Slot::Id)).count();
        let ar: usize = cur.iter().map(|s| match s {
            Slot::Id => 1,
            Slot::Sigma(t) | Slot::End(t) => *t,
        }).sum();
        if ends > 1 || verts > v || ar + (r - cur.len()) > a {
            return;
        }
        if cur.len() == r {
            if ends == 1 {
                out.push((r, cur.clone()));
            }
            return;
        }
        for s in opts {
            cur.push(*s);
            go(r, cur, opts, a, v, out);
            cur.pop();
        }
    }
    for r in 2..=max_arity {
        go(r, &mut Vec::new(), &opts, max_arity, max_vertices, &mut out);
    }
    out
}

/// h i1 d(D_n) against its closed form.
pub fn conder(b: &Bounds) -> Result<Report> {
    let c = Cylinder::new(build("lambda-ainf-d")?);
    let mut r = Report::new("conder");
    for n in 1..=b.max_arity.max(2) {
        guard(&mut r, || format!("n={n}"), |r| {
            let h = c.homotopy(&i1_boundary(&c, der(n, true))?)?;
            same(r, &c, || format!("h i1 d D_{n}"), &h, &h_i1_d_der(n)?);
            Ok(())
        });
    }
    Ok(r)
}

/// Linear fast path against the engine, and the doubling and reversing
/// maps on every cylinder generator.
pub fn linear(p: Arc<dyn DgOperad>, b: &Bounds) -> Result<Report> {
    let c = Cylinder::new(p.clone());
    let e = c.engine().clone();
    let dc = DoubleCylinder::new(p.clone());
    if let Some(g) = p.generators(b.max_arity).into_iter().find(|g| linear_part(&*p, g).is_err()) {
        return Err(OpError::NotLinear(p.name(), p.label_name(&Label::Cell(g))));
    }
    let mut r = Report::new(&format!("linear {}", p.name()));
    r.merge(check_d_squared(&dc, b.max_arity, None));
    for g in c.generators(b.max_arity) {
        let l = Label::Cell(g);
        let x = Element::generator(l);
        guard(&mut r, || c.label_name(&l), |r| {
            let name = c.label_name(&l);
            same(r, &c, || format!("fast d {name}"), &linear_cylinder_differential(&*p, &g)?, &c.boundary(&g)?);
            let dx = c.differential(&x)?;
            let nu = doubling(&*p, &x)?;
            same(r, &dc, || format!("d nu {name}"), &differential(&dc, &nu)?, &doubling(&*p, &dx)?);
            let iota = reversing(&*p, &x)?;
            same(r, &c, || format!("d iota {name}"), &c.differential(&iota)?, &reversing(&*p, &dx)?);
            same(r, &c, || format!("iota iota {name}"), &reversing(&*p, &iota)?, &x);
            let px = e.p_map(&x)?;
            same(r, &*p, || format!("p iota {name}"), &e.p_map(&iota)?, &px);
            same(r, &*p, || format!("glued nu {name}"), &glued_projection(&nu)?, &px);
            if g.marker == Marker::I0 {
                let top = Element::generator(Label::Cell(g.with_marker(Marker::I1)));
                same(r, &dc, || format!("j0 i1 = j1 i0 {name}"), &j0(&top)?, &j1(&x)?);
                same(r, &dc, || format!("nu i0 {name}"), &nu, &j0(&x)?);
                same(r, &dc, || format!("nu i1 {name}"), &doubling(&*p, &top)?, &j1(&top)?);
            }
            Ok(())
        });
    }
    Ok(r)
}

fn unital_m(name: &str) -> Result<usize> {
    name.strip_prefix("unital-nu:m=")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| OpError::UnknownPresentation(format!("{name} (unital-H needs unital-nu:m=<k>)")))
}

/// The retraction H: I O -> O of the unital example is a chain map on
/// every cylinder generator up to the arity bound.
pub fn unital_h(name: &str, b: &Bounds) -> Result<Report> {
    let m = unital_m(name)?;
    let p = Arc::new(build_presentation(name)?);
    let c = Cylinder::new(p.clone());
    let mut r = Report::new(&format!("unital-H {name}"));
    let h = |e: &Element| e.operad_map(&mut |l| unital_homotopy_label(m, l, &p));
    for g in c.generators(b.max_arity) {
        let l = Label::Cell(g);
        guard(&mut r, || c.label_name(&l), |r| {
            let x = Element::generator(l);
            let lhs = h(&c.differential(&x)?)?;
            let rhs = differential(&*p, &h(&x)?)?;
            same(r, &*p, || format!("H d {}", c.label_name(&l)), &lhs, &rhs);
            Ok(())
        });
    }
    Ok(r)
}

/// Associativity, commutation, units, Leibniz and the brace relation on
/// random elements, sampling until each law has been checked `samples`
/// times.
pub fn algebra_laws(p: &dyn DgOperad, b: &Bounds) -> Result<Report> {
    let labels = alphabet(p, b.max_arity.min(3), b.max_vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut r = Report::new(&format!("braces {}", p.name()));
    let small = |rng: &mut ChaCha8Rng| random_element(rng, &labels, 3, b.max_vertices.min(3));
    let slot = |rng: &mut ChaCha8Rng, e: &Element| rng.gen_range(1..=e.arity().unwrap_or(0));
    let pos = |e: &Element| e.arity().unwrap_or(0) > 0;
    // assoc, commute, leibniz, brace
    let mut counts = [0usize; 4];
    let mut rounds = 0usize;
    while counts.iter().any(|&c| c < b.samples) && r.passed() {
        rounds += 1;
        if rounds > 100 * b.samples.max(1) {
            r.fail("sampling".into(), format!("law counts {counts:?} after {rounds} rounds"));
            break;
        }
        let (x, y, z) = (small(&mut rng)?, small(&mut rng)?, small(&mut rng)?);
        let what = || format!("x={} y={} z={}", text(p, &x), text(p, &y), text(p, &z));
        guard(&mut r, what, |r| {
            let w = || format!("x={} y={} z={}", text(p, &x), text(p, &y), text(p, &z));
            if pos(&x) && pos(&y) {
                let i = slot(&mut rng, &x);
                let j = slot(&mut rng, &y);
                let lhs = x.compose_at(i, &y.compose_at(j, &z)?)?;
                let rhs = x.compose_at(i, &y)?.compose_at(i + j - 1, &z)?;
                same(r, p, || format!("assoc o{i} o{j} {}", w()), &lhs, &rhs);
                counts[0] += 1;
            }
            if x.arity().unwrap_or(0) >= 2 {
                let n = x.arity().unwrap();
                let j = rng.gen_range(1..n);
                let i = rng.gen_range(j + 1..=n);
                let (dy, dz) = (y.degree().unwrap(), z.degree().unwrap());
                let lhs = x.compose_at(i, &y)?.compose_at(j, &z)?;
                let rhs = x.compose_at(j, &z)?.compose_at(i + z.arity().unwrap() - 1, &y)?.scale_i(sign(dy * dz));
                same(r, p, || format!("commute o{i} o{j} {}", w()), &lhs, &rhs);
                counts[1] += 1;
            }
            let id = Element::identity();
            same(r, p, || format!("left unit {}", w()), &id.compose_at(1, &x)?, &x);
            if pos(&x) {
                let i = slot(&mut rng, &x);
                same(r, p, || format!("right unit o{i} {}", w()), &x.compose_at(i, &id)?, &x);
                let args: Vec<Element> = (0..x.arity().unwrap()).map(|k| [&y, &z, &id][k % 3].clone()).collect();
                same(r, p, || format!("full {}", w()), &x.compose_full(&args)?, &x.compose_full_iterated(&args)?);
                let lhs = differential(p, &x.compose_at(i, &y)?)?;
                let rhs = &differential(p, &x)?.compose_at(i, &y)?
                    + &x.compose_at(i, &differential(p, &y)?)?.scale_i(sign(x.degree().unwrap()));
                same(r, p, || format!("leibniz o{i} {}", w()), &lhs, &rhs);
                counts[2] += 1;
            }
            let ys: Vec<Element> = (0..rng.gen_range(0..=2)).map(|_| small(&mut rng)).collect::<Result<_>>()?;
            let zs: Vec<Element> = (0..rng.gen_range(0..=2)).map(|_| small(&mut rng)).collect::<Result<_>>()?;
            let lhs = x.brace(&ys)?.brace(&zs)?;
            same(r, p, || format!("brace {} {} {}", ys.len(), zs.len(), w()), &lhs, &brace_relation(&x, &ys, &zs)?);
            counts[3] += 1;
            Ok(())
        });
    }
    r.name = format!(
        "braces {} (assoc {}, commute {}, leibniz {}, brace {})",
        p.name(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    );
    Ok(r)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Right-hand side of `x{ys}{zs}` as a sum of single braces.
pub fn brace_relation(x: &Element, ys: &[Element], zs: &[Element]) -> Result<Element> {
    let p = ys.len();
    let q = zs.len();
    let deg = |e: &Element| e.degree().unwrap_or(0);
    let mut out = Element::zero();
    let mut cuts = vec![0usize; 2 * p];
    loop {
        // cuts = i_1 <= j_1 <= .. <= i_p <= j_p
        if cuts.windows(2).all(|w| w[0] <= w[1]) {
            let mut args = Vec::new();
            let mut at = 0;
            let mut eps = 0i64;
            for k in 0..p {
                let (i, j) = (cuts[2 * k], cuts[2 * k + 1]);
                args.extend(zs[at..i].iter().cloned());
                args.push(ys[k].brace(&zs[i..j])?);
                eps += deg(&ys[k]) * zs[..i].iter().map(deg).sum::<i64>();
                at = j;
            }
            args.extend(zs[at..].iter().cloned());
            out.add_scaled(&x.brace(&args)?, &BigInt::from(sign(eps)));
        }
        let mut k = 0;
        while k < 2 * p {
            cuts[k] += 1;
            if cuts[k] <= q {
                break;
            }
            cuts[k] = 0;
            k += 1;
        }
        if k == 2 * p {
            break;
        }
    }
    Ok(out)
}

/// Suspension against the differential, the composition rule and the
/// cylinder, plus the round trip.
pub fn suspension(p: Arc<dyn DgOperad>, b: &Bounds) -> Result<Report> {
    if p.base().suspended {
        return Err(OpError::Alphabet(p.name(), "suspension suite needs an unsuspended presentation".into()));
    }
    let sp: Arc<dyn DgOperad> = Arc::new(Suspended::new(p.clone()));
    let labels = alphabet(&*p, b.max_arity.min(3), b.max_vertices);
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    let mut r = Report::new(&format!("suspension {}", p.name()));
    for _ in 0..b.samples {
        let x = random_element(&mut rng, &labels, 3, b.max_vertices.min(3))?;
        let y = random_element(&mut rng, &labels, 3, b.max_vertices.min(3))?;
        guard(&mut r, || format!("x={} y={}", text(&*p, &x), text(&*p, &y)), |r| {
            let sx = suspend_element(&x)?;
            same(r, &*sp, || format!("d suspend {}", text(&*p, &x)), &suspend_element(&differential(&*p, &x)?)?, &differential(&*sp, &sx)?);
            same(r, &*p, || format!("round trip {}", text(&*p, &x)), &desuspend_element(&sx)?, &x);
            if let (Some(n), Some(q), Some(dy)) = (x.arity(), y.arity(), y.degree()) {
                if n > 0 {
                    let i = rng.gen_range(1..=n);
                    let e = (dy + 1 - q as i64) * (n - i) as i64 + dy * (i as i64 - 1);
                    let lhs = suspend_element(&x.compose_at(i, &y)?)?;
                    let rhs = sx.compose_at(i, &suspend_element(&y)?)?.scale_i(sign(e));
                    same(r, &*sp, || format!("composition o{i}"), &lhs, &rhs);
                }
            }
            Ok(())
        });
    }
    let ci = Cylinder::new(p.clone());
    let cs = Cylinder::new(sp.clone());
    for g in ci.generators(b.max_arity) {
        let l = Label::Cell(g);
        guard(&mut r, || ci.label_name(&l), |r| {
            let lhs = suspend_element(&ci.boundary(&g)?)?;
            let sg = crate::suspension::suspend_generator(&g);
            same(r, &cs, || format!("cylinder {}", ci.label_name(&l)), &lhs, &cs.boundary(&sg)?);
            Ok(())
        });
    }
    let twin = match p.name().as_str() {
        "ainf" => Some("lambda-ainf"),
        "ainf-d" => Some("lambda-ainf-d"),
        _ => None,
    };
    if let Some(t) = twin {
        let direct = build(t)?;
        for g in sp.generators(b.max_arity) {
            guard(&mut r, || g.name.to_string(), |r| {
                let ours = sp.boundary(&g)?;
                let theirs = direct.boundary(&g)?;
                same(r, &*sp, || format!("{t} boundary of {}", g.name), &ours, &theirs);
                Ok(())
            });
        }
    }
    Ok(r)
}

/// A random presentation in arities 0 and 1 with at most four generators
/// whose boundaries are sums of boundaries and of products of cycles.
pub fn random_arity01(seed: u64) -> Result<Presentation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(2..=4);
    let mut gens: Vec<Generator> = Vec::new();
    let mut bound: HashMap<Generator, Element> = HashMap::new();
    let mut stage = 0u32;
    for k in 0..count {
        let name = format!("x{}", k + 1);
        let mut cands: Vec<Element> = Vec::new();
        if k > 0 {
            for _ in 0..12 {
                let len = rng.gen_range(1..=3);
                let w = random_chain(&mut rng, &gens, len)?;
                let Some(w) = w else { continue };
                let dw = w.derivation(-1, &mut |l| Ok(l.cell().and_then(|g| bound.get(g).cloned())))?;
                if !dw.is_zero() {
                    cands.push(dw);
                }
                let cycles: Vec<Generator> = gens.iter().copied().filter(|g| bound[g].is_zero()).collect();
                if let Some(c) = random_chain(&mut rng, &cycles, len)? {
                    cands.push(c);
                }
            }
            cands.push(Element::identity());
        }
        let attach = !cands.is_empty() && rng.gen_bool(0.75);
        let g = if attach {
            let pick = cands[rng.gen_range(0..cands.len())].clone();
            let (a, d) = pick.grading().expect("graded");
            let mut b = pick.scale_i(coefficient(&mut rng));
            for c in &cands {
                if c.grading() == Some((a, d)) && rng.gen_bool(0.3) {
                    b = &b + &c.scale_i(coefficient(&mut rng));
                }
            }
            stage += 1;
            let g = Generator::new(&name, a, d + 1, stage);
            bound.insert(g, b);
            g
        } else {
            let a = if k == 0 { 1 } else { rng.gen_range(0..=1) };
            let g = Generator::new(&name, a, rng.gen_range(-1..=2), stage);
            bound.insert(g, Element::zero_graded(a, g.degree - 1));
            g
        };
        gens.push(g);
    }
    let table = bound.clone();
    Ok(Presentation::new(&format!("arity01:{seed}"), BaseOperad::INITIAL).family(Family::finite(gens, move |g, _| {
        table.get(&g.plain()).cloned().ok_or_else(|| OpError::UnknownGenerator(g.name.to_string()))
    })))
}

/// `x_1 o1 .. o1 x_len` with every factor but the last of arity one.
fn random_chain(rng: &mut ChaCha8Rng, gens: &[Generator], len: usize) -> Result<Option<Element>> {
    let ones: Vec<Generator> = gens.iter().copied().filter(|g| g.arity == 1).collect();
    if gens.is_empty() {
        return Ok(None);
    }
    let mut e = Element::identity();
    for k in 0..len {
        let pool = if k + 1 == len { gens } else { &ones[..] };
        if pool.is_empty() {
            return Ok(None);
        }
        let g = pool[rng.gen_range(0..pool.len())];
        e = e.compose_at(1, &Element::generator(Label::Cell(g)))?;
        if g.arity == 0 {
            break;
        }
    }
    Ok(Some(e))
}

/// All chains `x_1 o1 .. o1 x_n` with `n <= max_len`.
pub fn chains(gens: &[Generator], max_len: usize) -> Vec<Vec<Generator>> {
    let mut out: Vec<Vec<Generator>> = Vec::new();
    let mut open: Vec<Vec<Generator>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for c in &open {
            for g in gens {
                let mut d = c.clone();
                d.push(*g);
                out.push(d.clone());
                if g.arity == 1 {
                    next.push(d);
                }
            }
        }
        open = next;
    }
    out
}

fn chain_element(xs: &[Generator], m: Marker) -> Result<Element> {
    let mut e = Element::identity();
    for x in xs {
        e = e.compose_at(1, &Element::generator(Label::Cell(x.with_marker(m))))?;
    }
    Ok(e)
}

/// The derivation rule for h i1 on `samples` random presentations in
/// arities 0 and 1, over all chains of length at most `max_vertices`.
pub fn arity01(b: &Bounds) -> Result<Report> {
    let mut r = Report::new("arity01");
    for s in 0..b.samples as u64 {
        let seed = b.seed.wrapping_add(s);
        let p = Arc::new(random_arity01(seed)?);
        let mut d = check_d_squared(&*p, 1, None);
        d.name = format!("d2 {}", p.name());
        r.merge(d);
        let e = SdrEngine::new(p.clone());
        let c = Cylinder::new(p.clone());
        let gens = p.generators(1);
        for xs in chains(&gens, b.max_vertices) {
            guard(&mut r, || format!("{} {xs:?}", p.name()), |r| {
                let hi1 = |ys: &[Generator]| -> Result<Element> { e.cylinder_homotopy(&chain_element(ys, Marker::I1)?) };
                let what = || format!("{}: h i1 {}", p.name(), text(&*p, &chain_element(&xs, Marker::Plain).unwrap()));
                same(r, &c, what, &hi1(&xs)?, &chain_homotopy(&xs)?);
                for k in 1..xs.len() {
                    let (x, y) = xs.split_at(k);
                    let dx: i64 = x.iter().map(|g| g.degree).sum();
                    let rhs = &hi1(x)?.compose_at(1, &chain_element(y, Marker::I1)?)?
                        + &chain_element(x, Marker::I0)?.compose_at(1, &hi1(y)?)?.scale_i(sign(dx));
                    same(r, &c, || format!("{}: split {k} of {xs:?}", p.name()), &hi1(&xs)?, &rhs);
                }
                Ok(())
            });
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts() {
        let p = build("ainf").unwrap();
        let labels = alphabet(&*p, 3, 2);
        let b = monomial_basis(&labels, 3, 2);
        // id, mu_2, mu_3, mu_2(mu_2, id), mu_2(id, mu_2)
        assert_eq!(b.len(), 5);
    }

    #[test]
    fn basis_respects_normal_form() {
        let p = build("unital-nu:m=1").unwrap();
        let labels = alphabet(&*p, 2, 2);
        let b = monomial_basis(&labels, 2, 2);
        assert!(b.iter().all(is_normal));
        assert!(b.iter().all(|m| m.arity() <= 2));
    }

    #[test]
    fn series_enumeration() {
        let cases = series_cases(3, 2);
        assert!(cases.contains(&(2, vec![Slot::End(2), Slot::Id])));
        assert!(cases.iter().all(|(_, s)| s.iter().filter(|x| matches!(x, Slot::End(_))).count() == 1));
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds { max_arity: 3, max_vertices: 2, seed: 7, samples: 30 };
        for s in ["sdr", "d2", "vanishing", "ainf-formula", "tech", "conder", "braces", "suspension", "arity01"] {
            let p = build(default_presentation(s)).unwrap();
            let r = run(s, p, &b).unwrap();
            assert!(r.passed(), "{}", r.line());
        }
        let r = run("linear", build("assoc-der").unwrap(), &b).unwrap();
        assert!(r.passed(), "{}", r.line());
        let r = run("unital-H", build("unital-nu:m=2").unwrap(), &b).unwrap();
        assert!(r.passed(), "{}", r.line());
    }

    #[test]
    fn random_presentations_are_differential() {
        for s in 0..20 {
            let p = random_arity01(s).unwrap();
            assert!(check_d_squared(&p, 1, None).passed());
            assert!(p.generators(1).iter().all(|g| g.arity <= 1));
        }
    }

    #[test]
    fn corrupted_boundary_is_caught() {
        let good = build_presentation("ainf").unwrap();
        let bad = Presentation::new("bad", BaseOperad::INITIAL).family(Family::new(
            |a| (2..=a).map(|n| mu(n, false)).collect(),
            |s| s.strip_prefix("mu_").and_then(|k| k.parse().ok()).map(|n| mu(n, false)),
            move |g, _| {
                let b = good.boundary(g)?;
                if g.arity == 4 {
                    Ok(b.filter(|m| m.vertex_count() != 2 || m.nodes()[1] != Node::Leaf))
                } else {
                    Ok(b)
                }
            },
        ));
        assert!(!check_d_squared(&bad, 5, None).passed());
    }
}
