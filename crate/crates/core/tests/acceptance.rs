//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::time::Instant;

use opcyl::cylinder::Cylinder;
use opcyl::examples::formulas::{first_series, h_i1_d_der, h_i1_d_mu, two_level};
use opcyl::examples::presentations::{build, der, mu};
use opcyl::linear::linear_sigma_differential;
use opcyl::presentation::check_d_squared;
use opcyl::verify::{self, series_cases, Bounds};
use opcyl::*;

fn text(p: &dyn DgOperad, e: &Element) -> String {
    e.to_text_with(&|l| p.label_name(l))
}

fn same(r: &mut Report, p: &dyn DgOperad, what: String, a: &Element, b: &Element) {
    r.check(a == b, || what, || text(p, &(a - b)));
}

fn sigma(c: &Cylinder, n: &str) -> Generator {
    *c.resolve(Marker::Sigma, n).unwrap().cell().unwrap()
}

fn h_i1_d(c: &Cylinder, g: Generator) -> Result<Element> {
    let b = c.source().boundary(&g)?;
    c.homotopy(&c.engine().i1_map(&b)?)
}

fn all(name: &str, parts: impl IntoIterator<Item = Result<Report>>) -> Report {
    let mut r = Report::new(name);
    for p in parts {
        match p {
            Ok(p) => r.merge(p),
            Err(e) => r.fail(name.into(), e.to_string()),
        }
    }
    r
}

fn c1() -> Report {
    let names = ["ainf", "lambda-ainf", "ainf-d", "assoc-der", "unital-nu:m=1", "unital-nu:m=2"];
    all("d2 on presentations up to arity 7", names.iter().map(|n| Ok(check_d_squared(&*build(n)?, 7, None))))
}

fn c2() -> Report {
    let mut r = Report::new("cylinder d2 of sigma mu_n, n <= 7");
    for name in ["ainf", "lambda-ainf"] {
        let c = Cylinder::new(build(name).unwrap());
        for n in 2..=7 {
            let d = c.boundary(&sigma(&c, &format!("mu_{n}"))).unwrap();
            let dd = c.differential(&d).unwrap();
            r.check(dd.is_zero(), || format!("{name} mu_{n}"), || text(&c, &dd));
        }
    }
    r
}

fn c3() -> Report {
    all("closed d(sigma mu_n), 2 <= n <= 6", [verify::ainf_formula(&Bounds { max_arity: 6, ..Bounds::default() })])
}

fn c4() -> Report {
    let c = Cylinder::new(build("lambda-ainf").unwrap());
    let mut r = Report::new("h i1 d mu_{n+1}, 2 <= n <= 5");
    for n in 2..=5 {
        same(&mut r, &c, format!("n={n}"), &h_i1_d(&c, mu(n + 1, true)).unwrap(), &h_i1_d_mu(n).unwrap());
    }
    r
}

fn c5() -> Report {
    let c = Cylinder::new(build("lambda-ainf").unwrap());
    let cases = series_cases(8, 4);
    let mut r = Report::new(&format!("first series, {} two-level monomials", cases.len()));
    for (k, slots) in cases {
        let x = two_level(k, &slots).unwrap();
        same(&mut r, &c, text(&c, &x), &c.homotopy(&x).unwrap(), &first_series(k, &slots).unwrap());
    }
    r
}

fn c6() -> Report {
    all("retraction identities, arity 5, 3 vertices", [verify::sdr(build("ainf").unwrap(), &Bounds { max_arity: 5, max_vertices: 3, ..Bounds::default() })])
}

fn c7() -> Report {
    let b = Bounds { max_arity: 6, max_vertices: 4, seed: 20240607, samples: 1000 };
    all("vanishing on 1000 random monomials", [verify::vanishing(build("ainf").unwrap(), &b)])
}

fn c8() -> Report {
    let c = Cylinder::new(build("lambda-ainf-d").unwrap());
    let mut r = Report::new("h i1 d D_n, 2 <= n <= 5");
    for n in 2..=5 {
        same(&mut r, &c, format!("n={n}"), &h_i1_d(&c, der(n, true)).unwrap(), &h_i1_d_der(n).unwrap());
    }
    r
}

fn c9() -> Report {
    let mut r = Report::new("linear fast path, arity 6");
    for name in ["assoc-der", "unital-nu:m=1"] {
        let p = build(name).unwrap();
        let c = Cylinder::new(p.clone());
        for g in p.generators(6) {
            let s = g.with_marker(Marker::Sigma);
            same(&mut r, &c, c.label_name(&Label::Cell(s)), &linear_sigma_differential(&*p, &s).unwrap(), &c.boundary(&s).unwrap());
        }
    }
    r
}

fn c10() -> Report {
    let b = Bounds { max_arity: 6, ..Bounds::default() };
    all("doubling and reversing, arity 6", ["assoc-der", "unital-nu:m=1"].iter().map(|n| verify::linear(build(n)?, &b)))
}

fn c11() -> Report {
    let parts = [1usize, 2].map(|m| verify::unital_h(&format!("unital-nu:m={m}"), &Bounds { max_arity: 3, ..Bounds::default() }));
    all("unital retraction is a chain map, n <= m+3", parts)
}

fn c12() -> Report {
    let b = Bounds { max_arity: 3, max_vertices: 3, seed: 12, samples: 10000 };
    let mut r = verify::algebra_laws(&*build("ainf-d").unwrap(), &b).unwrap();
    let laws = r.name.clone();
    for name in ["lambda-ainf-d", "assoc-der", "unital-nu:m=2"] {
        let b = Bounds { samples: 1000, ..b };
        r.merge(verify::algebra_laws(&*build(name).unwrap(), &b).unwrap());
    }
    r.merge(verify::suspension(build("ainf-d").unwrap(), &b).unwrap());
    r.name = format!("algebra laws and suspension, 10000 each; {laws}");
    r
}

fn c13() -> Report {
    let b = Bounds { max_arity: 1, max_vertices: 5, seed: 1300, samples: 25 };
    all("arity 0/1 derivation rule, 25 random presentations, chains <= 5", [verify::arity01(&b)])
}

fn main() {
    let criteria: [fn() -> Report; 13] = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13];
    let mut failed = 0;
    for (k, f) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| {
            let mut r = Report::new("criterion");
            r.fail("panic".into(), "see above".into());
            r
        });
        if !r.passed() {
            failed += 1;
        }
        println!("{:>2} {} [{:.2?}]", k + 1, r.line(), t.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
