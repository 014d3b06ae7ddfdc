//! Retraction identities and chain-map properties on random cylinder
//! elements.

use std::sync::Arc;

use opcyl::cylinder::{bottom_label_kind, has_forbidden_edge, Cylinder, CYLINDER_MARKERS};
use opcyl::examples::presentations::{build, build_presentation};
use opcyl::presentation::{check_d_squared, Family};
use opcyl::verify::{alphabet, random_element};
use opcyl::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 4] = ["ainf", "lambda-ainf", "assoc-der", "unital-nu:m=1"];

fn cyl_labels(p: &dyn DgOperad, a: usize, v: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for l in alphabet(p, a, v) {
        match l {
            Label::Base(_) => out.push(l),
            Label::Cell(g) => out.extend(CYLINDER_MARKERS.iter().map(|&m| Label::Cell(g.with_marker(m)))),
        }
    }
    out
}

fn setup(seed: u64, k: usize) -> (Cylinder, Element, Element) {
    let p = build(NAMES[k]).unwrap();
    let c = Cylinder::new(p.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = random_element(&mut rng, &cyl_labels(&*p, 4, 3), 4, 3).unwrap();
    let x = random_element(&mut rng, &alphabet(&*p, 4, 3), 4, 3).unwrap();
    (c, t, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn retraction_identities(seed in any::<u64>(), k in 0..NAMES.len()) {
        let (c, t, x) = setup(seed, k);
        let e = c.engine();
        let h = c.homotopy(&t).unwrap();
        let lhs = &c.differential(&h).unwrap() + &c.homotopy(&c.differential(&t).unwrap()).unwrap();
        prop_assert_eq!(lhs, &e.i0p_map(&t).unwrap() - &t);
        prop_assert!(e.p_map(&h).unwrap().is_zero());
        prop_assert!(c.homotopy(&h).unwrap().is_zero());
        let i0 = e.i0_map(&x).unwrap();
        prop_assert!(c.homotopy(&i0).unwrap().is_zero());
        prop_assert_eq!(e.p_map(&i0).unwrap(), x.clone());
        prop_assert_eq!(e.p_map(&e.i1_map(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn structure_maps_are_chain_maps(seed in any::<u64>(), k in 0..NAMES.len()) {
        let (c, t, x) = setup(seed, k);
        let e = c.engine();
        let p = c.source().clone();
        let dt = c.differential(&t).unwrap();
        prop_assert!(c.differential(&dt).unwrap().is_zero());
        prop_assert_eq!(e.p_map(&dt).unwrap(), differential(&*p, &e.p_map(&t).unwrap()).unwrap());
        let dx = differential(&*p, &x).unwrap();
        prop_assert_eq!(c.differential(&e.i0_map(&x).unwrap()).unwrap(), e.i0_map(&dx).unwrap());
        prop_assert_eq!(c.differential(&e.i1_map(&x).unwrap()).unwrap(), e.i1_map(&dx).unwrap());
    }

    #[test]
    fn memo_agrees_with_plain_recursion(seed in any::<u64>(), k in 0usize..2) {
        let (c, t, _) = setup(seed, k);
        let fresh = opcyl::sdr::SdrEngine::new(c.source().clone());
        let bound = t.monomials().flat_map(|m| m.labels().filter_map(Label::stage)).max().map_or(0, |s| s + 1);
        prop_assert_eq!(fresh.cylinder_homotopy_at(bound, &t).unwrap(), c.homotopy(&t).unwrap());
    }

    #[test]
    fn vanishing_on_admissible_monomials(seed in any::<u64>()) {
        let (c, t, _) = setup(seed, 0);
        for m in t.monomials() {
            let admissible = match bottom_label_kind(m) {
                Some(Marker::Sigma) => true,
                Some(Marker::I0) => !has_forbidden_edge(m),
                _ => false,
            };
            if admissible && m.labels().all(|l| !l.is_base()) {
                prop_assert!(c.engine().homotopy_monomial(m).unwrap().is_zero());
            }
        }
    }
}

/// A presentation of ainf with one wrong sign in d(mu_4): d^2 must fail, in
/// the source and in its cylinder.
#[test]
fn corrupted_boundary_is_detected() {
    let good = build_presentation("ainf").unwrap();
    let mu = |n: usize| Generator::new(&format!("mu_{n}"), n, n as i64 - 2, n as u32 - 2);
    let bad = Presentation::new("ainf-bad", BaseOperad::INITIAL).family(Family::new(
        move |a| (2..=a).map(mu).collect(),
        move |s| s.strip_prefix("mu_").and_then(|k| k.parse().ok()).filter(|&n| n >= 2).map(mu),
        move |g, _| {
            let b = good.boundary(g)?;
            if g.arity != 4 {
                return Ok(b);
            }
            let first = b.monomials().next().unwrap().clone();
            let mut out = b.clone();
            out.add_term(first.clone(), -2 * b.coeff(&first));
            Ok(out)
        },
    ));
    let bad: Arc<dyn DgOperad> = Arc::new(bad);
    assert!(check_d_squared(&*bad, 3, None).passed());
    let r = check_d_squared(&*bad, 5, None);
    assert!(!r.passed());
    assert!(r.line().starts_with("FAIL"));
    let c = Cylinder::new(bad);
    let g = *c.resolve(Marker::I0, "mu_5").unwrap().cell().unwrap();
    let d = c.boundary(&g).unwrap();
    assert!(!c.differential(&d).unwrap().is_zero());
}
