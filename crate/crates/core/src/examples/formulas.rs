//! Closed formulas built straight from their index sums, independent of the
//! perturbation engine.

use crate::error::{OpError, Result};
use crate::label::{Generator, Label, Marker};
use crate::presentation::combine;
use crate::terms::Element;

use super::presentations::{der, mu, sgn};

fn cell(g: Generator, m: Marker) -> Element {
    Element::generator(Label::Cell(g.with_marker(m)))
}

/// All sequences of integers `>= min` with the given length and sum.
pub fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < min * parts {
            return;
        }
        for v in min..=left - min * (parts - 1) {
            cur.push(v);
            go(left - v, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, min, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// `d(sigma mu_n)` in the cylinder of A-infinity, unsuspended signs.
pub fn dsigma_ainf(n: usize) -> Result<Element> {
    if n < 2 {
        return Err(OpError::UnknownGenerator(format!("mu_{n}")));
    }
    let m = |k| mu(k, false);
    let mut parts = vec![(1, cell(m(n), Marker::I0)), (-1, cell(m(n), Marker::I1))];
    for p in 2..n {
        let q = n + 1 - p;
        for j in 1..=p {
            let e = (p - j + q * (j - 1)) as i64;
            parts.push((-sgn(e), cell(m(p), Marker::Sigma).compose_at(j, &cell(m(q), Marker::I1))?));
        }
    }
    // i0 mu_r(id^j0, sigma mu_t1, id^j1, .., sigma mu_ts, id^js)
    for s in 1..=n / 2 {
        for tsum in 2 * s..=n {
            let jsum = n - tsum;
            let r = s + jsum;
            if r < 2 {
                continue;
            }
            for ts in compositions(tsum, s, 2) {
                for js in compositions(jsum, s + 1, 0) {
                    let mut e = 0i64;
                    let mut acc = js[0];
                    let mut args = Vec::with_capacity(r);
                    args.extend(std::iter::repeat_n(Element::identity(), js[0]));
                    for k in 0..s {
                        e += (ts[k] as i64 - 1) * acc as i64;
                        acc += ts[k] + js[k + 1];
                        args.push(cell(m(ts[k]), Marker::Sigma));
                        args.extend(std::iter::repeat_n(Element::identity(), js[k + 1]));
                    }
                    parts.push((sgn(e), cell(m(r), Marker::I0).compose_full(&args)?));
                }
            }
        }
    }
    Ok(combine(parts).with_grading(n, n as i64 - 2))
}

/// `x{y_1,..,y_s}` over the sigma images of the given mu indices.
fn brace_sigmas(x: Element, ts: &[usize]) -> Result<Element> {
    let args: Vec<Element> = ts.iter().map(|&t| cell(mu(t, true), Marker::Sigma)).collect();
    x.brace(&args)
}

/// `h i1 d(mu_{n+1})` in the cylinder of suspended A-infinity.
pub fn h_i1_d_mu(n: usize) -> Result<Element> {
    let m = |k| mu(k, true);
    let mut parts = Vec::new();
    for p in 2..=n {
        let q = n + 2 - p;
        parts.push((1, cell(m(p), Marker::Sigma).brace(&[cell(m(q), Marker::I1)])?));
    }
    for r in 2..=n {
        for s in 1..=r {
            let Some(total) = (n + 1 + s).checked_sub(r) else { continue };
            for ts in compositions(total, s, 2) {
                parts.push((-1, brace_sigmas(cell(m(r), Marker::I0), &ts)?));
            }
        }
    }
    Ok(combine(parts).with_grading(n + 1, -1))
}

/// `h i1 d(D_n)` in the cylinder of suspended A-infinity with derivation.
pub fn h_i1_d_der(n: usize) -> Result<Element> {
    let m = |k| mu(k, true);
    let d = |k| der(k, true);
    let mut parts = Vec::new();
    for p in 2..=n {
        let q = n + 1 - p;
        if q >= 1 {
            parts.push((1, cell(m(p), Marker::Sigma).brace(&[cell(d(q), Marker::I1)])?));
        }
    }
    // i0 mu_r{.., sigma D_q at position j, ..}
    for r in 2..=n + 1 {
        for s in 0..r {
            let Some(total) = (n + 1 + s).checked_sub(r) else { continue };
            for q in 1..=total {
                for ts in compositions(total - q, s, 2) {
                    for j in 0..=s {
                        let mut args: Vec<Element> = ts.iter().map(|&t| cell(m(t), Marker::Sigma)).collect();
                        args.insert(j, cell(d(q), Marker::Sigma));
                        parts.push((-1, cell(m(r), Marker::I0).brace(&args)?));
                    }
                }
            }
        }
    }
    for p in 1..n {
        let q = n + 1 - p;
        parts.push((-1, cell(d(p), Marker::Sigma).brace(&[cell(m(q), Marker::I1)])?));
    }
    for r in 1..=n {
        for s in 1..=r {
            let Some(total) = (n + s).checked_sub(r) else { continue };
            for ts in compositions(total, s, 2) {
                parts.push((-1, brace_sigmas(cell(d(r), Marker::I0), &ts)?));
            }
        }
    }
    Ok(combine(parts).with_grading(n, 0))
}

/// One input of a two-level monomial `i0 mu_r(..)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Id,
    Sigma(usize),
    End(usize),
}

/// `i0 mu_r(slots)` in the cylinder of suspended A-infinity.
pub fn two_level(r: usize, slots: &[Slot]) -> Result<Element> {
    let args: Vec<Element> = slots
        .iter()
        .map(|s| match *s {
            Slot::Id => Element::identity(),
            Slot::Sigma(t) => cell(mu(t, true), Marker::Sigma),
            Slot::End(q) => cell(mu(q, true), Marker::I1),
        })
        .collect();
    cell(mu(r, true), Marker::I0).compose_full(&args)
}

/// Predicted homotopy of `i0 mu_r(slots)` where exactly one slot is an `i1`
/// end: minus the same tree with that end turned into sigma under the
/// ordering conditions on indices, zero otherwise.
pub fn first_series(r: usize, slots: &[Slot]) -> Result<Element> {
    let pos = slots
        .iter()
        .position(|s| matches!(s, Slot::End(_)))
        .ok_or_else(|| OpError::Malformed("no i1 slot".into()))?;
    let Slot::End(q) = slots[pos] else { unreachable!() };
    let sig = |range: &[Slot]| -> Vec<usize> {
        range.iter().filter_map(|s| if let Slot::Sigma(t) = s { Some(*t) } else { None }).collect()
    };
    let before = sig(&slots[..pos]);
    let after = sig(&slots[pos + 1..]);
    let holds = (before.iter().all(|&t| t > r) && r >= q)
        || (before.iter().all(|&t| t > q) && q > r && after.iter().all(|&t| q <= t));
    let arity = slots.iter().map(|s| if let Slot::Id = s { 1 } else { 0 }).sum::<usize>()
        + slots.iter().map(|s| match s {
            Slot::Sigma(t) | Slot::End(t) => *t,
            Slot::Id => 0,
        }).sum::<usize>();
    if !holds {
        return Ok(Element::zero_graded(arity, 0));
    }
    let mut turned = slots.to_vec();
    turned[pos] = Slot::Sigma(q);
    Ok(-two_level(r, &turned)?)
}

/// `sum_j (-1)^{|x_1|+..+|x_{j-1}|} i0 x_1 o .. o i0 x_{j-1} o sigma x_j o i1 x_{j+1} o .. o i1 x_n`
/// for a chain of composable cells in arities 0 and 1.
pub fn chain_homotopy(xs: &[Generator]) -> Result<Element> {
    let mut out = Element::zero();
    let mut before = 0i64;
    for j in 0..xs.len() {
        let mut t = Element::identity();
        for (k, x) in xs.iter().enumerate() {
            let m = match k.cmp(&j) {
                std::cmp::Ordering::Less => Marker::I0,
                std::cmp::Ordering::Equal => Marker::Sigma,
                std::cmp::Ordering::Greater => Marker::I1,
            };
            t = t.compose_at(1, &cell(*x, m))?;
        }
        out.add_scaled(&t, &sgn(before).into());
        before += xs[j].degree;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(n: usize, m: Marker) -> Element {
        cell(mu(n, true), m)
    }

    #[test]
    fn counts() {
        assert_eq!(compositions(5, 2, 2).len(), 2);
        assert_eq!(compositions(2, 3, 0).len(), 6);
        assert!(compositions(3, 2, 2).is_empty());
    }

    #[test]
    fn dsigma_mu2() {
        let m = mu(2, false);
        assert_eq!(dsigma_ainf(2).unwrap(), cell(m, Marker::I0) - cell(m, Marker::I1));
    }

    #[test]
    fn tech_n2() {
        let expect = lab(2, Marker::Sigma).brace(&[lab(2, Marker::I1)]).unwrap()
            - lab(2, Marker::I0).brace(&[lab(2, Marker::Sigma)]).unwrap();
        assert_eq!(h_i1_d_mu(2).unwrap(), expect);
    }

    #[test]
    fn conder_base() {
        assert!(h_i1_d_der(1).unwrap().is_zero());
    }

    #[test]
    fn series_cases() {
        // q <= r: turned into sigma
        let e = first_series(2, &[Slot::End(2), Slot::Id]).unwrap();
        assert_eq!(e, -two_level(2, &[Slot::Sigma(2), Slot::Id]).unwrap());
        // a smaller sigma before the end kills it
        let e = first_series(3, &[Slot::Sigma(2), Slot::End(2), Slot::Id]).unwrap();
        assert!(e.is_zero());
    }
}
