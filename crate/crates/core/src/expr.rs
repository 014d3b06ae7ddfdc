//! Element expressions.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [int ['*']] compose
//! compose := postfix ('o' K postfix)*        left associative
//! postfix := atom ('(' list ')' | '{' list '}')*
//! atom    := '(' expr ')' | 'id' | '0' | [marker ':'] name
//! ```
//!
//! `x(a,b)` is full composition and `x{a,b}` the brace. Names may carry a
//! `^{..}` superscript and dots.

use num_bigint::BigInt;

use crate::error::{OpError, Result};
use crate::label::{Label, Marker};
use crate::presentation::DgOperad;
use crate::terms::Element;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Marked(Marker, String),
    Compose(usize),
    Sym(char),
}

fn err(pos: usize, msg: impl Into<String>) -> OpError {
    OpError::Parse { pos, msg: msg.into() }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && is_name_char(chars[i].1) {
                i += 1;
            }
            if i < chars.len() && chars[i].1 == '^' {
                i += 1;
                if i >= chars.len() || chars[i].1 != '{' {
                    return Err(err(pos, "expected `{` after `^`"));
                }
                while i < chars.len() && chars[i].1 != '}' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(err(pos, "unclosed superscript"));
                }
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            if i < chars.len() && chars[i].1 == ':' {
                let m = Marker::parse(&s).ok_or_else(|| err(pos, format!("unknown marker `{s}`")))?;
                i += 1;
                while i < chars.len() && chars[i].1.is_whitespace() {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && is_name_char(chars[i].1) {
                    i += 1;
                }
                if i < chars.len() && chars[i].1 == '^' {
                    while i < chars.len() && chars[i].1 != '}' {
                        i += 1;
                    }
                    i = (i + 1).min(chars.len());
                }
                let n: String = chars[start..i].iter().map(|p| p.1).collect();
                if n.is_empty() {
                    return Err(err(pos, "marker without a name"));
                }
                out.push((pos, Tok::Marked(m, n)));
            } else if let Some(k) = compose_slot(&s) {
                out.push((pos, Tok::Compose(k)));
            } else {
                out.push((pos, Tok::Name(s)));
            }
        } else if "+-*(){},".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(err(pos, format!("unexpected `{c}`")));
        }
    }
    Ok(out)
}

fn compose_slot(s: &str) -> Option<usize> {
    let rest = s.strip_prefix('o')?;
    let rest = rest.strip_prefix('_').unwrap_or(rest);
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    p: &'a dyn DgOperad,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let mut sign = 1;
        if self.eat('-') {
            sign = -1;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?.scale_i(sign);
        loop {
            let s = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                return Ok(acc);
            };
            let pos = self.pos();
            let t = self.term()?.scale_i(s);
            acc = acc.checked_add(&t).map_err(|e| err(pos, e.to_string()))?;
        }
    }

    fn term(&mut self) -> Result<Element> {
        if let Some(Tok::Int(k)) = self.peek().cloned() {
            self.at += 1;
            let starts_operand = matches!(self.peek(), Some(Tok::Name(_) | Tok::Marked(..) | Tok::Sym('(')));
            if self.eat('*') || starts_operand {
                return Ok(self.compose()?.scale(&k));
            }
            if k == BigInt::from(0) {
                return Ok(Element::zero());
            }
            return Ok(Element::identity().scale(&k));
        }
        self.compose()
    }

    fn compose(&mut self) -> Result<Element> {
        let mut acc = self.postfix()?;
        while let Some(Tok::Compose(k)) = self.peek().cloned() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.postfix()?;
            acc = acc.compose_at(k, &rhs).map_err(|e| err(pos, e.to_string()))?;
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Element> {
        let mut acc = self.atom()?;
        loop {
            let pos = self.pos();
            if self.eat('(') {
                let args = self.list(')')?;
                acc = acc.compose_full(&args).map_err(|e| err(pos, e.to_string()))?;
            } else if self.eat('{') {
                let args = self.list('}')?;
                acc = acc.brace(&args).map_err(|e| err(pos, e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn list(&mut self, close: char) -> Result<Vec<Element>> {
        let mut v = Vec::new();
        if self.eat(close) {
            return Ok(v);
        }
        loop {
            v.push(self.expr()?);
            if self.eat(close) {
                return Ok(v);
            }
            self.expect(',')?;
        }
    }

    fn atom(&mut self) -> Result<Element> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Int(k)) if k == BigInt::from(0) => {
                self.at += 1;
                Ok(Element::zero())
            }
            Some(Tok::Name(n)) => {
                self.at += 1;
                if n == "id" {
                    return Ok(Element::identity());
                }
                Ok(Element::generator(resolve(self.p, Marker::Plain, &n).map_err(|_| err(pos, format!("unknown name `{n}`")))?))
            }
            Some(Tok::Marked(m, n)) => {
                self.at += 1;
                Ok(Element::generator(resolve(self.p, m, &n).map_err(|_| err(pos, format!("unknown name `{m}:{n}`")))?))
            }
            Some(t) => Err(err(pos, format!("unexpected {t:?}"))),
            None => Err(err(pos, "unexpected end of input")),
        }
    }
}

fn resolve(p: &dyn DgOperad, m: Marker, n: &str) -> Result<Label> {
    p.resolve(m, n).ok_or_else(|| OpError::UnknownGenerator(format!("{m}:{n}")))
}

/// Parses an element over the alphabet of `p`.
pub fn parse_element(p: &dyn DgOperad, src: &str) -> Result<Element> {
    let toks = lex(src)?;
    let mut ps = Parser { toks, at: 0, end: src.len(), p };
    let e = ps.expr()?;
    if ps.at != ps.toks.len() {
        return Err(err(ps.pos(), "trailing input"));
    }
    Ok(e)
}

/// A single label: `name`, `marker:name` or `marker name`.
pub fn parse_label(p: &dyn DgOperad, src: &str) -> Result<Label> {
    let s = src.trim();
    let (m, n) = match s.split_once(':').or_else(|| s.split_once(char::is_whitespace)) {
        Some((m, n)) => (Marker::parse(m.trim()).ok_or_else(|| err(0, format!("unknown marker `{m}`")))?, n.trim()),
        None => (Marker::Plain, s),
    };
    resolve(p, m, n)
}

/// Text form using the label names of `p`; parses back with [`parse_element`].
pub fn to_text(p: &dyn DgOperad, e: &Element) -> String {
    e.to_text_with(&|l| p.label_name(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::Cylinder;
    use crate::examples::presentations::{ainf, unital_nu};
    use crate::presentation::{comp, differential};
    use std::sync::Arc;

    #[test]
    fn compose_and_sum() {
        let p = ainf();
        let mu2 = p.el("mu_2");
        let e = parse_element(&p, "mu_2 o1 mu_2 - mu_2 o_2 mu_2").unwrap();
        assert_eq!(e, comp(&mu2, 1, &mu2) - comp(&mu2, 2, &mu2));
        assert_eq!(parse_element(&p, "mu_2(mu_2, id)").unwrap(), comp(&mu2, 1, &mu2));
        assert_eq!(parse_element(&p, "mu_2{mu_2}").unwrap(), comp(&mu2, 1, &mu2) + comp(&mu2, 2, &mu2));
        assert_eq!(parse_element(&p, "2*mu_3 - 2 mu_3 + 0").unwrap(), Element::zero());
        assert!(differential(&p, &parse_element(&p, "mu_2 o1 mu_2").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn markers_and_superscripts() {
        let c = Cylinder::new(Arc::new(ainf()));
        let e = parse_element(&c, "sigma:mu_3 o2 i1:mu_2").unwrap();
        assert_eq!(parse_element(&c, &to_text(&c, &e)).unwrap(), e);
        assert_eq!(parse_label(&c, "sigma mu_3").unwrap(), parse_label(&c, "sigma:mu_3").unwrap());
        let u = unital_nu(2).unwrap();
        let e = parse_element(&u, "mu o1 nu_3^{1,3} - 2 mu o2 nu_3^{2,3}").unwrap();
        assert_eq!(parse_element(&u, &to_text(&u, &e)).unwrap(), e);
    }

    #[test]
    fn errors() {
        let p = ainf();
        for bad in ["mu_2 o3 mu_2", "mu_9x", "mu_2(", "mu_2 +", "foo:mu_2", "mu_2 $", "mu_2 + mu_3"] {
            assert!(matches!(parse_element(&p, bad), Err(OpError::Parse { .. })), "{bad}");
        }
    }
}
