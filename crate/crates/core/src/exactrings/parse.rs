//! Recursive-descent parser for ring element expressions.

use num_bigint::BigInt;

use super::{Elem, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} of {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Elem> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { self.ring.add(&acc, &t) } else { self.ring.sub(&acc, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Elem> {
        let mut acc = self.power()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Elem> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
                    return Ok(self.ring.pow(&base, k));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Elem> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(self.ring.from_bigint(&n)),
            Tok::Ident(name) => self.ring.var_named(&name).ok_or_else(|| {
                Error::Parse(format!("unknown symbol {name:?} for ring {}", self.ring))
            }),
            Tok::Op('-') => {
                let a = self.power()?;
                Ok(self.ring.neg(&a))
            }
            Tok::Op('+') => self.power(),
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub(super) fn parse_elem(ring: &Ring, s: &str) -> Result<Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty ring element".into()));
    }
    let mut p = Parser { ring, toks, pos: 0, src: s };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats_round_trip() {
        let rings: Vec<Ring> = ["int", "mod:7", "dual:mod:4", "dual:int", "poly:xi,t:int", "poly:x:dual:mod:3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let exprs = ["0", "-5", "3*4 - 1", "(2+eps)^2", "xi^2*t - 3*t + 1", "x*(1+eps) - eps"];
        for r in &rings {
            for e in exprs {
                if let Ok(x) = r.parse(e) {
                    let back = r.parse(&r.format(&x)).unwrap();
                    assert_eq!(back, x, "ring {r}, expr {e}");
                }
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        let r: Ring = "int".parse().unwrap();
        assert!(r.parse("x").is_err());
        assert!(r.parse("1 +").is_err());
        assert!(r.parse("(1").is_err());
        assert!(r.parse("2 3").is_err());
        assert!(r.parse("").is_err());
        assert!(r.parse("2^x").is_err());
    }

    #[test]
    fn dual_parse_values() {
        let r: Ring = "dual:mod:4".parse().unwrap();
        assert_eq!(r.parse("(1+eps)^2").unwrap(), r.parse("1 + 2*eps").unwrap());
        assert!(r.is_zero(&r.parse("eps*eps").unwrap()));
    }
}
