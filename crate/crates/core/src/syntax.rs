//! Text grammars.
//!
//! * field spec: `p` (prime field) or `p,ext` (quadratic extension);
//! * dense polynomials: any `+ - * ^ ( )` expression over integers, `a` and
//!   `x`, e.g. `x^2+(1+a)*x+1`;
//! * factored splitting polynomials: `*`-products of `x^e`,
//!   `(x-<elem>)^e` or `(x+<elem>)^e`, where `<elem>` is a whole element
//!   (`(x-1+a)` is `x - (1+a)`). The constant `1` is the empty product.

use crate::divfun::SplittingPoly;
use crate::error::{Error, Result};
use crate::field::{Ext, FieldCtx};
use crate::poly::Poly;

pub fn parse_field(spec: &str) -> Result<FieldCtx> {
    let spec = spec.trim();
    let (p_txt, ext) = match spec.split_once(',') {
        None => (spec, Ext::Prime),
        Some((p, e)) if e.trim() == "ext" => (p, Ext::Quadratic),
        Some((_, e)) => {
            return Err(Error::parse(
                spec.len() - e.len(),
                format!("unknown field flag {e:?}, expected \"ext\""),
            ))
        }
    };
    let p: u32 = p_txt
        .trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("bad prime {p_txt:?}")))?;
    FieldCtx::new(p, ext)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(u64),
    X,
    A,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        let tok = match c {
            ' ' | '\t' | '\n' => {
                k += 1;
                continue;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                let n = s[start..k]
                    .parse()
                    .map_err(|_| Error::parse(start, "integer literal too large"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            'x' => Tok::X,
            'a' => Tok::A,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(Error::parse(k, format!("unexpected character {other:?}"))),
        };
        out.push((k, tok));
        k += 1;
    }
    Ok(out)
}

struct ExprParser<'a> {
    ctx: FieldCtx,
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                u32::try_from(n).map_err(|_| Error::parse(self.offset(), "exponent too large"))
            }
            _ => Err(Error::parse(self.offset(), "expected an exponent")),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let at = self.offset();
        let tok = self
            .peek()
            .ok_or_else(|| Error::parse(at, "unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Poly::constant(
                self.ctx.from_int((n % self.ctx.p() as u64) as i64),
            )),
            Tok::X => Ok(Poly::x(self.ctx)),
            Tok::A => self
                .ctx
                .alpha()
                .map(Poly::constant)
                .ok_or_else(|| Error::parse(at, format!("'a' is undefined in {}", self.ctx))),
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(Error::parse(at, format!("unexpected {other:?}"))),
        }
    }
}

/// Parses the dense expression syntax.
pub fn parse_poly(ctx: FieldCtx, s: &str) -> Result<Poly> {
    let toks = tokenize(s)?;
    let mut parser = ExprParser {
        ctx,
        toks: &toks,
        pos: 0,
        end: s.len(),
    };
    let p = parser.expr()?;
    if parser.pos != toks.len() {
        return Err(Error::parse(parser.offset(), "trailing input"));
    }
    Ok(p)
}

/// Parses the factored syntax into a [`SplittingPoly`].
pub fn parse_splitting(ctx: FieldCtx, s: &str) -> Result<SplittingPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = SplittingPoly::new(ctx);
    if compact == "1" {
        return Ok(out);
    }
    let bytes = compact.as_bytes();
    let mut k = 0;
    loop {
        let (root, next) = if compact[k..].starts_with("(x") {
            let close = compact[k..]
                .find(')')
                .map(|c| c + k)
                .ok_or_else(|| Error::parse(k, "missing ')'"))?;
            let sign = bytes.get(k + 2).copied();
            let elem_txt = &compact[k + 3..close.max(k + 3)];
            let elem = match sign {
                Some(b'-') => ctx.parse_elem(elem_txt)?,
                Some(b'+') => -ctx.parse_elem(elem_txt)?,
                _ => return Err(Error::parse(k + 2, "expected '(x-<elem>)' or '(x+<elem>)'")),
            };
            (elem, close + 1)
        } else if compact[k..].starts_with('x') {
            (ctx.zero(), k + 1)
        } else {
            return Err(Error::parse(k, "expected a factor 'x' or '(x-<elem>)'"));
        };
        k = next;
        let mut exp = 1u32;
        if bytes.get(k) == Some(&b'^') {
            let start = k + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            exp = compact[start..end]
                .parse()
                .map_err(|_| Error::parse(start, "expected an exponent"))?;
            k = end;
        }
        out.add_exponent(root, exp);
        match bytes.get(k) {
            None => return Ok(out),
            Some(b'*') => k += 1,
            Some(_) => return Err(Error::parse(k, "expected '*' between factors")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("2,ext").unwrap(), FieldCtx::f4());
        assert_eq!(parse_field("3").unwrap(), FieldCtx::prime(3).unwrap());
        assert!(matches!(parse_field("4,ext"), Err(Error::NotPrime(4))));
        assert!(matches!(parse_field("3,cubic"), Err(Error::Parse { .. })));
    }

    #[test]
    fn dense_expressions() {
        let f9 = FieldCtx::quadratic(3).unwrap();
        let p = parse_poly(f9, "x^2+(1+a)*x+1").unwrap();
        let a = f9.alpha().unwrap();
        assert_eq!(p.coeffs(), [f9.one(), f9.one() + a, f9.one()]);
        assert_eq!(
            parse_poly(f9, "-x + 4").unwrap(),
            parse_poly(f9, "2*x+1").unwrap()
        );
        assert!(parse_poly(f9, "x^").is_err());
        assert!(parse_poly(f9, "(x+1").is_err());
        assert!(parse_poly(f9, "x y").is_err());
        assert!(parse_poly(FieldCtx::prime(3).unwrap(), "x+a").is_err());
    }

    #[test]
    fn factored_syntax() {
        let f9 = FieldCtx::quadratic(3).unwrap();
        let s = parse_splitting(f9, "(x-1+2*a)^3*x^2*(x+1)").unwrap();
        assert_eq!(s.exponent(f9.elem(1, 2).unwrap()), 3);
        assert_eq!(s.exponent(f9.zero()), 2);
        assert_eq!(s.exponent(f9.from_int(2)), 1);
        assert_eq!(parse_splitting(f9, &s.to_string()).unwrap(), s);
        // repeated roots accumulate, zero exponents vanish
        let s = parse_splitting(f9, "(x-0)^2*x*(x-1)^0").unwrap();
        assert_eq!(s.exponent(f9.zero()), 3);
        assert_eq!(s.omega(), 1);
        assert!(parse_splitting(f9, "1").unwrap().is_one());
        assert!(parse_splitting(f9, "(x-1)(x-2)").is_err());
        assert!(parse_splitting(f9, "(x*1)").is_err());
        assert!(parse_splitting(f9, "x^2+1").is_err());
    }
}
