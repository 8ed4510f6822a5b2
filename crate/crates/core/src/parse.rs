//! Recursive-descent reader for polynomial expressions.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" nat)?
//! base   := ["-"] nat ("/" nat)? | varname | "(" expr ")"
//! ```
//!
//! Whitespace is insignificant and juxtaposition is not multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().expect("digits"))));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {}", describe(self.peek())),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Tok::Num(n) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    self.at -= 1;
                    return self.unexpected("a natural exponent");
                }
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                if !matches!(self.peek(), Tok::Num(_)) {
                    return self.unexpected("a number after unary `-`");
                }
                Ok(-&self.base()?)
            }
            Tok::Num(n) => {
                self.bump();
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Tok::Num(d) => {
                            if d == BigInt::from(0) {
                                return Err(Error::Syntax {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            q /= BigRational::from_integer(d);
                        }
                        _ => {
                            self.at -= 1;
                            return self.unexpected("a denominator");
                        }
                    }
                }
                let c = self.ring.field().from_rational(&q).map_err(|_| Error::Syntax {
                    pos,
                    msg: "denominator vanishes in the coefficient field".into(),
                })?;
                Ok(self.ring.constant(c))
            }
            Tok::Ident(name) => {
                self.bump();
                let i = self.ring.var_index(&name)?;
                Ok(self.ring.var(i))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.unexpected("`)`");
                }
                self.bump();
                Ok(inner)
            }
            _ => self.unexpected("a number, variable or `(`"),
        }
    }
}

/// Parse `text` into a canonical polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        ring,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.unexpected("an operator or end of input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;

    fn ring() -> Ring {
        Ring::new(Field::Rational, ["x", "y", "z"]).unwrap()
    }

    #[test]
    fn reads_products_and_constants() {
        let r = ring();
        let p = parse_poly("x*y + 2", &r).unwrap();
        assert_eq!(p, &(&r.var(0) * &r.var(1)) + &r.from_i64(2));
    }

    #[test]
    fn reads_rational_coefficients() {
        let r = ring();
        let p = parse_poly("x^3 - 1/2*y", &r).unwrap();
        let half = r.constant(Field::Rational.from_ratio(1, 2).unwrap());
        assert_eq!(p, &r.var(0).pow(3) - &(&half * &r.var(1)));
    }

    #[test]
    fn malformed_input_reports_position() {
        let r = ring();
        assert_eq!(
            parse_poly("x + * y", &r),
            Err(Error::Syntax {
                pos: 4,
                msg: "expected a number, variable or `(`, found `*`".into()
            })
        );
        match parse_poly("x +", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn juxtaposition_is_rejected() {
        assert!(matches!(parse_poly("2 x", &ring()), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x y", &ring()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(parse_poly("w + 1", &ring()), Err(Error::UnknownVariable("w".into())));
    }

    #[test]
    fn parentheses_and_powers() {
        let r = ring();
        let p = parse_poly("(x + y)^2", &r).unwrap();
        assert_eq!(p, parse_poly("x^2 + 2*x*y + y^2", &r).unwrap());
        assert_eq!(parse_poly("-(x - y)", &r).unwrap(), parse_poly("y - x", &r).unwrap());
        assert_eq!(parse_poly("x*-2", &r).unwrap(), parse_poly("-2*x", &r).unwrap());
    }

    #[test]
    fn prime_field_reduction() {
        let r = Ring::new(Field::prime(5).unwrap(), ["x"]).unwrap();
        assert_eq!(parse_poly("1/2*x", &r).unwrap(), parse_poly("3*x", &r).unwrap());
        assert!(matches!(parse_poly("1/5", &r), Err(Error::Syntax { .. })));
        assert!(parse_poly("5*x", &r).unwrap().is_zero());
    }
}
