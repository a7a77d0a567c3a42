use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Coeff, PolyRing, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

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
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(text[start..i].parse().unwrap())));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn poly(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.ring);
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self.error("implicit multiplication is not allowed; use '*'")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.error("expected an unsigned integer"),
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        self.pos += 1;
        let at = self.offset();
        let n = self.uint()?;
        u32::try_from(n).map(Some).map_err(|_| ParseError::Syntax {
            pos: at,
            msg: "exponent too large".into(),
        })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut c = Coeff::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let dat = self.offset();
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(ParseError::Syntax {
                            pos: dat,
                            msg: "division by zero".into(),
                        });
                    }
                    c /= Coeff::from_integer(d);
                }
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or(ParseError::UnknownVariable { pos: at, name })?;
                let v = Polynomial::var(self.ring, idx);
                Ok(match self.exponent()? {
                    Some(e) => v.pow(e),
                    None => v,
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(match self.exponent()? {
                    Some(e) => inner.pow(e),
                    None => inner,
                })
            }
            Some(_) => self.error("expected a number, variable or '('"),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `text` in the polynomial grammar over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: text.len(),
    };
    let out = p.poly()?;
    if p.pos != p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring5() -> Arc<PolyRing> {
        PolyRing::grevlex(&["x0", "x1", "x2", "x3", "x4"]).unwrap()
    }

    #[test]
    fn parses_rnc_quadric() {
        let r = ring5();
        let q = parse_polynomial("x1^2 - x0*x2", &r).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.homogeneous_degree(), Some(2));
        assert_eq!(q.to_string(), "x1^2 - x0*x2");
        let x1 = Polynomial::var(&r, 1);
        let x0x2 = &Polynomial::var(&r, 0) * &Polynomial::var(&r, 2);
        assert_eq!(q, &(&x1 * &x1) - &x0x2);
    }

    #[test]
    fn zero_and_binomial_expansion() {
        let r = ring5();
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        let cube = parse_polynomial("(x0+x1)^3", &r).unwrap();
        let coeffs: Vec<String> = cube.terms().iter().map(|(_, c)| c.to_string()).collect();
        assert_eq!(coeffs, ["1", "3", "3", "1"]);
    }

    #[test]
    fn rationals_and_signs() {
        let r = ring5();
        let f = parse_polynomial("-3/6*x0 + 2*x1^2*x4 - 7", &r).unwrap();
        assert_eq!(f.to_string(), "2*x1^2*x4 - 1/2*x0 - 7");
        assert_eq!(parse_polynomial(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn reports_errors_with_positions() {
        let r = ring5();
        assert_eq!(
            parse_polynomial("x0 + y", &r).unwrap_err(),
            ParseError::UnknownVariable {
                pos: 5,
                name: "y".into()
            }
        );
        assert!(matches!(
            parse_polynomial("2x0", &r),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 x1", &r),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("(x0 + x1", &r),
            Err(ParseError::Syntax { pos: 8, .. })
        ));
        assert!(matches!(
            parse_polynomial("", &r),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_polynomial("x0 $ x1", &r),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(parse_polynomial("1/0", &r).is_err());
    }
}
