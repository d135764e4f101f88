//! Plain-text grammar for maps and curves.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'x' | 'y' | '(' expr ')'
//! curve  := 'y^2' '=' expr                    expr a polynomial in x
//! ```
//!
//! `−`, `·` and `×` are accepted as synonyms of `-` and `*`.

use super::{BelyiError, EllipticModel, FunctionFieldElement};
use crate::exact::poly::QPoly;
use crate::exact::rational::Rational;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, BelyiError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let t: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(t.parse().expect("digits")));
            }
            'x' => out.push(Tok::X),
            'y' => out.push(Tok::Y),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' | '×' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(BelyiError::Parse(format!("unexpected character '{c}' in \"{s}\""))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    curve: &'a EllipticModel,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, what: &str) -> BelyiError {
        BelyiError::Parse(format!("{what} at token {} in \"{}\"", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<FunctionFieldElement, BelyiError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FunctionFieldElement, BelyiError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?, self.curve);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d, self.curve)?;
                }
                Some(Tok::Num(_) | Tok::X | Tok::Y | Tok::LParen) => {
                    acc = acc.mul(&self.unary()?, self.curve);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FunctionFieldElement, BelyiError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FunctionFieldElement, BelyiError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.to_string().parse::<u32>().map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        let p = base.pow(e, self.curve);
        if neg {
            FunctionFieldElement::one().div(&p, self.curve)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<FunctionFieldElement, BelyiError> {
        let t = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(FunctionFieldElement::constant(Rational::from_integer(n))),
            Tok::X => Ok(FunctionFieldElement::x()),
            Tok::Y => Ok(FunctionFieldElement::y()),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parse a map on the curve y² = f(x).
pub fn parse_map(s: &str, curve: &EllipticModel) -> Result<FunctionFieldElement, BelyiError> {
    let mut p = Parser { toks: lex(s)?, pos: 0, curve, src: s };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parse a polynomial in x.
pub fn parse_poly(s: &str) -> Result<QPoly, BelyiError> {
    // y never appears, so any squarefree curve serves as context
    let dummy = EllipticModel { f: QPoly::from_ints(&[0, 1, 0, 1]) };
    let e = parse_map(s, &dummy)?;
    if !e.b.is_zero() || e.a.den().deg() != 0 {
        return Err(BelyiError::Parse(format!("\"{s}\" is not a polynomial in x")));
    }
    let c = e.a.den().lc();
    Ok(e.a.num().scale(&(Rational::from_integer(1.into()) / c)))
}

/// Parse "y^2 = f(x)".
pub fn parse_curve(s: &str) -> Result<EllipticModel, BelyiError> {
    let (lhs, rhs) = s.split_once('=').ok_or_else(|| BelyiError::Parse(format!("missing '=' in \"{s}\"")))?;
    let l: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
    if l != "y^2" && l != "y²" {
        return Err(BelyiError::Parse(format!("left side must be y^2 in \"{s}\"")));
    }
    EllipticModel::new(parse_poly(rhs)?)
}
