//! Text syntax for algebra elements.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' nat)?
//! atom     := 'q' | 'p' | 'h' | 't' | 'i' | rational | '(' expr ')'
//! rational := int ('/' nat)?
//! ```
//!
//! `h` is ħ. Products keep the written order; the printer emits the
//! canonical form (monomials by ascending total degree, q before p).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, Backend, Context, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, rat, GaussianRational, ScalarPoly};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Sym(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Num(digits.parse().expect("ascii digits")), line: l, column: col });
            continue;
        } else {
            match c {
                'q' | 'p' | 'h' | 't' | 'i' => Tok::Sym(c),
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(Error::Parse {
                        line: l,
                        column: col,
                        message: format!("unexpected character '{other}'"),
                    })
                }
            }
        };
        chars.next();
        column += 1;
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    ctx: Context,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, tok: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: tok.line, column: tok.column, message: message.into() })
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let negate = match self.peek().tok {
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
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().tok {
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

    fn term(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        let start = self.peek().clone();
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let tok = self.bump();
        let Tok::Num(n) = tok.tok.clone() else {
            return self.error(&tok, "expected a natural-number exponent");
        };
        let n: u32 = match u32::try_from(n) {
            Ok(n) => n,
            Err(_) => return self.error(&tok, "exponent too large"),
        };
        if start.tok == Tok::Sym('t') && n > self.ctx.order {
            return Err(Error::OrderExceeded { exponent: n, order: self.ctx.order });
        }
        Ok(base.pow(n))
    }

    fn atom(&mut self) -> Result<AlgebraElement> {
        let tok = self.bump();
        let c = self.ctx;
        match tok.tok {
            Tok::Sym('q') => Ok(AlgebraElement::q(c)),
            Tok::Sym('p') => Ok(AlgebraElement::p(c)),
            Tok::Sym('h') => Ok(AlgebraElement::hbar(c)),
            Tok::Sym('t') => {
                if c.order == 0 {
                    return Err(Error::OrderExceeded { exponent: 1, order: 0 });
                }
                Ok(AlgebraElement::t(c))
            }
            Tok::Sym('i') => Ok(AlgebraElement::scalar(c, GaussianRational::i())),
            Tok::Num(n) => {
                let mut value = BigRational::from_integer(n);
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let dtok = self.bump();
                    let Tok::Num(d) = dtok.tok.clone() else {
                        return self.error(&dtok, "expected a denominator");
                    };
                    if d.is_zero() {
                        return self.error(&dtok, "zero denominator");
                    }
                    value /= BigRational::from_integer(d);
                }
                Ok(AlgebraElement::scalar(c, GaussianRational::real(value)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected ')'");
                }
                Ok(inner)
            }
            Tok::End => self.error(&tok, "unexpected end of input"),
            _ => self.error(&tok, "expected q, p, h, t, i, a number or '('"),
        }
    }
}

/// Parses an element in the given context.
pub fn parse(text: &str, ctx: Context) -> Result<AlgebraElement> {
    let mut parser = Parser { tokens: tokenize(text)?, pos: 0, ctx };
    let out = parser.expr()?;
    let tail = parser.peek().clone();
    if tail.tok != Tok::End {
        return parser.error(&tail, "unexpected trailing input");
    }
    Ok(out)
}

/// Parses a numeric constant such as `1/2+3/4*i`.
pub fn parse_constant(text: &str) -> Result<GaussianRational> {
    let el = parse(text, Context::moyal(0))?;
    let value = if el.is_zero() {
        Some(GaussianRational::zero())
    } else if el.num_terms() == 1 {
        el.raw_terms().get(&(0, 0)).and_then(|c| c.as_constant())
    } else {
        None
    };
    value.ok_or_else(|| Error::Parse { line: 1, column: 1, message: format!("'{text}' is not a numeric constant") })
}

/// Monomial ordering for output: ascending total degree, then q before p.
pub fn monomial_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0))
}

fn push_factor(out: &mut Vec<String>, sym: &str, exp: u32) {
    match exp {
        0 => {}
        1 => out.push(sym.to_string()),
        e => out.push(format!("{sym}^{e}")),
    }
}

/// Coefficients in the basis of written products `q^a*p^b`. For Moyal
/// symbols `q^a p^b = Σ_k (−iħ/2)^k k! C(a,k) C(b,k) q^(a−k)⋆p^(b−k)`.
fn written_terms(x: &AlgebraElement) -> BTreeMap<Monomial, ScalarPoly> {
    if x.backend() == Backend::Heisenberg {
        return x.raw_terms().clone();
    }
    let half = GaussianRational::new(rat(0, 1), rat(-1, 2));
    let mut out: BTreeMap<Monomial, ScalarPoly> = BTreeMap::new();
    for (&(a, b), c) in x.raw_terms() {
        for k in 0..=a.min(b) {
            let weight = BigRational::from_integer(factorial(k) * binomial(a, k) * binomial(b, k));
            let term = c.shifted(&half.pow(k).scale(&weight), k, 0);
            let slot = out.entry((a - k, b - k)).or_insert_with(|| ScalarPoly::zero(c.order()));
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Canonical text of an element; products are written in normal order
/// (all `q` left of all `p`).
pub fn print(x: &AlgebraElement) -> String {
    let written = written_terms(x);
    let mut monomials: Vec<(&Monomial, _)> = written.iter().collect();
    monomials.sort_by(|a, b| monomial_order(a.0, b.0));
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (&(a, b), coeff) in monomials {
        let mut scalar_terms: Vec<_> = coeff.terms().collect();
        scalar_terms.sort_by_key(|((h, t), _)| (*t, *h));
        for (&(h, t), c) in scalar_terms {
            for (value, imaginary) in [(&c.re, false), (&c.im, true)] {
                if value.is_zero() {
                    continue;
                }
                let mut factors = Vec::new();
                if imaginary {
                    factors.push("i".to_string());
                }
                push_factor(&mut factors, "h", h);
                push_factor(&mut factors, "t", t);
                push_factor(&mut factors, "q", a);
                push_factor(&mut factors, "p", b);
                let magnitude = value.abs();
                if !magnitude.is_one() || factors.is_empty() {
                    factors.insert(0, magnitude.to_string());
                }
                pieces.push((value.is_negative(), factors.join("*")));
            }
        }
    }
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in pieces.into_iter().enumerate() {
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normal_orders_commutator() {
        let c = Context::heisenberg(2);
        let x = parse("q*p - p*q", c).unwrap();
        assert_eq!(print(&x), "i*h");
    }

    #[test]
    fn parse_rational_coefficient() {
        let c = Context::moyal(1);
        let x = parse("3/2*q^2", c).unwrap();
        assert_eq!(print(&x), "3/2*q^2");
    }

    #[test]
    fn syntax_error_column() {
        let err = parse("q*", Context::moyal(1)).unwrap_err();
        match err {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse("q +\n  (p", Context::moyal(1)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 5, .. }), "{err:?}");
        assert!(parse("q $ p", Context::moyal(1)).is_err());
        assert!(parse("1/0", Context::moyal(1)).is_err());
    }

    #[test]
    fn literal_beyond_truncation_order() {
        assert!(matches!(parse("t^3", Context::moyal(2)), Err(Error::OrderExceeded { exponent: 3, order: 2 })));
        assert!(matches!(parse("t", Context::moyal(0)), Err(Error::OrderExceeded { .. })));
        // products are truncated, not rejected
        assert!(parse("t^2*t", Context::moyal(2)).unwrap().is_zero());
    }

    #[test]
    fn canonical_printing() {
        let c = Context::heisenberg(3);
        let x = parse("p^2 - q + (1/2 - i)*h*t*q*p + 7 - t^2*q^2", c).unwrap();
        assert_eq!(print(&x), "7 - q - t^2*q^2 + 1/2*h*t*q*p - i*h*t*q*p + p^2");
        assert_eq!(parse(&print(&x), c).unwrap(), x);
        assert_eq!(print(&AlgebraElement::zero(c)), "0");
        assert_eq!(print(&parse("-1", c).unwrap()), "-1");
    }

    #[test]
    fn constants() {
        assert_eq!(
            parse_constant("1/2+3/4*i").unwrap(),
            GaussianRational::new(crate::scalar::rat(1, 2), crate::scalar::rat(3, 4))
        );
        assert_eq!(parse_constant("-2").unwrap(), GaussianRational::from_int(-2));
        assert!(parse_constant("q").is_err());
        assert!(parse_constant("h").is_err());
    }
}
