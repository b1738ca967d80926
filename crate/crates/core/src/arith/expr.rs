//! Text form of polynomials and rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! Symbols are `x`, `y` and `a`. Printing lists terms in descending
//! graded-lexicographic order so the output is canonical.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Monomial, Poly, Rational, Var};
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

pub const DEFAULT_NAMES: [&str; 4] = ["x", "y", "a", "t"];

pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    Parser::new(text, false).parse()
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(text: &str) -> Result<Poly> {
    let f = parse_ratfunc(text)?;
    if !f.is_polynomial() {
        return Err(Error::Parse {
            pos: 0,
            expected: "a polynomial".into(),
            found: "a proper fraction".into(),
        });
    }
    Ok(f.into_parts().0)
}

#[cfg(test)]
/// Like [`parse_ratfunc`] but also accepts the internal symbol `t`.
pub(crate) fn parse_internal(text: &str) -> Result<RatFunc> {
    Parser::new(text, true).parse()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(Var),
    Op(char),
    End,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(text: &str, allow_t: bool) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let end = if j < chars.len() {
                    chars[j].0
                } else {
                    text.len()
                };
                let n: BigInt = text[pos..end].parse().expect("digits");
                toks.push((pos, Tok::Int(n)));
                i = j;
            } else {
                let tok = match c {
                    'x' => Tok::Sym(Var::X),
                    'y' => Tok::Sym(Var::Y),
                    'a' => Tok::Sym(Var::A),
                    't' if allow_t => Tok::Sym(Var::T),
                    other => Tok::Op(other),
                };
                toks.push((pos, tok));
                i += 1;
            }
        }
        toks.push((text.len(), Tok::End));
        Parser { toks, at: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn error(&self, expected: &str) -> Error {
        let found = match self.peek() {
            Tok::Int(n) => n.to_string(),
            Tok::Sym(v) => DEFAULT_NAMES[v.index()].to_string(),
            Tok::Op(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        };
        Error::Parse {
            pos: self.pos(),
            expected: expected.to_string(),
            found,
        }
    }

    fn parse(mut self) -> Result<RatFunc> {
        let f = self.expr()?;
        if *self.peek() != Tok::End {
            return Err(self.error("operator or end of input"));
        }
        Ok(f)
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.at += 1;
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.at += 1;
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Tok::Op('-') => {
                self.at += 1;
                Ok(-self.unary()?)
            }
            Tok::Op('+') => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.at += 1;
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error("non-negative integer exponent"));
        };
        let Ok(e) = u32::try_from(n) else {
            return Err(self.error("exponent that fits in 32 bits"));
        };
        self.at += 1;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Tok::Sym(v) => {
                self.at += 1;
                Ok(RatFunc::var(v))
            }
            Tok::Op('(') => {
                self.at += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return Err(self.error("')'"));
                }
                self.at += 1;
                Ok(inner)
            }
            _ => Err(self.error("number, symbol or '('")),
        }
    }
}

fn write_monomial(out: &mut String, m: &Monomial, names: &[&str; 4]) {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(names[v.index()]);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Prints `p` with the given names for `x`, `y`, `a`, `t`.
pub fn poly_to_string(p: &Poly, names: &[&str; 4]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        if *m == Monomial::ONE {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            write_monomial(&mut out, m, names);
        }
    }
    out
}

fn needs_parens_as_numerator(p: &Poly) -> bool {
    p.num_terms() > 1
}

/// Denominators are monic, so a single term is a bare monomial.
fn needs_parens_as_denominator(p: &Poly) -> bool {
    match p.leading_term() {
        Some((m, _)) if p.num_terms() == 1 => m.0.iter().filter(|e| **e > 0).count() > 1,
        _ => true,
    }
}

pub fn ratfunc_to_string(f: &RatFunc, names: &[&str; 4]) -> String {
    let num = poly_to_string(f.num(), names);
    if f.is_polynomial() {
        return num;
    }
    let den = poly_to_string(f.den(), names);
    let num = if needs_parens_as_numerator(f.num()) {
        format!("({num})")
    } else {
        num
    };
    let den = if needs_parens_as_denominator(f.den()) {
        format!("({den})")
    } else {
        den
    };
    format!("{num}/{den}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&poly_to_string(self, &DEFAULT_NAMES))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ratfunc_to_string(self, &DEFAULT_NAMES))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::{rat, ratio};

    #[test]
    fn parses_example_function() {
        let f = parse_ratfunc("x*y/(y^2+x^3)").unwrap();
        assert_eq!(f.num(), &parse_poly("x*y").unwrap());
        assert_eq!(f.den(), &parse_poly("x^3+y^2").unwrap());
        assert_eq!(f.to_string(), "x*y/(x^3 + y^2)");
    }

    #[test]
    fn parenthesized_symbol() {
        assert_eq!(parse_ratfunc("((x))").unwrap(), RatFunc::var(Var::X));
    }

    #[test]
    fn parametric_element() {
        let f = parse_ratfunc("y^2/(x+a*y)").unwrap();
        assert!(f.contains_var(Var::A));
        assert_eq!(f.to_string(), "y^2/(y*a + x)");
    }

    #[test]
    fn rational_constants() {
        let p = parse_poly("3/2*x*y - 1/3").unwrap();
        assert_eq!(p.coeff(&Monomial([1, 1, 0, 0])), ratio(3, 2));
        assert_eq!(p.constant_coeff(), ratio(-1, 3));
        assert_eq!(p.to_string(), "3/2*x*y - 1/3");
    }

    #[test]
    fn canonical_order_is_descending_grlex() {
        let p = parse_poly("1 + y + x + y^2 + x*y + x^2").unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + y^2 + x + y + 1");
        let q = parse_poly("x^2 - a^2*y^2").unwrap();
        assert_eq!(q.to_string(), "-y^2*a^2 + x^2");
    }

    #[test]
    fn errors_carry_position() {
        match parse_ratfunc("x + * y") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_ratfunc("x^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfunc("(x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfunc("2x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfunc("t"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfunc("x/(y-y)"), Err(Error::ZeroDivisor)));
    }

    #[test]
    fn negative_and_monomial_denominators_round_trip() {
        for s in [
            "-x/y",
            "x/(x*y)",
            "(x - y)/(2*x)",
            "1/(y + x)",
            "-3/2",
            "x/(1/2)",
        ] {
            let f = parse_ratfunc(s).unwrap();
            let again = parse_ratfunc(&f.to_string()).unwrap();
            assert_eq!(f, again, "{s} printed as {f}");
        }
        assert_eq!(parse_poly("-x + 2").unwrap().to_string(), "-x + 2");
        assert_eq!(Poly::constant(rat(0)).to_string(), "0");
    }

    #[test]
    fn internal_symbol() {
        let f = parse_internal("t^2 - a*t").unwrap();
        assert!(f.contains_var(Var::T));
    }
}
