//! Text grammar for polynomials and rational scalars.
//!
//! Literals are integers or fractions ("3", "-3/2"), the variables are `x`
//! and `y`, the operators are `+ - * ^` with `^` restricted to nonnegative
//! integer exponents, and parentheses group. Implicit multiplication is not
//! allowed. Parsing expands everything into the sparse canonical form, so
//! render-then-parse is the identity.

use std::fmt;

use num::{BigInt, Zero};
use tamedec_core::poly::{BiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { position: usize, message: String },
    NegativeExponent { position: usize },
}

impl ParseError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { position, message } => {
                write!(f, "parse error at byte {position}: {message}")
            }
            ParseError::NegativeExponent { position } => {
                write!(f, "negative exponent at byte {position}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    X,
    Y,
    Number { numer: BigInt, denom: Option<BigInt> },
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                tokens.push((start, Tok::Plus));
                i += 1;
            }
            b'-' => {
                tokens.push((start, Tok::Minus));
                i += 1;
            }
            b'*' => {
                tokens.push((start, Tok::Star));
                i += 1;
            }
            b'^' => {
                tokens.push((start, Tok::Caret));
                i += 1;
            }
            b'(' => {
                tokens.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                tokens.push((start, Tok::RParen));
                i += 1;
            }
            b'x' => {
                tokens.push((start, Tok::X));
                i += 1;
            }
            b'y' => {
                tokens.push((start, Tok::Y));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().unwrap();
                let mut denom = None;
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let dstart = i + 1;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let d: BigInt = text[dstart..i].parse().unwrap();
                    if d.is_zero() {
                        return Err(ParseError::syntax(dstart, "zero denominator"));
                    }
                    denom = Some(d);
                }
                tokens.push((start, Tok::Number { numer, denom }));
            }
            c => {
                return Err(ParseError::syntax(
                    start,
                    format!("unexpected character '{}'", c as char),
                ));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<&'a (usize, Tok)> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (Tok::Plus | Tok::Minus)) = self.peek() {
            let subtract = *op == Tok::Minus;
            self.advance();
            let rhs = self.term()?;
            acc = if subtract { &acc - &rhs } else { &acc + &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.advance();
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.advance();
            return Ok(-&self.factor()?);
        }
        let mut base = self.primary()?;
        while self.peek() == Some(&Tok::Caret) {
            self.advance();
            base = base.pow(self.exponent()?);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let position = self.here();
        match self.advance().map(|(_, t)| t) {
            Some(Tok::Minus) => Err(ParseError::NegativeExponent { position }),
            Some(Tok::Number { numer, denom }) => {
                if denom.is_some() {
                    return Err(ParseError::syntax(position, "exponent must be an integer"));
                }
                u32::try_from(numer.clone())
                    .map_err(|_| ParseError::syntax(position, "exponent too large"))
            }
            _ => Err(ParseError::syntax(position, "expected integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<BiPoly, ParseError> {
        let position = self.here();
        match self.advance().map(|(_, t)| t) {
            Some(Tok::X) => Ok(BiPoly::x()),
            Some(Tok::Y) => Ok(BiPoly::y()),
            Some(Tok::Number { numer, denom }) => Ok(BiPoly::constant(Rational::new(
                numer.clone(),
                denom.clone().unwrap_or_else(|| BigInt::from(1)),
            ))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.advance().map(|(_, t)| t) {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::syntax(position, "unclosed parenthesis")),
                }
            }
            Some(_) => Err(ParseError::syntax(position, "expected a value")),
            None => Err(ParseError::syntax(position, "unexpected end of input")),
        }
    }
}

/// Parses a polynomial from the text grammar, fully expanded.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos < tokens.len() {
        let position = parser.here();
        let message = match parser.peek() {
            Some(Tok::X | Tok::Y | Tok::Number { .. } | Tok::LParen) => {
                "expected an operator (implicit multiplication is not allowed)"
            }
            _ => "unexpected trailing input",
        };
        return Err(ParseError::syntax(position, message));
    }
    Ok(poly)
}

/// Parses a rational scalar: "p", "-p" or "p/q".
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let trimmed = text.trim();
    let (negative, digits) = match trimmed.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, trimmed),
    };
    let (numer_str, denom_str) = match digits.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (digits, None),
    };
    let parse_int = |s: &str| -> Result<BigInt, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::syntax(0, format!("invalid rational '{trimmed}'")));
        }
        Ok(s.parse().unwrap())
    };
    let numer = parse_int(numer_str)?;
    let denom = match denom_str {
        Some(d) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ParseError::syntax(0, "zero denominator"));
            }
            d
        }
        None => BigInt::from(1),
    };
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use tamedec_core::poly::{rat, ratio};

    #[test]
    fn grammar_examples() {
        let p = parse_poly("x^2*y - 3/2").unwrap();
        assert_eq!(
            p,
            BiPoly::from_terms([(2, 1, rat(1)), (0, 0, ratio(-3, 2))])
        );
        let p = parse_poly("(y+x^2)^2 + x").unwrap();
        assert_eq!(
            p,
            BiPoly::from_terms([(1, 0, rat(1)), (0, 2, rat(1)), (2, 1, rat(2)), (4, 0, rat(1))])
        );
        assert_eq!(
            parse_poly("x^-1"),
            Err(ParseError::NegativeExponent { position: 2 })
        );
    }

    #[test]
    fn parse_handles_signs_and_powers() {
        assert_eq!(parse_poly("-x").unwrap(), -&BiPoly::x());
        assert_eq!(parse_poly("-3/2").unwrap(), BiPoly::constant(ratio(-3, 2)));
        assert_eq!(parse_poly("x^0").unwrap(), BiPoly::one());
        assert_eq!(parse_poly("2^3").unwrap(), BiPoly::constant(rat(8)));
        assert_eq!(
            parse_poly("-(x - y)").unwrap(),
            &BiPoly::y() - &BiPoly::x()
        );
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x +"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x z"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x^(2)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x^1/2"), Err(ParseError::Syntax { .. })));
        // implicit multiplication
        let err = parse_poly("2x").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { position: 1, .. }));
    }

    #[test]
    fn parse_rational_examples() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), ratio(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = BiPoly> {
        proptest::collection::vec(((0u32..7, 0u32..7), (-9i64..=9, 1i64..=5)), 0..8).prop_map(
            |v| {
                BiPoly::from_terms(
                    v.into_iter().map(|((i, j), (n, d))| (i, j, ratio(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(p in arb_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse_poly(&text).unwrap(), p);
        }
    }
}
