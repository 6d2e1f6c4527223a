//! Parser for the sparse human polynomial syntax: `t^4 - 1`,
//! `3/2*t^2 + t - 5`. Literals must be exact rationals; anything else
//! (decimals, symbols) is rejected.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::valuation::Rational;

use super::rational::RationalPoly;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Var,
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' => i += 1,
            't' => {
                tokens.push(Token::Var);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '*' => {
                tokens.push(Token::Star);
                i += 1;
            }
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = input[start..i].parse().unwrap();
                // optional exact-fraction denominator
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::PolySyntax(
                            "expected denominator after '/'".into(),
                        ));
                    }
                    let den: BigInt = input[dstart..i].parse().unwrap();
                    if den == BigInt::from(0) {
                        return Err(Error::PolySyntax("zero denominator".into()));
                    }
                    tokens.push(Token::Number(Rational::new(num, den)));
                } else {
                    tokens.push(Token::Number(Rational::from(num)));
                }
            }
            _ => {
                return Err(Error::PolySyntax(format!(
                    "unexpected character '{c}' (only exact rationals and t are allowed)"
                )))
            }
        }
    }
    Ok(tokens)
}

/// Parse the sparse text format into a dense polynomial.
pub fn parse_poly(input: &str) -> Result<RationalPoly> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::PolySyntax("empty polynomial".into()));
    }
    let mut terms: Vec<(Rational, usize)> = Vec::new();
    let mut pos = 0;
    let mut sign = Rational::one();
    // leading sign
    while pos < tokens.len() {
        match tokens[pos] {
            Token::Minus => {
                sign = -sign;
                pos += 1;
            }
            Token::Plus => pos += 1,
            _ => break,
        }
    }
    loop {
        let (coeff, exp, next) = parse_term(&tokens, pos)?;
        terms.push((sign * coeff, exp));
        pos = next;
        if pos == tokens.len() {
            break;
        }
        sign = match tokens[pos] {
            Token::Plus => Rational::one(),
            Token::Minus => -Rational::one(),
            _ => {
                return Err(Error::PolySyntax(
                    "expected '+' or '-' between terms".into(),
                ))
            }
        };
        pos += 1;
    }
    let maxdeg = terms.iter().map(|&(_, e)| e).max().unwrap_or(0);
    let mut coeffs = vec![Rational::from(BigInt::from(0)); maxdeg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(RationalPoly::new(coeffs))
}

/// One term: `coef`, `t`, `t^k`, `coef*t^k`, or `coef t^k`.
fn parse_term(tokens: &[Token], mut pos: usize) -> Result<(Rational, usize, usize)> {
    let mut coeff = None;
    if let Some(Token::Number(n)) = tokens.get(pos) {
        coeff = Some(n.clone());
        pos += 1;
        if tokens.get(pos) == Some(&Token::Star) {
            pos += 1;
            if tokens.get(pos) != Some(&Token::Var) {
                return Err(Error::PolySyntax("expected t after '*'".into()));
            }
        }
    }
    if tokens.get(pos) == Some(&Token::Var) {
        pos += 1;
        let mut exp = 1usize;
        if tokens.get(pos) == Some(&Token::Caret) {
            pos += 1;
            match tokens.get(pos) {
                Some(Token::Number(n)) if n.is_integer() && !num_traits::Signed::is_negative(n) => {
                    exp = num_traits::ToPrimitive::to_usize(&n.to_integer())
                        .ok_or_else(|| Error::PolySyntax("exponent too large".into()))?;
                    pos += 1;
                }
                _ => {
                    return Err(Error::PolySyntax(
                        "expected nonnegative integer exponent after '^'".into(),
                    ))
                }
            }
        }
        Ok((coeff.unwrap_or_else(Rational::one), exp, pos))
    } else if let Some(c) = coeff {
        Ok((c, 0, pos))
    } else {
        Err(Error::PolySyntax("expected a coefficient or t".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuation::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn parses_documented_syntax() {
        assert_eq!(
            parse_poly("t^4 - 1").unwrap(),
            RationalPoly::new(vec![rat(-1), rat(0), rat(0), rat(0), rat(1)])
        );
        assert_eq!(
            parse_poly("3/2*t^2 + t - 5").unwrap(),
            RationalPoly::new(vec![rat(-5), rat(1), ratio(3, 2)])
        );
        assert_eq!(parse_poly("0").unwrap(), RationalPoly::zero());
        assert_eq!(parse_poly("-t").unwrap(), RationalPoly::new(vec![rat(0), rat(-1)]));
        // implicit multiplication and repeated exponents collapse
        assert_eq!(parse_poly("2t + t").unwrap(), RationalPoly::new(vec![rat(0), rat(3)]));
    }

    #[test]
    fn rejects_non_rational_literals() {
        assert!(parse_poly("1.5*t").is_err());
        assert!(parse_poly("pi*t").is_err());
        assert!(parse_poly("t^-1").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
    }

    proptest! {
        #[test]
        fn display_roundtrip(cs in proptest::collection::vec((-40i64..=40, 1i64..=12), 0..7)) {
            let f = RationalPoly::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect());
            prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
        }
    }
}
