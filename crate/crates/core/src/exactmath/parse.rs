//! Text format for polynomials.
//!
//! Grammar, with whitespace ignored between tokens:
//!
//! ```text
//! poly        := ['-'] term (('+' | '-') term)*
//! term        := coefficient ('*' monomial)? | monomial
//! coefficient := uint ('/' uint)?
//! monomial    := factor ('*' factor)*
//! factor      := var ('^' uint)?
//! var         := [a-z][a-z0-9]*
//! ```
//!
//! Every variable must come from the caller's declared list; exponents are
//! unsigned. `Display` output of `MultiPoly` parses back to the same
//! polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExactMathError, MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>, ExactMathError> {
    let bytes = input.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                tokens.push((Token::Plus, i));
                i += 1;
            }
            b'-' => {
                tokens.push((Token::Minus, i));
                i += 1;
            }
            b'*' => {
                tokens.push((Token::Star, i));
                i += 1;
            }
            b'/' => {
                tokens.push((Token::Slash, i));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Caret, i));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value = input[start..i].parse::<BigInt>().expect("digit run parses");
                tokens.push((Token::Int(value), start));
            }
            b'a'..=b'z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit()) {
                    i += 1;
                }
                tokens.push((Token::Ident(input[start..i].to_string()), start));
            }
            _ => {
                return Err(ExactMathError::Parse {
                    position: i,
                    message: format!("unexpected character `{}`", input[i..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    input_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, p)| *p).unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExactMathError> {
        Err(ExactMathError::Parse { position: self.here(), message: message.into() })
    }

    fn expect_uint(&mut self) -> Result<BigInt, ExactMathError> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(n),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.fail("expected an unsigned integer")
            }
        }
    }

    fn var_index(&self, name: &str) -> Result<usize, ExactMathError> {
        self.vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| ExactMathError::UnknownVariable(name.to_string()))
    }

    /// factor := var ('^' uint)?, accumulated into an exponent vector.
    fn parse_factor(&mut self, exps: &mut [u32]) -> Result<(), ExactMathError> {
        let name = match self.bump() {
            Some(Token::Ident(name)) => name,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return self.fail("expected a variable");
            }
        };
        let idx = self.var_index(&name)?;
        let mut exp = BigInt::one();
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            exp = self.expect_uint()?;
        }
        let exp: u32 = exp
            .try_into()
            .map_err(|_| ExactMathError::Parse { position: self.here(), message: "exponent too large".into() })?;
        exps[idx] += exp;
        Ok(())
    }

    /// term := coefficient ('*' monomial)? | monomial
    fn parse_term(&mut self) -> Result<MultiPoly, ExactMathError> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.vars.len()];
        match self.peek() {
            Some(Token::Int(_)) => {
                let num = self.expect_uint()?;
                let mut den = BigInt::one();
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let at = self.here();
                    den = self.expect_uint()?;
                    if den.is_zero() {
                        return Err(ExactMathError::Parse { position: at, message: "zero denominator".into() });
                    }
                }
                coeff = Rational::new(num, den);
                if self.peek() == Some(&Token::Star) {
                    self.bump();
                    self.parse_factor(&mut exps)?;
                    while self.peek() == Some(&Token::Star) {
                        self.bump();
                        self.parse_factor(&mut exps)?;
                    }
                }
            }
            Some(Token::Ident(_)) => {
                self.parse_factor(&mut exps)?;
                while self.peek() == Some(&Token::Star) {
                    self.bump();
                    self.parse_factor(&mut exps)?;
                }
            }
            _ => return self.fail("expected a term"),
        }
        Ok(MultiPoly::monomial(self.vars, &exps, coeff))
    }

    fn parse_poly(&mut self) -> Result<MultiPoly, ExactMathError> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            negate = true;
        }
        let first = self.parse_term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = &acc - &t;
                }
                None => return Ok(acc),
                Some(_) => return self.fail("expected `+`, `-`, or end of input"),
            }
        }
    }
}

/// Parses a polynomial over the given variable list.
pub fn parse_poly(input: &str, vars: &[&str]) -> Result<MultiPoly, ExactMathError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(ExactMathError::Parse { position: 0, message: "empty input".into() });
    }
    let mut parser = Parser { tokens, pos: 0, vars, input_len: input.len() };
    parser.parse_poly()
}

#[cfg(test)]
mod tests {
    use super::super::{rat, rat_int};
    use super::*;

    #[test]
    fn parses_signs_fractions_and_powers() {
        let vars = ["t1", "t2"];
        let a = parse_poly("t1^3 + t2^3 - 1/2*t1", &vars).unwrap();
        assert_eq!(a.coeff(&[3, 0]), rat_int(1));
        assert_eq!(a.coeff(&[0, 3]), rat_int(1));
        assert_eq!(a.coeff(&[1, 0]), rat(-1, 2));
        let b = parse_poly("-3*t1*t2^2 + 7", &vars).unwrap();
        assert_eq!(b.coeff(&[1, 2]), rat_int(-3));
        assert_eq!(b.coeff(&[0, 0]), rat_int(7));
    }

    #[test]
    fn repeated_factors_accumulate_exponents() {
        let a = parse_poly("t*t*t", &["t"]).unwrap();
        assert_eq!(a, parse_poly("t^3", &["t"]).unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        let vars = ["t"];
        assert!(matches!(parse_poly("", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(parse_poly("t^-2", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(parse_poly("2t", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(parse_poly("t +", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(parse_poly("1/0", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(parse_poly("T", &vars), Err(ExactMathError::Parse { .. })));
        assert!(matches!(
            parse_poly("u + 1", &vars),
            Err(ExactMathError::UnknownVariable(_))
        ));
    }

    #[test]
    fn display_round_trips_through_parser() {
        let vars = ["z1", "z2", "z3"];
        let samples = [
            "z1^2*z3 - 1/2*z2 + 3",
            "-z1 + z2 - z3",
            "7/3",
            "z2^5 - 2*z1*z2*z3",
        ];
        for s in samples {
            let p = parse_poly(s, &vars).unwrap();
            assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p);
        }
    }
}
