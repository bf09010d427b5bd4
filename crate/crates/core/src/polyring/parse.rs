//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := '-' factor | base ('^' natural)?
//! base     := rational | variable | '(' expr ')'
//! rational := integer ('/' positive-integer)?
//! variable := [A-Za-z][A-Za-z0-9_']*
//! ```
//!
//! Implicit multiplication is rejected. In polynomial mode `/` only accepts a
//! constant divisor.

use num_bigint::BigInt;
use num_traits::Zero;

use super::monomial::Ambient;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::PolyError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Polynomial,
    Rational,
}

/// Parses a rational function over `ambient`.
pub fn parse_expression(text: &str, ambient: &Ambient) -> Result<RatFunc, PolyError> {
    Parser::new(text, ambient, Mode::Rational).parse()
}

/// Parses a polynomial; division is only allowed by nonzero constants.
pub fn parse_poly(text: &str, ambient: &Ambient) -> Result<Poly, PolyError> {
    let r = Parser::new(text, ambient, Mode::Polynomial).parse()?;
    Ok(r.into_poly().expect("polynomial mode yields polynomials"))
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ambient: &'a Ambient,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ambient: &'a Ambient, mode: Mode) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ambient,
            mode,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<RatFunc, PolyError> {
        let value = self.expr()?;
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{c}'"));
        }
        Ok(value)
    }

    fn expr(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = &acc * &rhs;
                }
                Some('/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        self.pos = at;
                        return Err(PolyError::DivisionByZero);
                    }
                    if self.mode == Mode::Polynomial && rhs.constant_value().is_none() {
                        self.pos = at;
                        return self.err("division by a non-constant in polynomial mode");
                    }
                    acc = (&acc / &rhs)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    return self.err("implicit multiplication is not accepted; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, PolyError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let inner = self.factor()?;
            return Ok(-inner);
        }
        let base = self.base()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected a natural exponent after '^'");
            }
            let e: u32 = digits.parse().map_err(|_| PolyError::Syntax {
                position: self.pos,
                message: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn base(&mut self) -> Result<RatFunc, PolyError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                // rational literal: integer '/' positive-integer
                let save = self.pos;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save;
                    } else {
                        let den: BigInt = d.parse().expect("digits");
                        if den.is_zero() {
                            return Err(PolyError::DivisionByZero);
                        }
                        return Ok(RatFunc::constant(self.ambient, Rational::new(num, den)));
                    }
                }
                Ok(RatFunc::constant(self.ambient, Rational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() {
                    let c = self.chars[self.pos];
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ambient.index_of(&name) {
                    Some(i) => Ok(RatFunc::from_poly(Poly::var(self.ambient, i))),
                    None => Err(PolyError::UnknownVariable(name)),
                }
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::rat;

    #[test]
    fn polynomial_denotation() {
        let a = Ambient::new(&["x", "y"]);
        let p = parse_poly("3/2*x^2 + y", &a).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&crate::polyring::Monomial::from_exponents(vec![2, 0])), rat(3, 2));
        assert_eq!(p.coeff(&crate::polyring::Monomial::from_exponents(vec![0, 1])), rat(1, 1));
    }

    #[test]
    fn primed_variables_and_rational_mode() {
        let a = Ambient::new(&["y", "y'", "y''"]);
        let r = parse_expression("(y'')^2/y'", &a).unwrap();
        assert_eq!(r.num(), &parse_poly("y''^2", &a).unwrap());
        assert_eq!(r.den(), &parse_poly("y'", &a).unwrap());
        assert!(matches!(
            parse_poly("(y'')^2/y'", &a),
            Err(PolyError::Syntax { .. })
        ));
    }

    #[test]
    fn reduction_and_errors() {
        let a = Ambient::new(&["x", "y"]);
        assert!(parse_expression("x/x", &a).unwrap().is_one());
        assert!(matches!(parse_poly("x + z", &a), Err(PolyError::UnknownVariable(v)) if v == "z"));
        assert!(matches!(parse_poly("2 x", &a), Err(PolyError::Syntax { position: 2, .. })));
        assert!(matches!(parse_expression("x/(y - y)", &a), Err(PolyError::DivisionByZero)));
        assert!(matches!(parse_poly("(x + y", &a), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x^", &a), Err(PolyError::Syntax { .. })));
        assert_eq!(parse_poly("x/2", &a).unwrap(), parse_poly("1/2*x", &a).unwrap());
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let a = Ambient::new(&["x"]);
        assert_eq!(parse_poly("-x^2", &a).unwrap(), -parse_poly("x^2", &a).unwrap());
        assert_eq!(parse_poly("--x", &a).unwrap(), parse_poly("x", &a).unwrap());
        assert_eq!(parse_poly("2/3^2", &a).unwrap(), parse_poly("4/9", &a).unwrap());
    }
}
