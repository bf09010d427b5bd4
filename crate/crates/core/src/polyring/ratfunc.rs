use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::Ambient;
use super::poly::Poly;
use super::rational::Rational;
use super::PolyError;

/// Reduced quotient of polynomials with a monic (grevlex) denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduces `num / den` to lowest terms.
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        num.check_ambient(&den);
        if num.is_zero() {
            return Ok(Self::from_poly(Poly::zero(num.ambient())));
        }
        if let Some(c) = den.constant_value() {
            let inv = c.recip();
            return Ok(RatFunc {
                num: num.scale(&inv),
                den: Poly::one(num.ambient()),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_divide(&g)?.expect("gcd divides numerator"),
                den.exact_divide(&g)?.expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_term_grevlex().unwrap().1.recip();
        Ok(RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.ambient());
        RatFunc { num: p, den }
    }

    pub fn zero(ambient: &Ambient) -> Self {
        Self::from_poly(Poly::zero(ambient))
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::from_poly(Poly::one(ambient))
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        Self::from_poly(Poly::constant(ambient, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn ambient(&self) -> &Ambient {
        self.num.ambient()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn into_poly(self) -> Option<Poly> {
        if self.is_polynomial() {
            Some(self.num)
        } else {
            None
        }
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.as_poly().and_then(Poly::constant_value)
    }

    pub fn recip(&self) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.ambient());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        // powers of coprime polynomials stay coprime
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, var: usize) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_poly(self.num.derivative(var));
        }
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        RatFunc::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn partial_derivative(&self, var: &str) -> Result<RatFunc, PolyError> {
        let i = self
            .ambient()
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(i))
    }

    /// Value at a point; errors when the denominator vanishes there.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    pub fn remap(&self, target: &Ambient) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.num.remap(target)?, self.den.remap(target)?)
    }

    /// `x_var`-adic valuation of the reduced fraction; `None` for zero.
    pub fn valuation_in(&self, var: usize) -> Option<i64> {
        let vn = self.num.valuation_in(var)? as i64;
        let vd = self.den.valuation_in(var).unwrap_or(0) as i64;
        Some(vn - vd)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            if self.is_polynomial() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = Result<RatFunc, PolyError>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc, PolyError> {
        if rhs.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl RatFunc {
    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Substitutes `images[i]` for the i-th variable of `p`; the images share
    /// the ambient `target`.
    pub fn compose_poly(p: &Poly, images: &[RatFunc], target: &Ambient) -> RatFunc {
        assert_eq!(images.len(), p.nvars(), "compose arity mismatch");
        if images.is_empty() {
            return RatFunc::constant(target, p.constant_term());
        }
        // bring every image over one common denominator L: p(N/L) = P(N) / L^deg
        let mut l = Poly::one(target);
        for im in images {
            if !im.den.is_one() {
                l = super::gcd::lcm(&l, &im.den);
            }
        }
        let nums: Vec<Poly> = images
            .iter()
            .map(|im| {
                let q = l.exact_divide(&im.den).expect("nonzero").expect("lcm multiple");
                &im.num * &q
            })
            .collect();
        let deg = p.total_degree().unwrap_or(0);
        let mut num = Poly::zero(target);
        let mut l_pows = vec![Poly::one(target)];
        for _ in 0..deg {
            let next = l_pows.last().unwrap() * &l;
            l_pows.push(next);
        }
        for (m, c) in p.terms() {
            let mono = Poly::monomial(p.ambient(), m.clone(), c.clone());
            let t = mono.compose(&nums);
            num = &num + &(&t * &l_pows[(deg - m.degree()) as usize]);
        }
        RatFunc::new(num, l_pows[deg as usize].clone()).expect("nonzero denominator")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_expression;

    fn amb() -> Ambient {
        Ambient::new(&["x", "y"])
    }

    fn r(s: &str) -> RatFunc {
        parse_expression(s, &amb()).unwrap()
    }

    #[test]
    fn reduction_to_lowest_terms() {
        assert_eq!(r("x/x"), r("1"));
        assert_eq!(r("(x^2 - y^2)/(2*x - 2*y)"), r("1/2*x + 1/2*y"));
        let q = r("(x + 1)/(3*y)");
        assert_eq!(q.den().to_string(), "y");
        assert_eq!(q.num().to_string(), "1/3*x + 1/3");
    }

    #[test]
    fn quotient_rule() {
        let q = r("1/x");
        assert_eq!(q.partial_derivative("x").unwrap(), r("-1/x^2"));
        let q = r("y/(x + y)");
        assert_eq!(q.partial_derivative("y").unwrap(), r("x/(x + y)^2"));
    }

    #[test]
    fn field_operations() {
        let a = r("1/x");
        let b = r("1/y");
        assert_eq!(&a + &b, r("(x + y)/(x*y)"));
        assert_eq!((&a / &a).unwrap(), r("1"));
        assert!((&a / &r("0")).is_err());
        assert_eq!(r("x/y").valuation_in(1), Some(-1));
    }
}
