use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Ambient, Monomial};
use super::rational::{format_rational, gcd_numerators, lcm_denominators, Rational};
use super::PolyError;

/// Total degree with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored, so
/// structural equality is mathematical equality.
#[derive(Clone)]
pub struct Poly {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (self.ambient.ptr_eq(&other.ambient) || self.ambient == other.ambient)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl Poly {
    pub fn zero(ambient: &Ambient) -> Self {
        Poly {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ambient: &Ambient) -> Self {
        Self::constant(ambient, Rational::one())
    }

    pub fn constant(ambient: &Ambient, c: Rational) -> Self {
        let mut p = Self::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ambient.len()), c);
        }
        p
    }

    pub fn var(ambient: &Ambient, i: usize) -> Self {
        Self::monomial(ambient, Monomial::var(ambient.len(), i), Rational::one())
    }

    pub fn var_named(ambient: &Ambient, name: &str) -> Result<Self, PolyError> {
        let i = ambient
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ambient, i))
    }

    pub fn monomial(ambient: &Ambient, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.len(), ambient.len());
        let mut p = Self::zero(ambient);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(ambient: &Ambient, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(ambient);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.degree().finite()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).max()
    }

    /// Smallest exponent of `var` over all terms (its `var`-adic valuation).
    pub fn valuation_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var)).min()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exp(var) > 0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Leading term under graded reverse lexicographic order.
    pub fn leading_term_grevlex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_grevlex(b.0))
    }

    pub fn leading_term_by(
        &self,
        cmp: impl Fn(&Monomial, &Monomial) -> Ordering,
    ) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ambient);
        }
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ambient);
        }
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ambient);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut p = Poly::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                p.terms.insert(m.with_exp(var, e - 1), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        p
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly, PolyError> {
        let i = self
            .ambient
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        Ok(self.derivative(i))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars() {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                t *= &table[e as usize];
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `images[i]` for the i-th variable; all images share one ambient.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars(), "compose arity mismatch");
        let target = images
            .first()
            .map(|p| p.ambient.clone())
            .unwrap_or_else(|| Ambient::new::<&str>(&[]));
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| vec![Poly::one(&target), p.clone()])
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &images[i];
                    table.push(next);
                }
                t = &t * &table[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes a rational value for one variable, keeping the ambient.
    pub fn substitute_value(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let factor = num_traits::pow::pow(value.clone(), e as usize);
            out.add_term(m.with_exp(var, 0), c * factor);
        }
        out
    }

    /// Re-expresses the polynomial over `target`, matching variables by name.
    pub fn remap(&self, target: &Ambient) -> Result<Poly, PolyError> {
        if self.ambient.ptr_eq(target) || &self.ambient == target {
            return Ok(Poly {
                ambient: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut index = Vec::with_capacity(self.nvars());
        for (i, name) in self.ambient.names().iter().enumerate() {
            let used = self.involves(i);
            match target.index_of(name) {
                Some(j) => index.push(Some(j)),
                None if !used => index.push(None),
                None => return Err(PolyError::UnknownVariable(name.clone())),
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if let Some(j) = index[i] {
                    e[j] += k;
                }
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to one variable: exponent -> coefficient
    /// (coefficients stay in the same ambient, free of `var`).
    pub fn coeffs_in(&self, var: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(var))
                .or_insert_with(|| Poly::zero(&self.ambient))
                .terms
                .insert(m.with_exp(var, 0), c.clone());
        }
        out
    }

    /// Exact quotient `self / q`; `Ok(None)` when `q` does not divide `self`.
    pub fn exact_divide(&self, q: &Poly) -> Result<Option<Poly>, PolyError> {
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        self.check_ambient(q);
        if self.is_zero() {
            return Ok(Some(Poly::zero(&self.ambient)));
        }
        if let Some(c) = q.constant_value() {
            return Ok(Some(self.scale(&c.recip())));
        }
        let (lm_q, lc_q) = q.leading_term_grevlex().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        // cheap degree screen
        for v in 0..self.nvars() {
            if q.degree_in(v) > self.degree_in(v) {
                return Ok(None);
            }
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ambient);
        while let Some((lm, lc)) = rem.leading_term_grevlex().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_q.divides(&lm) {
                return Ok(None);
            }
            let m = lm_q.quotient_of(&lm);
            let c = lc / &lc_q;
            rem = &rem - &q.mul_term(&m, &c);
            quot.add_term(m, c);
        }
        Ok(Some(quot))
    }

    pub fn divides(&self, p: &Poly) -> bool {
        matches!(p.exact_divide(self), Ok(Some(_)))
    }

    /// Scales to leading coefficient 1 under grevlex (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_term_grevlex() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer-coefficient primitive multiple with positive grevlex leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_denominators(self.terms.values());
        let g = gcd_numerators(self.terms.values().map(|c| c * Rational::from_integer(l.clone())).collect::<Vec<_>>().iter());
        let mut s = Rational::new(l, g);
        if self.leading_term_grevlex().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub(crate) fn check_ambient(&self, other: &Poly) {
        assert!(
            self.ambient.ptr_eq(&other.ambient) || self.ambient == other.ambient,
            "ambient mismatch: {:?} vs {:?}",
            self.ambient,
            other.ambient
        );
    }

    /// Terms sorted for printing: graded lexicographic, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp_deglex(a.0));
        v
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.render(&self.ambient))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), m.render(&self.ambient))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ambient(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ambient(rhs);
        let mut out = Poly::zero(&self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{int, rat};
    use crate::polyring::parse_poly;

    fn amb() -> Ambient {
        Ambient::new(&["x", "y"])
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &amb()).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert_eq!(p("x^2").partial_derivative("y").unwrap(), Poly::zero(&amb()));
        assert!(matches!(p("x").partial_derivative("z"), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(p("x^2 - y^2").exact_divide(&p("x - y")).unwrap(), Some(p("x + y")));
        assert_eq!(p("x").exact_divide(&p("y")).unwrap(), None);
        let g = p("y^2 - x*y - x^2");
        assert_eq!(g.exact_divide(&g).unwrap(), Some(Poly::one(&amb())));
        assert!(matches!(p("x").exact_divide(&Poly::zero(&amb())), Err(PolyError::DivisionByZero)));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^2 + y").evaluate(&[int(2), int(3)]).unwrap(), int(7));
        assert_eq!(p("3*x*y - 5/2").evaluate(&[int(0), int(0)]).unwrap(), rat(-5, 2));
        assert!(p("x").evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Poly::zero(&amb()).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p("x^2*y + y").degree(), Degree::Finite(3));
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(p("y + 3/2*x^2").to_string(), "3/2*x^2 + y");
        assert_eq!(p("-x^2 + x*y - 1").to_string(), "-x^2 + x*y - 1");
        assert_eq!(p("y^2 - x*y - x^2").to_string(), "-x^2 - x*y + y^2");
    }

    #[test]
    fn compose_and_remap() {
        let t = Ambient::new(&["t"]);
        let images = [parse_poly("t^2", &t).unwrap(), parse_poly("t + 1", &t).unwrap()];
        assert_eq!(p("x*y").compose(&images), parse_poly("t^3 + t^2", &t).unwrap());
        let wide = Ambient::new(&["a", "y", "x"]);
        let r = p("x + 2*y").remap(&wide).unwrap();
        assert_eq!(r, parse_poly("x + 2*y", &wide).unwrap());
        assert!(p("x").remap(&t).is_err());
    }
}
