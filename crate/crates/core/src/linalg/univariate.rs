//! Dense univariate polynomials over Q with Sturm-sequence real root
//! isolation and exact rational root detection.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::polyring::rational::lcm_denominators;
use crate::polyring::{Ambient, Monomial, Poly, Rational};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    /// Reads `p` as a polynomial in variable `var`; `None` if other
    /// variables occur.
    pub fn from_poly(p: &Poly, var: usize) -> Option<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if (0..m.len()).any(|i| i != var && m.exp(i) > 0) {
                return None;
            }
            let e = m.exp(var) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_poly(&self, ambient: &Ambient, var: usize) -> Poly {
        let n = ambient.len();
        Poly::from_terms(
            ambient,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::one(n).with_exp(var, e as u32), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * Rational::from_integer(BigInt::from(e)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = lcm_denominators(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        let g: BigInt = if ints.last().unwrap().is_negative() { -g } else { g };
        UniPoly::new(ints.into_iter().map(|x| Rational::new(x, g.clone())).collect())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &lead_inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
                q[k] = c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Yun's algorithm: squarefree monic factors with their multiplicities.
    pub fn squarefree_factorization(&self) -> Vec<(UniPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Bound `B` with every complex root of modulus `< B` (Cauchy).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let k = seq.len();
            let r = seq[k - 2].div_rem(&seq[k - 1]).1;
            if r.is_zero() {
                break;
            }
            // positive rescaling keeps the sign pattern
            let same_sign = r.leading().unwrap().is_positive();
            let r = r.primitive();
            // primitive() normalizes the leading sign; undo it for a negative leading coefficient
            seq.push(if same_sign { r.scale(&-Rational::one()) } else { r });
        }
        if seq.last().unwrap().is_zero() {
            seq.pop();
        }
        seq
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = Ambient::new(&["t"]);
        write!(f, "{}", self.to_poly(&a, 0))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Real roots of a squarefree polynomial, counted by a Sturm sequence.
pub struct SturmIsolator {
    poly: UniPoly,
    seq: Vec<UniPoly>,
}

/// Isolated real root: either exact or strictly inside `(lo, hi)` with
/// `p(lo), p(hi) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Interval(Rational, Rational),
}

impl RealRoot {
    pub fn width(&self) -> Rational {
        match self {
            RealRoot::Exact(_) => Rational::zero(),
            RealRoot::Interval(a, b) => b - a,
        }
    }

    pub fn midpoint(&self) -> Rational {
        match self {
            RealRoot::Exact(r) => r.clone(),
            RealRoot::Interval(a, b) => (a + b) / Rational::from_integer(2.into()),
        }
    }
}

impl SturmIsolator {
    /// `p` must be squarefree and nonzero.
    pub fn new(p: &UniPoly) -> Self {
        let poly = p.primitive();
        let seq = poly.sturm_sequence();
        SturmIsolator { poly, seq }
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    /// Number of roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        sign_changes(&self.seq, a) - sign_changes(&self.seq, b)
    }

    /// Isolating cells, ascending; each `(lo, hi]` holds exactly one root.
    fn cells(&self) -> Vec<(Rational, Rational)> {
        if self.poly.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let b = self.poly.root_bound();
        let mut out = Vec::new();
        let mut stack = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = stack.pop() {
            match self.count(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    // push right first so the left half is processed first
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out
    }

    /// Ascending isolated roots; each interval is strictly inside its cell,
    /// so distinct closed intervals are disjoint.  Rational roots are always
    /// detected exactly.
    pub fn isolate(&self) -> Vec<RealRoot> {
        self.cells()
            .into_iter()
            .map(|(lo, hi)| self.shrink_in_cell(lo, hi))
            .collect()
    }

    fn shrink_in_cell(&self, lo: Rational, hi: Rational) -> RealRoot {
        let two = Rational::from_integer(2.into());
        let lead = self.poly.leading().unwrap().clone();
        let grid = lead.recip();
        let (mut a, mut b) = (lo.clone(), hi.clone());
        loop {
            if self.poly.eval(&b).is_zero() {
                return RealRoot::Exact(b);
            }
            // a rational root k/m of a primitive integer polynomial has m | lead
            if b.clone() - &a < grid {
                let k = (&b * &lead).floor();
                let cand = k / &lead;
                if cand > a && self.poly.eval(&cand).is_zero() {
                    return RealRoot::Exact(cand);
                }
                if a != lo && b != hi && !self.poly.eval(&a).is_zero() {
                    return RealRoot::Interval(a, b);
                }
            }
            let mid = (&a + &b) / &two;
            if self.count(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
    }

    /// One bisection step; the width exactly halves unless the root is hit.
    pub fn bisect(&self, r: &RealRoot) -> RealRoot {
        match r {
            RealRoot::Exact(_) => r.clone(),
            RealRoot::Interval(a, b) => {
                let mid = (a + b) / Rational::from_integer(2.into());
                let v = self.poly.eval(&mid);
                if v.is_zero() {
                    RealRoot::Exact(mid)
                } else if self.poly.sign_at(a) != v.cmp(&Rational::zero()) {
                    RealRoot::Interval(a.clone(), mid)
                } else {
                    RealRoot::Interval(mid, b.clone())
                }
            }
        }
    }

    pub fn refine_to(&self, r: &RealRoot, width: &Rational) -> RealRoot {
        let mut r = r.clone();
        while r.width() > *width {
            r = self.bisect(&r);
        }
        r
    }
}

/// Rational roots of `p` (any nonzero polynomial), ascending, without repetition.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    SturmIsolator::new(&p.squarefree_part())
        .isolate()
        .into_iter()
        .filter_map(|r| match r {
            RealRoot::Exact(q) => Some(q),
            RealRoot::Interval(..) => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{int, rat};

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = up(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&up(&[1, 1])), up(&[1, 1]));
        assert_eq!(up(&[0, 0, 1]).squarefree_part(), up(&[0, 1]));
    }

    #[test]
    fn yun_factorization() {
        // (t-1)^2 (t+2)
        let p = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[2, 1]));
        let f = p.squarefree_factorization();
        assert_eq!(f, vec![(up(&[2, 1]), 1), (up(&[-1, 1]), 2)]);
    }

    #[test]
    fn sturm_isolation() {
        // t^2 - t - 1
        let iso = SturmIsolator::new(&up(&[-1, -1, 1]));
        let roots = iso.isolate();
        assert_eq!(roots.len(), 2);
        let r = iso.refine_to(&roots[1], &rat(1, 1 << 20));
        let m = crate::polyring::rational::to_f64(&r.midpoint());
        assert!((m - 1.618033988749895).abs() < 1e-5);
        assert!(SturmIsolator::new(&up(&[1, 0, 1])).isolate().is_empty());
    }

    #[test]
    fn rational_roots_exact() {
        assert_eq!(rational_roots(&UniPoly::new(vec![rat(-3, 2), int(1)])), vec![rat(3, 2)]);
        // (2t - 1)(t + 3)(t^2 - 2)
        let p = up(&[-1, 2]).mul(&up(&[3, 1])).mul(&up(&[-2, 0, 1]));
        assert_eq!(rational_roots(&p), vec![int(-3), rat(1, 2)]);
        // adjacent roots 0 and 1/2 share a bisection endpoint
        assert_eq!(rational_roots(&up(&[0, -1, 2])), vec![int(0), rat(1, 2)]);
    }
}
