//! Multivariate gcd over Q by content / primitive-part recursion on the
//! highest-index variable, using primitive pseudo-remainder sequences.
//!
//! This is the known hot spot of rational-function arithmetic; it is adequate
//! for the low degrees the toolkit works at.

use super::monomial::Monomial;
use super::poly::Poly;
use num_traits::One;

/// Greatest common divisor, normalized monic under grevlex (`gcd(0, 0) = 0`).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    a.check_ambient(b);
    gcd_rec(a, b).monic()
}

pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Option<Poly> {
    let mut acc: Option<Poly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => {
                if g.is_one() {
                    return Some(g);
                }
                gcd(&g, p)
            }
        });
    }
    acc
}

pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.ambient());
    }
    let g = gcd(a, b);
    let q = a.exact_divide(&g).expect("gcd nonzero").expect("gcd divides");
    (&q * b).monic()
}

fn top_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.nvars()).rev().find(|&v| a.involves(v) || b.involves(v))
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_integer();
    }
    if b.is_zero() {
        return a.primitive_integer();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.ambient());
    }
    let v = top_var(a, b).expect("non-constant operands");
    if !a.involves(v) {
        return gcd_rec(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd_rec(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = divide(a, &ca).primitive_integer();
    let pb = divide(b, &cb).primitive_integer();
    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
    let g = loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        if r.degree_in(v) == Some(0) {
            break Poly::one(a.ambient());
        }
        f = g;
        g = primitive_part_in(&r, v);
    };
    (&c * &primitive_part_in(&g, v)).primitive_integer()
}

fn divide(a: &Poly, b: &Poly) -> Poly {
    a.exact_divide(b)
        .expect("nonzero divisor")
        .expect("content must divide exactly")
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let coeffs = p.coeffs_in(v);
    let mut acc: Option<Poly> = None;
    for c in coeffs.values() {
        acc = Some(match acc {
            None => c.primitive_integer(),
            Some(g) => {
                if g.is_constant() {
                    return Poly::one(p.ambient());
                }
                gcd_rec(&g, c)
            }
        });
    }
    acc.unwrap_or_else(|| Poly::zero(p.ambient()))
}

fn primitive_part_in(p: &Poly, v: usize) -> Poly {
    let c = content_in(p, v);
    divide(p, &c).primitive_integer()
}

/// Sparse pseudo-remainder of `f` by `g` with respect to variable `v`.
pub(crate) fn pseudo_remainder(f: &Poly, g: &Poly, v: usize) -> Poly {
    let nv = f.nvars();
    let dg = g.degree_in(v).unwrap_or(0);
    let lcg = g.coeffs_in(v).remove(&dg).expect("leading coefficient");
    let mut r = f.clone();
    while let Some(dr) = r.degree_in(v) {
        if r.is_zero() || dr < dg {
            break;
        }
        let lcr = r.coeffs_in(v).remove(&dr).expect("leading coefficient");
        let shifted = g.mul_term(&Monomial::one(nv).with_exp(v, dr - dg), &One::one());
        r = &(&lcg * &r) - &(&lcr * &shifted);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Ambient};

    fn p(s: &str) -> Poly {
        parse_poly(s, &Ambient::new(&["x", "y", "z"])).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let a = p("(x + y)^2*(x - z)");
        let b = p("(x + y)*(x^2 + z)");
        assert_eq!(gcd(&a, &b), p("x + y"));
        assert_eq!(gcd(&p("x"), &p("y")), p("1"));
        assert_eq!(gcd(&p("6*x*y"), &p("4*x^2")), p("x"));
        assert_eq!(gcd(&p("0"), &p("2*x + 2")), p("x + 1"));
    }

    #[test]
    fn gcd_with_content() {
        let a = p("(y*z + 1)*(x^2 - y)");
        let b = p("(y*z + 1)*(x + z)*y");
        assert_eq!(gcd(&a, &b), p("y*z + 1"));
    }

    #[test]
    fn lcm_basic() {
        assert_eq!(lcm(&p("x*y"), &p("y*z")), p("x*y*z"));
    }
}
