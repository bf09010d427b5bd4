//! Random generators and small exact oracles shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use vfcert::darboux::monomials_up_to;
use vfcert::linalg::QMatrix;
use vfcert::polyring::rational::int;
use vfcert::polyring::{Ambient, Poly, RatFunc, Rational};
use vfcert::vectorfield::VectorField;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn ambient(n: usize) -> Ambient {
    Ambient::new(&VARS[..n])
}

/// Each monomial of degree in `lo..=hi` gets a coefficient in `-c..=c` with
/// probability `density`.
pub fn random_poly<R: Rng>(rng: &mut R, amb: &Ambient, lo: u32, hi: u32, c: i64, density: f64) -> Poly {
    let mut terms = Vec::new();
    for m in monomials_up_to(amb.len(), lo, hi) {
        if rng.gen_bool(density) {
            terms.push((m, int(rng.gen_range(-c..=c))));
        }
    }
    Poly::from_terms(amb, terms)
}

pub fn random_field<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> VectorField {
    let amb = ambient(n);
    loop {
        let comps: Vec<Poly> = (0..n).map(|_| random_poly(rng, &amb, 0, max_deg, 3, 0.5)).collect();
        if comps.iter().any(|c| !c.is_zero()) {
            return VectorField::from_polys(&amb, comps).unwrap();
        }
    }
}

pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let m = QMatrix::new(n, n, (0..n * n).map(|_| int(rng.gen_range(-3..=3))).collect()).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

pub fn polys(v: &VectorField) -> Vec<Poly> {
    v.poly_components().unwrap()
}

/// `Σ_j (v_j ∂_j w_i − w_j ∂_j v_i)`, computed directly.
pub fn bracket_oracle(v: &[Poly], w: &[Poly]) -> Vec<Poly> {
    let amb = v[0].ambient().clone();
    (0..v.len())
        .map(|i| {
            let mut acc = Poly::zero(&amb);
            for j in 0..v.len() {
                acc = &acc + &(&v[j] * &w[i].derivative(j));
                acc = &acc - &(&w[j] * &v[i].derivative(j));
            }
            acc
        })
        .collect()
}

/// Same formula over rational functions.
pub fn bracket_oracle_rat(v: &[RatFunc], w: &[RatFunc]) -> Vec<RatFunc> {
    let amb = v[0].ambient().clone();
    (0..v.len())
        .map(|i| {
            let mut acc = RatFunc::zero(&amb);
            for j in 0..v.len() {
                acc = &acc + &(&v[j] * &w[i].derivative(j));
                acc = &acc - &(&w[j] * &v[i].derivative(j));
            }
            acc
        })
        .collect()
}

/// `Σ_i a_i ∂_i f`.
pub fn derive(a: &[Poly], f: &Poly) -> Poly {
    let mut acc = Poly::zero(f.ambient());
    for (i, ai) in a.iter().enumerate() {
        acc = &acc + &(ai * &f.derivative(i));
    }
    acc
}

pub fn rat(n: i64, d: i64) -> Rational {
    vfcert::polyring::rational::rat(n, d)
}
