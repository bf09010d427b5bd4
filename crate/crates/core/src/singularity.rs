//! Singular loci, linear parts, and bounded non-resonance certification.
//!
//! `resonance_check` decides, for every nonzero `k` with `max |k_i| <= K`,
//! whether `Σ k_i λ_i = 0` for the eigenvalues `λ_i` of a rational matrix.
//! Most `k` are excluded by disk arithmetic on certified eigenvalue
//! enclosures.  A `k` whose disk keeps touching zero is settled exactly: the
//! resolvent whose roots are all `Σ k_i λ_σ(i)` is computed by elimination
//! over the universal splitting ideal of the characteristic polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::{
    buchberger_with_budget, eliminate_with_budget, Budget, GroebnerError, Ideal, MonomialOrder,
};
use crate::linalg::{
    char_poly, isolate_roots_with_multiplicity, rational_roots, refine_enclosure, LinalgError, QComplex,
    QMatrix, RootEnclosure, UniPoly,
};
use crate::polyring::rational::format_rational;
use crate::polyring::{Ambient, Poly, Rational};
use crate::vectorfield::VectorField;

pub const DEFAULT_K: u32 = 50;
pub const DEFAULT_PRECISION_BUDGET: u32 = 40;

/// Radius of the first eigenvalue enclosures: `2^-16`.
fn initial_precision() -> Rational {
    Rational::new(1.into(), BigInt::from(1u64 << 16))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    coords: Vec<Rational>,
}

impl SingularPoint {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }
}

/// `⟨a_1, …, a_n⟩`.
pub fn singular_ideal(v: &VectorField) -> Result<Ideal, Error> {
    Ok(Ideal::new(v.ambient(), v.poly_components()?)?)
}

/// Zero-dimensionality of the singular ideal; the empty locus counts as finite.
pub fn sing_locus_finite(v: &VectorField) -> Result<bool, Error> {
    sing_locus_finite_with_budget(v, &Budget::default())
}

pub fn sing_locus_finite_with_budget(v: &VectorField, budget: &Budget) -> Result<bool, Error> {
    let gb = buchberger_with_budget(&singular_ideal(v)?, MonomialOrder::GrevLex, budget)?;
    Ok(gb.is_zero_dimensional())
}

pub fn verify_singular(v: &VectorField, coords: &[Rational]) -> Result<SingularPoint, Error> {
    if coords.len() != v.dim() {
        return Err(Error::invalid(format!(
            "point has {} coordinates, field has {} variables",
            coords.len(),
            v.dim()
        )));
    }
    for (i, c) in v.components().iter().enumerate() {
        let value = c.evaluate(coords)?;
        if !value.is_zero() {
            return Err(Error::NotSingular { index: i + 1, value });
        }
    }
    Ok(SingularPoint {
        coords: coords.to_vec(),
    })
}

/// Entry `(i, j)` is `∂_{x_j}(a_i)` at `p`.
pub fn linear_part(v: &VectorField, p: &SingularPoint) -> Result<QMatrix, Error> {
    let comps = v.poly_components()?;
    let n = comps.len();
    if p.coords.len() != n {
        return Err(Error::invalid("point arity does not match the field"));
    }
    let mut entries = Vec::with_capacity(n * n);
    for a in &comps {
        if !a.evaluate(&p.coords)?.is_zero() {
            return Err(Error::invalid("point is not singular"));
        }
        for j in 0..n {
            entries.push(a.derivative(j).evaluate(&p.coords)?);
        }
    }
    Ok(QMatrix::new(n, n, entries)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResonanceStatus {
    Resonant(Vec<i64>),
    NonresonantUpTo(u32),
    /// Candidates whose relation could neither be excluded nor certified.
    Unresolved(Vec<Vec<i64>>),
}

impl ResonanceStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ResonanceStatus::Resonant(_) => "RESONANT",
            ResonanceStatus::NonresonantUpTo(_) => "NONRESONANT_UP_TO",
            ResonanceStatus::Unresolved(_) => "UNRESOLVED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceVerdict {
    pub status: ResonanceStatus,
    pub k_bound: u32,
    /// One enclosure per eigenvalue, repeated according to multiplicity.
    pub eigen_enclosures: Vec<RootEnclosure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenJson {
    pub re: String,
    pub im: String,
    pub radius: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub status: String,
    pub witness: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<Vec<i64>>,
    #[serde(rename = "K")]
    pub k: u32,
    pub eigenvalues: Vec<EigenJson>,
}

impl ResonanceVerdict {
    pub fn is_resonant(&self) -> bool {
        matches!(self.status, ResonanceStatus::Resonant(_))
    }

    pub fn witness(&self) -> Option<&[i64]> {
        match &self.status {
            ResonanceStatus::Resonant(k) => Some(k),
            _ => None,
        }
    }

    pub fn to_json(&self) -> VerdictJson {
        let candidates = match &self.status {
            ResonanceStatus::Unresolved(c) => c.clone(),
            _ => Vec::new(),
        };
        VerdictJson {
            status: self.status.label().to_string(),
            witness: self.witness().map(<[i64]>::to_vec),
            candidates,
            k: self.k_bound,
            eigenvalues: self
                .eigen_enclosures
                .iter()
                .map(|e| EigenJson {
                    re: format_rational(&e.center.re),
                    im: format_rational(&e.center.im),
                    radius: format_rational(&e.radius),
                })
                .collect(),
        }
    }
}

/// Integer vector with its first nonzero entry positive and content 1.
fn normalize_witness(k: Vec<BigInt>) -> Vec<i64> {
    let g = k.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut k: Vec<BigInt> = if g.is_zero() { k } else { k.into_iter().map(|x| x / &g).collect() };
    if k.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        k = k.into_iter().map(|x| -x).collect();
    }
    k.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    let mut k = vec![0; n];
    k[i] = 1;
    k
}

/// Disk enclosing `Σ k_i λ_i`.
fn combine(k: &[i64], encl: &[RootEnclosure]) -> (QComplex, Rational) {
    let mut c = QComplex::new(Rational::zero(), Rational::zero());
    let mut r = Rational::zero();
    for (ki, e) in k.iter().zip(encl) {
        if *ki == 0 {
            continue;
        }
        let kq = Rational::from_integer((*ki).into());
        c.re += &e.center.re * &kq;
        c.im += &e.center.im * &kq;
        r += &e.radius * kq.abs();
    }
    (c, r)
}

fn disk_excludes_zero(c: &QComplex, r: &Rational) -> bool {
    c.norm_sqr() > r * r
}

/// Disk lies inside the open disk `|z| < rho`.
fn disk_inside(c: &QComplex, r: &Rational, rho: &Rational) -> bool {
    if r >= rho {
        return false;
    }
    let slack = rho - r;
    c.norm_sqr() < &slack * &slack
}

/// Outcome of the exact fallback for one `k`.
enum Exact {
    /// No assignment of eigenvalues gives zero.
    Excluded,
    /// Some assignment gives zero; nonzero values of the resolvent have
    /// modulus at least this bound.
    Ambiguous(Rational),
}

/// Elementary symmetric polynomial `e_j(t_1, …, t_n)` for `j <= n`.
fn elementary(amb: &Ambient, n: usize, j: usize) -> Poly {
    fn rec(amb: &Ambient, start: usize, n: usize, left: usize) -> Poly {
        if left == 0 {
            return Poly::one(amb);
        }
        let mut acc = Poly::zero(amb);
        for i in start..=(n - left) {
            acc = &acc + &(&Poly::var(amb, i) * &rec(amb, i + 1, n, left - 1));
        }
        acc
    }
    rec(amb, 0, n, j)
}

/// Resolvent of `cp` (monic, squarefree, degree `n`) for the linear form `k`.
fn resolvent(cp: &UniPoly, k: &[i64], budget: &Budget) -> Result<UniPoly, GroebnerError> {
    let n = k.len();
    let mut names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    names.push("z".to_string());
    let amb = Ambient::new(&names);
    let coeffs = cp.monic();
    let coeffs = coeffs.coeffs();
    let mut gens = Vec::with_capacity(n + 1);
    for j in 1..=n {
        // e_j = (-1)^j c_{n-j}
        let mut c = coeffs[n - j].clone();
        if j % 2 == 1 {
            c = -c;
        }
        gens.push(&elementary(&amb, n, j) - &Poly::constant(&amb, c));
    }
    let mut form = Poly::var(&amb, n);
    for (i, ki) in k.iter().enumerate() {
        form = &form - &Poly::var(&amb, i).scale(&Rational::from_integer((*ki).into()));
    }
    gens.push(form);
    let ideal = Ideal::new(&amb, gens)?;
    let elim = eliminate_with_budget(&ideal, &["z"], budget)?;
    let g = elim
        .generators()
        .iter()
        .filter_map(|g| UniPoly::from_poly(g, 0))
        .reduce(|a, b| a.gcd(&b));
    Ok(g.unwrap_or_else(UniPoly::zero))
}

fn exact_fallback(cp: &UniPoly, k: &[i64], budget: &Budget) -> Result<Exact, GroebnerError> {
    let r = resolvent(cp, k, budget)?;
    let c = r.coeffs();
    if c.is_empty() {
        return Ok(Exact::Ambiguous(Rational::zero()));
    }
    if !c[0].is_zero() {
        return Ok(Exact::Excluded);
    }
    // R = z^m S with S(0) != 0; nonzero roots satisfy |z| >= |s0| / (|s0| + max |s_j|).
    let m = c.iter().position(|x| !x.is_zero()).unwrap_or(c.len());
    if m + 1 >= c.len() {
        // R is a monomial: zero is its only root
        return Ok(Exact::Ambiguous(Rational::from_integer(BigInt::from(1u64 << 62))));
    }
    let s0 = c[m].abs();
    let smax = c[m + 1..].iter().map(Signed::abs).max().unwrap_or_else(Rational::zero);
    Ok(Exact::Ambiguous(&s0 / (&s0 + smax)))
}

/// Bounded resonance test for the eigenvalues of `a`.
///
/// `precision_budget` caps the total number of enclosure halvings spent on
/// candidates whose disks keep touching zero.
pub fn resonance_check(a: &QMatrix, k_bound: u32, precision_budget: u32) -> Result<ResonanceVerdict, Error> {
    resonance_check_with_budget(a, k_bound, precision_budget, &Budget::default())
}

pub fn resonance_check_with_budget(
    a: &QMatrix,
    k_bound: u32,
    precision_budget: u32,
    budget: &Budget,
) -> Result<ResonanceVerdict, Error> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    let n = a.rows();
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    let cp = char_poly(a)?;
    let with_mult = isolate_roots_with_multiplicity(&cp, &initial_precision())?;
    let mut encl: Vec<RootEnclosure> = Vec::with_capacity(n);
    for (e, m) in &with_mult {
        for _ in 0..*m {
            encl.push(e.clone());
        }
    }
    let verdict = |status| ResonanceVerdict {
        status,
        k_bound,
        eigen_enclosures: Vec::new(),
    };
    let finish = |mut v: ResonanceVerdict, encl: Vec<RootEnclosure>| {
        v.eigen_enclosures = encl;
        Ok(v)
    };

    // repeated eigenvalue: e_i - e_j
    let mut start = 0;
    for (_, m) in &with_mult {
        if *m > 1 {
            let mut k = vec![0; n];
            k[start] = 1;
            k[start + 1] = -1;
            return finish(verdict(ResonanceStatus::Resonant(k)), encl);
        }
        start += *m as usize;
    }

    let cp_uni = UniPoly::from_poly(&cp, 0).ok_or(LinalgError::NotUnivariate)?;
    let rational: Vec<Rational> = rational_roots(&cp_uni);
    let index_of = |encl: &[RootEnclosure], q: &Rational| encl.iter().position(|e| e.rational_value() == Some(q));
    // snap rational eigenvalues to exact enclosures
    for q in &rational {
        if index_of(&encl, q).is_none() {
            let i = encl
                .iter()
                .position(|e| e.is_real() && (&e.center.re - q).abs() <= e.radius)
                .ok_or(LinalgError::CertificationFailed)?;
            encl[i].center = QComplex::new(q.clone(), Rational::zero());
            encl[i].radius = Rational::zero();
        }
    }
    if let Some(i) = rational.iter().find(|q| q.is_zero()).and_then(|q| index_of(&encl, q)) {
        return finish(verdict(ResonanceStatus::Resonant(unit_vector(n, i))), encl);
    }
    if n == 1 {
        return finish(verdict(ResonanceStatus::NonresonantUpTo(k_bound)), encl);
    }
    if rational.len() >= 2 {
        let (i, j) = (index_of(&encl, &rational[0]).unwrap(), index_of(&encl, &rational[1]).unwrap());
        // k_i λ_i + k_j λ_j = 0 with k_i = λ_j, k_j = -λ_i after clearing denominators
        let (li, lj) = (&rational[0], &rational[1]);
        let l = li.denom().lcm(lj.denom());
        let mut k = vec![BigInt::zero(); n];
        k[i] = (lj * Rational::from_integer(l.clone())).to_integer();
        k[j] = -(li * Rational::from_integer(l)).to_integer();
        return finish(verdict(ResonanceStatus::Resonant(normalize_witness(k))), encl);
    }

    let mut halvings = 0u32;
    let mut unresolved = Vec::new();
    let kb = i64::from(k_bound);
    let mut k = vec![-kb; n];
    loop {
        let first = k.iter().find(|x| **x != 0);
        if first.is_some_and(|x| *x > 0) {
            match settle(&k, &mut encl, &cp_uni, &mut halvings, precision_budget, budget)? {
                Settled::Excluded => {}
                Settled::Resonant => {
                    return finish(verdict(ResonanceStatus::Resonant(k)), encl);
                }
                Settled::Unresolved => unresolved.push(k.clone()),
            }
        }
        // odometer over [-K, K]^n
        let mut pos = n;
        loop {
            if pos == 0 {
                let status = if unresolved.is_empty() {
                    ResonanceStatus::NonresonantUpTo(k_bound)
                } else {
                    ResonanceStatus::Unresolved(unresolved)
                };
                return finish(verdict(status), encl);
            }
            pos -= 1;
            if k[pos] < kb {
                k[pos] += 1;
                break;
            }
            k[pos] = -kb;
        }
    }
}

enum Settled {
    Excluded,
    Resonant,
    Unresolved,
}

fn refine_support(k: &[i64], encl: &mut [RootEnclosure]) -> Result<(), Error> {
    for (ki, e) in k.iter().zip(encl.iter_mut()) {
        if *ki != 0 && !e.is_exact() {
            *e = refine_enclosure(e)?;
        }
    }
    Ok(())
}

fn settle(
    k: &[i64],
    encl: &mut [RootEnclosure],
    cp: &UniPoly,
    halvings: &mut u32,
    precision_budget: u32,
    budget: &Budget,
) -> Result<Settled, Error> {
    let (c, r) = combine(k, encl);
    if disk_excludes_zero(&c, &r) {
        return Ok(Settled::Excluded);
    }
    if r.is_zero() {
        // exact eigenvalues, exact zero
        return Ok(Settled::Resonant);
    }
    while *halvings < precision_budget {
        *halvings += 1;
        refine_support(k, encl)?;
        let (c, r) = combine(k, encl);
        if disk_excludes_zero(&c, &r) {
            return Ok(Settled::Excluded);
        }
    }
    let rho = match exact_fallback(cp, k, budget) {
        Ok(Exact::Excluded) => return Ok(Settled::Excluded),
        Ok(Exact::Ambiguous(rho)) => rho,
        Err(GroebnerError::BudgetExhausted(_)) => return Ok(Settled::Unresolved),
        Err(e) => return Err(e.into()),
    };
    // shrink until the disk sits inside the zero-only neighbourhood, bounded
    // by the same halving allowance again
    for _ in 0..precision_budget.max(1) {
        let (c, r) = combine(k, encl);
        if disk_excludes_zero(&c, &r) {
            return Ok(Settled::Excluded);
        }
        if disk_inside(&c, &r, &rho) {
            return Ok(Settled::Resonant);
        }
        refine_support(k, encl)?;
    }
    Ok(Settled::Unresolved)
}
