//! Buchberger's algorithm with the sugar strategy and the Gebauer–Möller
//! pair criteria, plus ideal membership, elimination and dimension tests.

mod solve;

pub use solve::{rational_points, PointSet};

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::polyring::{Ambient, Monomial, Poly, PolyError, Rational};

pub const DEFAULT_REDUCTION_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Gröbner budget exhausted after {0} reductions")]
    BudgetExhausted(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monomial orders; the first variable of the ambient is always the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest;
    /// eliminates the first `k` variables.
    Block(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exponents().split_at(k);
                let (b1, b2) = b.exponents().split_at(k);
                grevlex_slices(a1, b1).then_with(|| grevlex_slices(a2, b2))
            }
        }
    }
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Reduction-step budget shared by every Gröbner computation of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_reductions: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_reductions: DEFAULT_REDUCTION_BUDGET,
        }
    }
}

/// Polynomial ideal given by generators over a fixed ambient.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    ambient: Ambient,
    generators: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped; every generator is remapped onto `ambient`.
    pub fn new(ambient: &Ambient, generators: Vec<Poly>) -> Result<Self, PolyError> {
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.remap(ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal {
            ambient: ambient.clone(),
            generators,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_generator(&self, g: Poly) -> Ideal {
        let mut gens = self.generators.clone();
        if !g.is_zero() {
            gens.push(g);
        }
        Ideal {
            ambient: self.ambient.clone(),
            generators: gens,
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Reduced Gröbner basis: monic elements, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    basis: Vec<Poly>,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn ambient(&self) -> &Ambient {
        self.ideal.ambient()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|p| p.leading_term_by(|a, b| self.order.cmp(a, b)).unwrap().0.clone())
            .collect()
    }

    /// Unique remainder of `p`; zero iff `p` lies in the ideal.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let p = p.remap(self.ambient()).expect("ambient mismatch in normal_form");
        let gs: Vec<SortedPoly> = self
            .basis
            .iter()
            .map(|g| SortedPoly::from_poly(g, self.order))
            .collect();
        let refs: Vec<&SortedPoly> = gs.iter().collect();
        let mut steps = Steps::unbounded();
        let r = reduce(SortedPoly::from_poly(&p, self.order), &refs, self.order, &mut steps)
            .expect("unbounded reduction");
        r.to_poly(self.ambient())
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        is_zero_dimensional(self)
    }
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(p)
}

/// True iff every variable has a pure power among the leading monomials
/// (the unit ideal counts as zero-dimensional: its variety is empty).
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    if gb.is_unit() {
        return true;
    }
    let lms = gb.leading_monomials();
    (0..gb.ambient().len()).all(|v| lms.iter().any(|m| m.pure_power_var() == Some(v)))
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_budget(ideal, order, &Budget::default())
}

pub fn buchberger_with_budget(
    ideal: &Ideal,
    order: MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut steps = Steps::new(budget.max_reductions);
    let basis = Engine::new(order).run(ideal, &mut steps)?;
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order,
        basis: basis.into_iter().map(|s| s.to_poly(ideal.ambient())).collect(),
    })
}

/// Generators of `ideal ∩ Q[keep]`, expressed over the ambient `keep`.
pub fn eliminate(ideal: &Ideal, keep: &[&str]) -> Result<Ideal, GroebnerError> {
    eliminate_with_budget(ideal, keep, &Budget::default())
}

pub fn eliminate_with_budget(ideal: &Ideal, keep: &[&str], budget: &Budget) -> Result<Ideal, GroebnerError> {
    let amb = ideal.ambient();
    for k in keep {
        if amb.index_of(k).is_none() {
            return Err(PolyError::UnknownVariable(k.to_string()).into());
        }
    }
    let elim: Vec<&str> = amb
        .names()
        .iter()
        .map(String::as_str)
        .filter(|n| !keep.contains(n))
        .collect();
    let mut order_names: Vec<&str> = elim.clone();
    order_names.extend_from_slice(keep);
    let block_amb = Ambient::new(&order_names);
    let keep_amb = Ambient::new(keep);
    let moved = Ideal::new(&block_amb, ideal.generators().to_vec())?;
    let gb = buchberger_with_budget(&moved, MonomialOrder::Block(elim.len()), budget)?;
    let gens = gb
        .basis()
        .iter()
        .filter(|g| (0..elim.len()).all(|v| !g.involves(v)))
        .map(|g| g.remap(&keep_amb))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Ideal::new(&keep_amb, gens)?)
}

// ---------------------------------------------------------------------------
// engine

struct Steps {
    used: u64,
    limit: u64,
}

impl Steps {
    fn new(limit: u64) -> Self {
        Steps { used: 0, limit }
    }

    fn unbounded() -> Self {
        Steps { used: 0, limit: u64::MAX }
    }

    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limit {
            Err(GroebnerError::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
struct SortedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl SortedPoly {
    fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SortedPoly { terms }
    }

    fn to_poly(&self, ambient: &Ambient) -> Poly {
        Poly::from_terms(ambient, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }

    fn mul_monomial(&self, m: &Monomial) -> Vec<(Monomial, Rational)> {
        self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect()
    }
}

/// `a - c * m * g`, all sorted decreasingly.
fn sub_scaled(
    a: &[(Monomial, Rational)],
    g: &SortedPoly,
    m: &Monomial,
    c: &Rational,
    order: MonomialOrder,
) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + g.terms.len());
    let mut i = 0;
    let mut gi = g.terms.iter().map(|(k, d)| (k.mul(m), d * c)).peekable();
    while i < a.len() || gi.peek().is_some() {
        match (a.get(i), gi.peek()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (k, d) = gi.next().unwrap();
                    out.push((k, -d));
                }
                Ordering::Equal => {
                    let (k, d) = gi.next().unwrap();
                    let s = &x.1 - d;
                    if !s.is_zero() {
                        out.push((k, s));
                    }
                    i += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (k, d) = gi.next().unwrap();
                out.push((k, -d));
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Full reduction of `f` by monic `gs`.
fn reduce(
    f: SortedPoly,
    gs: &[&SortedPoly],
    order: MonomialOrder,
    steps: &mut Steps,
) -> Result<SortedPoly, GroebnerError> {
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut p = f.terms;
    let mut head = 0;
    while head < p.len() {
        let (m, c) = (&p[head].0, &p[head].1);
        match gs.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                steps.tick()?;
                let q = g.lm().quotient_of(m);
                let c = c.clone();
                p = sub_scaled(&p[head..], g, &q, &c, order);
                head = 0;
            }
            None => {
                rem.push(p[head].clone());
                head += 1;
            }
        }
    }
    Ok(SortedPoly { terms: rem })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
    index: u64,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<SortedPoly>,
    sugars: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    next_pair: u64,
}

impl Engine {
    fn new(order: MonomialOrder) -> Self {
        Engine {
            order,
            polys: Vec::new(),
            sugars: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            next_pair: 0,
        }
    }

    fn run(mut self, ideal: &Ideal, steps: &mut Steps) -> Result<Vec<SortedPoly>, GroebnerError> {
        let mut inputs: Vec<SortedPoly> = ideal
            .generators()
            .iter()
            .map(|g| SortedPoly::from_poly(g, self.order))
            .collect();
        // deterministic processing: smallest leading monomials first
        inputs.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        for f in inputs {
            let sugar = f.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            if self.insert_reduced(f, sugar, steps)? {
                return Ok(self.unit());
            }
        }
        while let Some(pos) = self.select_pair() {
            let pair = self.pairs.swap_remove(pos);
            let s = self.s_poly(&pair);
            if self.insert_reduced(s, pair.sugar, steps)? {
                return Ok(self.unit());
            }
        }
        self.finish(steps)
    }

    fn unit(&self) -> Vec<SortedPoly> {
        let n = self.polys.first().map_or(0, |p| p.lm().len());
        vec![SortedPoly {
            terms: vec![(Monomial::one(n), Rational::one())],
        }]
    }

    /// Reduces `f` by the active basis and inserts it; returns true on a unit.
    fn insert_reduced(&mut self, f: SortedPoly, sugar: u32, steps: &mut Steps) -> Result<bool, GroebnerError> {
        let active: Vec<&SortedPoly> = self.active.iter().map(|&k| &self.polys[k]).collect();
        let mut h = reduce(f, &active, self.order, steps)?;
        if h.is_zero() {
            return Ok(false);
        }
        h.make_monic();
        let is_unit = h.lm().is_one();
        if is_unit {
            self.polys.push(h);
            return Ok(true);
        }
        self.polys.push(h);
        self.sugars.push(sugar);
        let idx = self.polys.len() - 1;
        self.update(idx);
        Ok(false)
    }

    fn select_pair(&self) -> Option<usize> {
        self.pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then(a.index.cmp(&b.index)))
            .map(|(k, _)| k)
    }

    fn s_poly(&self, pair: &Pair) -> SortedPoly {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = f.lm().quotient_of(&pair.lcm);
        let mg = g.lm().quotient_of(&pair.lcm);
        let a = f.mul_monomial(&mf);
        let terms = sub_scaled(&a, g, &mg, &Rational::one(), self.order);
        SortedPoly { terms }
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let d = lcm.degree();
        let si = self.sugars[i] + d - self.polys[i].lm().degree();
        let sj = self.sugars[j] + d - self.polys[j].lm().degree();
        si.max(sj)
    }

    /// Gebauer–Möller installation of the new element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let mut c: Vec<usize> = self.active.clone();
        let mut d: Vec<usize> = Vec::new();
        while !c.is_empty() {
            let g1 = c.remove(0);
            let lm1 = self.polys[g1].lm();
            let l1 = lm_h.lcm(lm1);
            let keep = lm_h.coprime(lm1)
                || !c
                    .iter()
                    .chain(d.iter())
                    .any(|&g2| lm_h.lcm(self.polys[g2].lm()).divides(&l1));
            if keep {
                d.push(g1);
            }
        }
        let e: Vec<usize> = d
            .into_iter()
            .filter(|&g| !lm_h.coprime(self.polys[g].lm()))
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lh_i = lm_h.lcm(polys[p.i].lm());
            let lh_j = lm_h.lcm(polys[p.j].lm());
            !(lm_h.divides(&p.lcm) && lh_i != p.lcm && lh_j != p.lcm)
        });
        for g in e {
            let lcm = lm_h.lcm(self.polys[g].lm());
            let sugar = self.pair_sugar(g, h, &lcm);
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm,
                sugar,
                index: self.next_pair,
            });
            self.next_pair += 1;
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn finish(self, steps: &mut Steps) -> Result<Vec<SortedPoly>, GroebnerError> {
        let order = self.order;
        let mut basis: Vec<SortedPoly> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        basis.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
        // interreduce tails
        for k in 0..basis.len() {
            let others: Vec<&SortedPoly> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g)
                .collect();
            let lead = basis[k].terms[0].clone();
            let tail = SortedPoly {
                terms: basis[k].terms[1..].to_vec(),
            };
            let reduced = reduce(tail, &others, order, steps)?;
            let mut terms = vec![lead];
            terms.extend(reduced.terms);
            basis[k] = SortedPoly { terms };
        }
        Ok(basis)
    }
}
