//! Darboux polynomials, invariant ideals, and invariant codimension-one
//! distributions given by one-forms.
//!
//! The search runs one undetermined-coefficient system per candidate
//! leading monomial `m`: `g = m + Σ c_j m_j` over the monomials `m_j < m`
//! (grevlex) and `h = Σ e_l μ_l` over monomials of degree at most the
//! cofactor bound.  The coefficients of `δ_v(g) − h·g` generate an ideal in
//! `Q[c, e]` whose rational points are the Darboux pairs in that stratum.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::{buchberger_with_budget, rational_points, Budget, GroebnerError, Ideal, MonomialOrder};
use crate::polyring::{parse_poly, Ambient, Monomial, Poly, RatFunc, Rational};
use crate::vectorfield::{affine_degree, derive_poly, VectorField};

/// `δ_v(g) = h·g` with `g` monic under grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxPair {
    pub g: Poly,
    pub h: Poly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

/// A stratum whose coefficient ideal has positive dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    /// Leading monomial of every member.
    pub leading: String,
    /// Template for `g` with unknown coefficients `c0, c1, …`.
    pub g: String,
    /// Template for the cofactor with unknowns `e0, e1, …`.
    pub h: String,
    /// Generators of the coefficient ideal in the unknowns.
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub degree_bound: u32,
    pub found: Vec<DarbouxPair>,
    pub status: SearchStatus,
    pub families: Vec<Family>,
    pub irrational_branches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub g: String,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReportJson {
    #[serde(rename = "D")]
    pub degree_bound: u32,
    pub status: SearchStatus,
    pub found: Vec<PairJson>,
    pub families: Vec<Family>,
    pub irrational_branches: usize,
}

impl SearchReport {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }

    pub fn to_json(&self) -> SearchReportJson {
        SearchReportJson {
            degree_bound: self.degree_bound,
            status: self.status,
            found: self
                .found
                .iter()
                .map(|p| PairJson {
                    g: p.g.to_string(),
                    h: p.h.to_string(),
                })
                .collect(),
            families: self.families.clone(),
            irrational_branches: self.irrational_branches,
        }
    }
}

/// `h` with `δ_v(g) = h·g`, or `None` when `g` does not divide `δ_v(g)`.
pub fn cofactor_of(v: &VectorField, g: &Poly) -> Result<Option<Poly>, Error> {
    let comps = v.poly_components()?;
    let g = g.remap(v.ambient())?;
    if g.is_constant() {
        return Err(Error::invalid("cofactor of a constant polynomial"));
    }
    Ok(derive_poly(&comps, &g).exact_divide(&g)?)
}

/// Cofactor degree bound: `max(deg v − 1, 0)`.
pub fn cofactor_degree_bound(v: &VectorField) -> Result<u32, Error> {
    Ok(affine_degree(v)?.degree.saturating_sub(1))
}

/// Monomials in `n` variables of total degree `lo..=hi`, grevlex ascending.
pub fn monomials_up_to(n: usize, lo: u32, hi: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for d in lo..=hi {
        let mut cur = vec![0; n];
        rec(n, 0, d, &mut cur, &mut out);
    }
    out.sort_by(|a, b| a.cmp_grevlex(b));
    out
}

/// The coefficient system of one stratum.
struct Stratum {
    lead: Monomial,
    below: Vec<Monomial>,
    cof: Vec<Monomial>,
    unknowns: Ambient,
    equations: Vec<Poly>,
}

impl Stratum {
    fn build(comps: &[Poly], x_amb: &Ambient, lead: &Monomial, cof: &[Monomial]) -> Stratum {
        let n = x_amb.len();
        let below: Vec<Monomial> = monomials_up_to(n, 0, lead.degree())
            .into_iter()
            .filter(|m| m.cmp_grevlex(lead).is_lt())
            .collect();
        let mut names: Vec<String> = (0..below.len()).map(|j| format!("c{j}")).collect();
        names.extend((0..cof.len()).map(|l| format!("e{l}")));
        let unknowns = Ambient::new(&names);
        let nc = below.len();

        let mut eqs: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        let mut add = |x: &Monomial, p: Poly| {
            let slot = eqs
                .entry(x.exponents().to_vec())
                .or_insert_with(|| Poly::zero(&unknowns));
            *slot = &*slot + &p;
        };
        // δ(g): δ(lead) + Σ c_j δ(m_j)
        let mono = |m: &Monomial| Poly::monomial(x_amb, m.clone(), Rational::one());
        let coef = |var: Option<usize>, c: &Rational| match var {
            Some(v) => Poly::var(&unknowns, v).scale(c),
            None => Poly::constant(&unknowns, c.clone()),
        };
        let all: Vec<(Option<usize>, &Monomial)> = std::iter::once((None, lead))
            .chain(below.iter().enumerate().map(|(j, m)| (Some(j), m)))
            .collect();
        for (var, m) in &all {
            for (x, c) in derive_poly(comps, &mono(m)).terms() {
                add(x, coef(*var, c));
            }
        }
        // − h·g: − Σ e_l μ_l (lead + Σ c_j m_j)
        for (l, mu) in cof.iter().enumerate() {
            let e = Poly::var(&unknowns, nc + l);
            for (var, m) in &all {
                let factor = match var {
                    Some(j) => &e * &Poly::var(&unknowns, *j),
                    None => e.clone(),
                };
                add(&mu.mul(m), -&factor);
            }
        }
        let equations = eqs.into_values().filter(|p| !p.is_zero()).collect();
        Stratum {
            lead: lead.clone(),
            below,
            cof: cof.to_vec(),
            unknowns,
            equations,
        }
    }

    fn pair(&self, x_amb: &Ambient, point: &[Rational]) -> DarbouxPair {
        let nc = self.below.len();
        let mut g = Poly::monomial(x_amb, self.lead.clone(), Rational::one());
        for (m, c) in self.below.iter().zip(&point[..nc]) {
            g = &g + &Poly::monomial(x_amb, m.clone(), c.clone());
        }
        let h = Poly::from_terms(x_amb, self.cof.iter().cloned().zip(point[nc..].iter().cloned()));
        DarbouxPair { g, h }
    }

    fn family(&self, x_amb: &Ambient) -> Family {
        let mut names = x_amb.names().to_vec();
        names.extend(self.unknowns.names().iter().cloned());
        let big = Ambient::new(&names);
        let n = x_amb.len();
        let lift = |m: &Monomial| {
            let mut e = m.exponents().to_vec();
            e.resize(big.len(), 0);
            Monomial::from_exponents(e)
        };
        let mut g = Poly::monomial(&big, lift(&self.lead), Rational::one());
        for (j, m) in self.below.iter().enumerate() {
            g = &g + &(&Poly::var(&big, n + j) * &Poly::monomial(&big, lift(m), Rational::one()));
        }
        let nc = self.below.len();
        let mut h = Poly::zero(&big);
        for (l, mu) in self.cof.iter().enumerate() {
            h = &h + &(&Poly::var(&big, n + nc + l) * &Poly::monomial(&big, lift(mu), Rational::one()));
        }
        let ideal = Ideal::new(&self.unknowns, self.equations.clone())
            .map(|i| i.to_string())
            .unwrap_or_default();
        Family {
            leading: self.lead.render(x_amb),
            g: g.to_string(),
            h: h.to_string(),
            ideal,
        }
    }
}

/// Rational points of `equations` after pinning free unknowns to small
/// integers until the system becomes zero-dimensional.  Returns `None` if
/// no pinning among the tried values gives a finite nonempty set.
fn specialize(
    unknowns: &Ambient,
    equations: &[Poly],
    budget: &Budget,
) -> Result<Option<Vec<Vec<Rational>>>, GroebnerError> {
    const TRIES: [i64; 3] = [0, 1, -1];
    let mut eqs = equations.to_vec();
    for var in 0..unknowns.len() {
        let gb = buchberger_with_budget(&Ideal::new(unknowns, eqs.clone())?, MonomialOrder::GrevLex, budget)?;
        if gb.is_unit() {
            return Ok(None);
        }
        if gb.is_zero_dimensional() {
            break;
        }
        // pin `var` only if some value keeps the set nonempty
        let mut pinned = false;
        for t in TRIES {
            let mut trial = eqs.clone();
            trial.push(&Poly::var(unknowns, var) - &Poly::constant(unknowns, Rational::from_integer(t.into())));
            let gb = buchberger_with_budget(&Ideal::new(unknowns, trial.clone())?, MonomialOrder::GrevLex, budget)?;
            if !gb.is_unit() {
                eqs = trial;
                pinned = true;
                break;
            }
        }
        if !pinned {
            return Ok(None);
        }
    }
    let pts = rational_points(&Ideal::new(unknowns, eqs)?, budget)?;
    if pts.positive_dimensional || pts.points.is_empty() {
        return Ok(None);
    }
    Ok(Some(pts.points))
}

/// Unknowns solved from equations `a·u + rest = 0` with constant `a != 0`
/// and `u` absent from `rest`, in elimination order.
struct LinearReduction {
    substitutions: Vec<(usize, Poly)>,
    remaining: Vec<Poly>,
}

fn linear_reduce(unknowns: &Ambient, equations: &[Poly]) -> Option<LinearReduction> {
    let mut eqs: Vec<Poly> = equations.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut substitutions = Vec::new();
    loop {
        if eqs.iter().any(Poly::is_constant) {
            return None;
        }
        let pick = eqs.iter().enumerate().find_map(|(k, e)| {
            (0..unknowns.len()).find_map(|u| {
                let parts = e.coeffs_in(u);
                if parts.len() <= 2 && parts.keys().max() == Some(&1) {
                    let a = parts.get(&1)?.constant_value()?;
                    let rest = parts.get(&0).cloned().unwrap_or_else(|| Poly::zero(unknowns));
                    Some((k, u, rest.scale(&(-a.recip()))))
                } else {
                    None
                }
            })
        });
        let Some((k, u, expr)) = pick else { break };
        eqs.swap_remove(k);
        let mut images: Vec<Poly> = (0..unknowns.len()).map(|i| Poly::var(unknowns, i)).collect();
        images[u] = expr.clone();
        eqs = eqs.iter().map(|e| e.compose(&images)).filter(|e| !e.is_zero()).collect();
        substitutions.push((u, expr));
    }
    Some(LinearReduction {
        substitutions,
        remaining: eqs,
    })
}

#[derive(Default)]
struct StratumSolution {
    points: Vec<Vec<Rational>>,
    irrational_branches: usize,
    positive_dimensional: bool,
    specialization_exhausted: bool,
}

impl StratumSolution {
    fn absorb(&mut self, other: StratumSolution) {
        self.points.extend(other.points);
        self.irrational_branches += other.irrational_branches;
        self.positive_dimensional |= other.positive_dimensional;
        self.specialization_exhausted |= other.specialization_exhausted;
    }
}

fn solve_stratum(s: &Stratum, budget: &Budget) -> Result<StratumSolution, GroebnerError> {
    let mut out = split_solve(&s.unknowns, s.equations.clone(), &vec![false; s.unknowns.len()], budget)?;
    out.points.sort();
    out.points.dedup();
    Ok(out)
}

/// A way to split the solution set into simpler pieces.
enum Split {
    /// `u` takes one of these rational values; `irrational` flags roots
    /// outside `Q`.
    Values { var: usize, roots: Vec<Rational>, irrational: bool },
    /// Equation `k` is `u · q`: either `u = 0` or `q = 0`.
    Factor { eq: usize, var: usize, cofactor: Poly },
    /// A subsystem has no solutions.
    Inconsistent,
}

/// Largest variable subset examined by [`subsystem_split`].
const SUBSYSTEM_VARS: usize = 3;

/// Solves the equations supported on a few variables on their own: a unit
/// ideal there is inconsistent for the whole system, and a lex basis
/// element in one variable pins that variable.
fn subsystem_split(amb: &Ambient, eqs: &[Poly], budget: &Budget) -> Result<Option<Split>, GroebnerError> {
    let support = |e: &Poly| -> Vec<usize> { (0..amb.len()).filter(|&u| e.involves(u)).collect() };
    let mut supports: Vec<Vec<usize>> = eqs.iter().map(support).filter(|s| s.len() <= SUBSYSTEM_VARS).collect();
    supports.sort_by_key(|s| (s.len(), s.clone()));
    supports.dedup();
    for s in supports {
        let sub: Vec<&Poly> = eqs.iter().filter(|e| support(e).iter().all(|u| s.contains(u))).collect();
        if sub.len() < 2 {
            continue;
        }
        let names: Vec<&str> = s.iter().map(|&u| amb.name(u)).collect();
        let sub_amb = Ambient::new(&names);
        let gens = sub.iter().map(|e| e.remap(&sub_amb)).collect::<Result<Vec<_>, _>>()?;
        let gb = buchberger_with_budget(&Ideal::new(&sub_amb, gens)?, MonomialOrder::Lex, budget)?;
        if gb.is_unit() {
            return Ok(Some(Split::Inconsistent));
        }
        for g in gb.basis() {
            let vars: Vec<usize> = (0..sub_amb.len()).filter(|&u| g.involves(u)).collect();
            if let [u] = vars[..] {
                let uni = crate::linalg::UniPoly::from_poly(g, u).expect("univariate").squarefree_part();
                let roots = crate::linalg::rational_roots(&uni);
                let irrational = uni.degree().unwrap_or(0) > roots.len();
                return Ok(Some(Split::Values { var: s[u], roots, irrational }));
            }
        }
    }
    Ok(None)
}

fn find_split(amb: &Ambient, eqs: &[Poly]) -> Option<Split> {
    for e in eqs {
        let vars: Vec<usize> = (0..amb.len()).filter(|&u| e.involves(u)).collect();
        if let [u] = vars[..] {
            let uni = crate::linalg::UniPoly::from_poly(e, u)?.squarefree_part();
            let roots = crate::linalg::rational_roots(&uni);
            let irrational = uni.degree().unwrap_or(0) > roots.len();
            return Some(Split::Values { var: u, roots, irrational });
        }
    }
    for (k, e) in eqs.iter().enumerate() {
        for u in (0..amb.len()).filter(|&u| e.involves(u)) {
            if e.valuation_in(u).is_some_and(|v| v > 0) {
                let x = Poly::var(amb, u);
                let q = e.exact_divide(&x).ok().flatten()?;
                return Some(Split::Factor { eq: k, var: u, cofactor: q });
            }
        }
    }
    None
}

/// Rational points of `eqs`, with variables marked in `fixed` already
/// determined by an enclosing substitution.  Returned points carry zeros
/// in the fixed slots; callers fill them in.
fn split_solve(
    amb: &Ambient,
    eqs: Vec<Poly>,
    fixed: &[bool],
    budget: &Budget,
) -> Result<StratumSolution, GroebnerError> {
    let mut out = StratumSolution::default();
    let Some(red) = linear_reduce(amb, &eqs) else {
        return Ok(out);
    };
    let mut fixed_here = fixed.to_vec();
    for (u, _) in &red.substitutions {
        fixed_here[*u] = true;
    }
    let eqs = red.remaining;

    let mut partial = StratumSolution::default();
    let split = match find_split(amb, &eqs) {
        Some(sp) => Some(sp),
        None => subsystem_split(amb, &eqs, budget)?,
    };
    match split {
        Some(Split::Inconsistent) => {}
        Some(Split::Values { var, roots, irrational }) => {
            partial.irrational_branches += usize::from(irrational);
            for r in roots {
                let mut next = eqs.clone();
                next.push(&Poly::var(amb, var) - &Poly::constant(amb, r));
                partial.absorb(split_solve(amb, next, &fixed_here, budget)?);
            }
        }
        Some(Split::Factor { eq, var, cofactor }) => {
            let mut first = eqs.clone();
            first[eq] = Poly::var(amb, var);
            partial.absorb(split_solve(amb, first, &fixed_here, budget)?);
            let mut second = eqs;
            second[eq] = cofactor;
            partial.absorb(split_solve(amb, second, &fixed_here, budget)?);
        }
        None => partial = leaf_solve(amb, &eqs, &fixed_here, budget)?,
    }
    for mut pt in partial.points.drain(..) {
        for (u, expr) in red.substitutions.iter().rev() {
            pt[*u] = expr.evaluate(&pt)?;
        }
        out.points.push(pt);
    }
    out.absorb(partial);
    Ok(out)
}

/// Gröbner fallback on the variables that are still free.
fn leaf_solve(amb: &Ambient, eqs: &[Poly], fixed: &[bool], budget: &Budget) -> Result<StratumSolution, GroebnerError> {
    let mut out = StratumSolution::default();
    let free: Vec<usize> = (0..amb.len()).filter(|&u| !fixed[u]).collect();
    let sub_names: Vec<&str> = free.iter().map(|&u| amb.name(u)).collect();
    let sub_amb = Ambient::new(&sub_names);
    let sub_eqs = eqs.iter().map(|e| e.remap(&sub_amb)).collect::<Result<Vec<_>, _>>()?;
    let sub_points = if free.is_empty() {
        vec![Vec::new()]
    } else {
        let pts = rational_points(&Ideal::new(&sub_amb, sub_eqs.clone())?, budget)?;
        out.irrational_branches = pts.irrational_branches;
        if pts.positive_dimensional {
            out.positive_dimensional = true;
            match specialize(&sub_amb, &sub_eqs, budget) {
                Ok(p) => p.unwrap_or_default(),
                Err(GroebnerError::BudgetExhausted(_)) => {
                    out.specialization_exhausted = true;
                    Vec::new()
                }
                Err(e) => return Err(e),
            }
        } else {
            pts.points
        }
    };
    for sp in sub_points {
        let mut full = vec![Rational::zero(); amb.len()];
        for (&u, val) in free.iter().zip(sp) {
            full[u] = val;
        }
        out.points.push(full);
    }
    Ok(out)
}

/// All rational Darboux pairs with `1 <= deg g <= D`, stratified by the
/// grevlex leading monomial of `g`.
pub fn darboux_search(v: &VectorField, d: u32) -> Result<SearchReport, Error> {
    darboux_search_with_budget(v, d, &Budget::default())
}

pub fn darboux_search_with_budget(v: &VectorField, d: u32, budget: &Budget) -> Result<SearchReport, Error> {
    let comps = v.poly_components()?;
    if v.is_zero() {
        return Err(Error::invalid("Darboux search needs a nonzero field"));
    }
    let x_amb = v.ambient().clone();
    let n = x_amb.len();
    let cof = monomials_up_to(n, 0, cofactor_degree_bound(v)?);
    let mut report = SearchReport {
        degree_bound: d,
        found: Vec::new(),
        status: SearchStatus::Complete,
        families: Vec::new(),
        irrational_branches: 0,
    };
    let mut candidates: Vec<DarbouxPair> = Vec::new();
    for lead in monomials_up_to(n, 1, d) {
        let s = Stratum::build(&comps, &x_amb, &lead, &cof);
        let solved = match solve_stratum(&s, budget) {
            Ok(r) => r,
            Err(GroebnerError::BudgetExhausted(_)) => {
                report.status = SearchStatus::BudgetExhausted;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        report.irrational_branches += solved.irrational_branches;
        if solved.positive_dimensional {
            report.families.push(s.family(&x_amb));
        }
        if solved.specialization_exhausted {
            report.status = SearchStatus::BudgetExhausted;
        }
        let points = solved.points;
        candidates.extend(points.iter().map(|p| s.pair(&x_amb, p)));
    }
    // drop g with a proper found divisor of smaller degree
    candidates.sort_by_key(|p| p.g.total_degree());
    for c in candidates {
        let deg = c.g.total_degree();
        let reducible = report
            .found
            .iter()
            .any(|f| f.g.total_degree() < deg && f.g.divides(&c.g));
        if !reducible {
            report.found.push(c);
        }
    }
    Ok(report)
}

/// Every generator `g` of `ideal` has `δ_v(g)` in `ideal`.
pub fn invariant_ideal_check(v: &VectorField, ideal: &Ideal) -> Result<bool, Error> {
    invariant_ideal_check_with_budget(v, ideal, &Budget::default())
}

pub fn invariant_ideal_check_with_budget(v: &VectorField, ideal: &Ideal, budget: &Budget) -> Result<bool, Error> {
    let comps = v.poly_components()?;
    let ideal = Ideal::new(v.ambient(), ideal.generators().to_vec())?;
    let gb = buchberger_with_budget(&ideal, MonomialOrder::GrevLex, budget)?;
    Ok(ideal
        .generators()
        .iter()
        .all(|g| gb.normal_form(&derive_poly(&comps, g)).is_zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    ambient: Ambient,
    components: Vec<Poly>,
}

impl OneForm {
    pub fn new(ambient: &Ambient, components: Vec<Poly>) -> Result<Self, Error> {
        if components.len() != ambient.len() {
            return Err(Error::invalid("one-form needs one component per variable"));
        }
        if components.iter().all(Poly::is_zero) {
            return Err(Error::invalid("the zero one-form does not define a distribution"));
        }
        let components = components
            .iter()
            .map(|c| c.remap(ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OneForm {
            ambient: ambient.clone(),
            components,
        })
    }

    pub fn parse<S: AsRef<str>>(ambient: &Ambient, components: &[S]) -> Result<Self, Error> {
        let comps = components
            .iter()
            .map(|c| parse_poly(c.as_ref(), ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ambient, comps)
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `(a_2, −a_1)` for a planar field.
    pub fn conormal_of_planar(v: &VectorField) -> Result<Self, Error> {
        let a = v.poly_components()?;
        if a.len() != 2 {
            return Err(Error::invalid("conormal form needs a planar field"));
        }
        Self::new(v.ambient(), vec![a[1].clone(), -&a[0]])
    }
}

/// `(∇_v^∨ ω)_j = δ_v(ω_j) + Σ_i ∂_{x_j}(a_i) ω_i`.
pub fn dual_connection(v: &VectorField, w: &OneForm) -> Result<Vec<Poly>, Error> {
    let a = v.poly_components()?;
    if w.ambient != *v.ambient() {
        return Err(Error::AmbientMismatch(v.vars().to_vec(), w.ambient.names().to_vec()));
    }
    let n = a.len();
    Ok((0..n)
        .map(|j| {
            let mut t = derive_poly(&a, &w.components[j]);
            for (ai, wi) in a.iter().zip(&w.components) {
                t = &t + &(&ai.derivative(j) * wi);
            }
            t
        })
        .collect())
}

/// `h` with `∇_v^∨ ω = h·ω`, or `None`.
pub fn codim1_invariant(v: &VectorField, w: &OneForm) -> Result<Option<RatFunc>, Error> {
    let nabla = dual_connection(v, w)?;
    let om = &w.components;
    let n = om.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if &nabla[i] * &om[j] != &nabla[j] * &om[i] {
                return Ok(None);
            }
        }
    }
    let j = om.iter().position(|c| !c.is_zero()).expect("one-form is nonzero");
    let h = RatFunc::new(nabla[j].clone(), om[j].clone())?;
    Ok(Some(h))
}

/// With `h` from [`codim1_invariant`] and `g = Σ a_i ω_i`, checks
/// `δ_v(g) = h·g`.
pub fn tangency_identity_check(v: &VectorField, w: &OneForm) -> Result<bool, Error> {
    let h = codim1_invariant(v, w)?.ok_or_else(|| Error::invalid("the one-form does not define an invariant distribution"))?;
    let a = v.poly_components()?;
    let g = a
        .iter()
        .zip(&w.components)
        .fold(Poly::zero(v.ambient()), |acc, (ai, wi)| &acc + &(ai * wi));
    let lhs = RatFunc::from_poly(derive_poly(&a, &g));
    Ok(lhs == &h * &RatFunc::from_poly(g))
}

/// `Σ ∂_{x_i} a_i`.
pub fn divergence(v: &VectorField) -> Result<Poly, Error> {
    let a = v.poly_components()?;
    Ok(a.iter()
        .enumerate()
        .fold(Poly::zero(v.ambient()), |acc, (i, ai)| &acc + &ai.derivative(i)))
}

/// Found polynomials vanishing at `point`.
pub fn vanishing_at(report: &SearchReport, point: &[Rational]) -> Result<Vec<DarbouxPair>, Error> {
    let mut out = Vec::new();
    for p in &report.found {
        if p.g.evaluate(point)?.is_zero() {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(vars: &[&str], comps: &[&str]) -> VectorField {
        VectorField::parse(vars, comps).unwrap()
    }

    fn p(v: &VectorField, s: &str) -> Poly {
        parse_poly(s, v.ambient()).unwrap()
    }

    fn found(r: &SearchReport) -> Vec<(String, String)> {
        r.found.iter().map(|x| (x.g.to_string(), x.h.to_string())).collect()
    }

    #[test]
    fn cofactors() {
        let v = field(&["x", "y"], &["x", "2*y"]);
        assert_eq!(cofactor_of(&v, &p(&v, "x")).unwrap(), Some(p(&v, "1")));
        let w = field(&["x", "y"], &["y", "x + y"]);
        assert_eq!(cofactor_of(&w, &p(&w, "y^2 - x*y - x^2")).unwrap(), Some(p(&w, "1")));
        assert_eq!(cofactor_of(&w, &p(&w, "x")).unwrap(), None);
        assert!(cofactor_of(&w, &p(&w, "3")).is_err());
    }

    #[test]
    fn monomial_enumeration() {
        let ms = monomials_up_to(2, 0, 2);
        let amb = Ambient::new(&["x", "y"]);
        let r: Vec<String> = ms.iter().map(|m| m.render(&amb)).collect();
        assert_eq!(r, ["1", "y", "x", "y^2", "x*y", "x^2"]);
    }

    #[test]
    fn diagonal_search() {
        let v = field(&["x", "y"], &["x", "2*y"]);
        let r = darboux_search(&v, 1).unwrap();
        assert!(r.is_complete());
        assert_eq!(found(&r), [("y".into(), "2".into()), ("x".into(), "1".into())]);
        assert!(r.families.is_empty());
    }

    #[test]
    fn golden_search() {
        let v = field(&["x", "y"], &["y", "x + y"]);
        let r = darboux_search(&v, 2).unwrap();
        assert!(r.is_complete());
        assert_eq!(found(&r), [("x^2 + x*y - y^2".into(), "1".into())]);
        // the squares of the two irrational eigenlines
        assert!(r.irrational_branches > 0);
        assert!(darboux_search(&v, 1).unwrap().found.is_empty());
    }

    #[test]
    fn parabola_first_integral() {
        let v = field(&["x", "y"], &["1", "2*x"]);
        let r = darboux_search(&v, 1).unwrap();
        assert!(r.found.is_empty() && r.is_complete());
        let r = darboux_search(&v, 2).unwrap();
        assert_eq!(found(&r), [("x^2 - y".into(), "0".into())]);
        assert_eq!(r.families.len(), 1);
        assert_eq!(r.families[0].leading, "x^2");
    }

    #[test]
    fn radial_family() {
        let v = field(&["x", "y"], &["x", "y"]);
        let r = darboux_search(&v, 1).unwrap();
        assert_eq!(r.families.len(), 1);
        assert_eq!(found(&r), [("y".into(), "1".into()), ("x".into(), "1".into())]);
    }

    #[test]
    fn invariant_ideals() {
        let v = field(&["x"], &["x"]);
        assert!(invariant_ideal_check(&v, &Ideal::new(v.ambient(), vec![p(&v, "x")]).unwrap()).unwrap());
        let w = field(&["x", "y"], &["1", "2*x"]);
        assert!(invariant_ideal_check(&w, &Ideal::new(w.ambient(), vec![p(&w, "y - x^2")]).unwrap()).unwrap());
        let u = field(&["x", "y"], &["0", "1"]);
        assert!(!invariant_ideal_check(&u, &Ideal::new(u.ambient(), vec![p(&u, "y")]).unwrap()).unwrap());
    }

    #[test]
    fn one_forms() {
        let v = field(&["x", "y"], &["1", "2*x"]);
        let w = OneForm::parse(v.ambient(), &["-2*x", "1"]).unwrap();
        assert_eq!(codim1_invariant(&v, &w).unwrap(), Some(RatFunc::zero(v.ambient())));
        assert!(tangency_identity_check(&v, &w).unwrap());

        let v = field(&["x", "y"], &["x", "2*y"]);
        let w = OneForm::parse(v.ambient(), &["2*y", "-x"]).unwrap();
        let h = codim1_invariant(&v, &w).unwrap().unwrap();
        assert_eq!(h.to_string(), "3");
        assert_eq!(RatFunc::from_poly(divergence(&v).unwrap()), h);

        let v = field(&["x", "y"], &["x", "y"]);
        let w = OneForm::parse(v.ambient(), &["0", "1"]).unwrap();
        assert_eq!(codim1_invariant(&v, &w).unwrap().unwrap().to_string(), "1");
        assert!(tangency_identity_check(&v, &w).unwrap());

        let w = OneForm::parse(v.ambient(), &["y", "1"]).unwrap();
        assert_eq!(codim1_invariant(&v, &w).unwrap(), None);
        assert!(tangency_identity_check(&v, &w).is_err());
        assert!(OneForm::parse(v.ambient(), &["0", "0"]).is_err());
    }

    #[test]
    fn report_json() {
        let v = field(&["x", "y"], &["x", "2*y"]);
        let j = serde_json::to_value(darboux_search(&v, 1).unwrap().to_json()).unwrap();
        assert_eq!(j["D"], 1);
        assert_eq!(j["status"], "COMPLETE");
        assert_eq!(j["found"][0]["g"], "y");
        assert_eq!(j["irrational_branches"], 0);
    }
}
