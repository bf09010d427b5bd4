//! First prolongation of a vector field to the cotangent coordinates,
//! fiber-linear forms, and invariance of horizontal (fiber-homogeneous) ideals.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::{buchberger_with_budget, Budget, GroebnerError, Ideal, MonomialOrder};
use crate::linalg::QMatrix;
use crate::polyring::{gcd_many, lcm, parse_poly, Ambient, Poly, RatFunc, Rational};
use crate::vectorfield::VectorField;

/// Base ambient `(x_1..x_n)` extended by fiber coordinates `(y_1..y_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cotangent {
    pub base: Ambient,
    pub total: Ambient,
    pub fiber_vars: Vec<String>,
}

impl Cotangent {
    pub fn of(base: &Ambient) -> Self {
        let fiber_vars = base.fresh_names(&["y", "p", "eta", "w"], base.len(), true);
        let total = base.extended(&fiber_vars);
        Cotangent {
            base: base.clone(),
            total,
            fiber_vars,
        }
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// Index of `y_i` in the total ambient.
    pub fn fiber_index(&self, i: usize) -> usize {
        self.n() + i
    }

    pub fn fiber_var(&self, i: usize) -> Poly {
        Poly::var(&self.total, self.fiber_index(i))
    }

    /// Degree of a monomial in the fiber block.
    fn fiber_degree(&self, m: &crate::polyring::Monomial) -> u32 {
        (0..self.n()).map(|i| m.exp(self.fiber_index(i))).sum()
    }

    pub fn is_fiber_homogeneous(&self, p: &Poly) -> bool {
        let mut degs = p.terms().map(|(m, _)| self.fiber_degree(m));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

/// `v^[1]` on `(x, y)`: x-part `a_i`, y-part `−Σ_j ∂_{x_i}(a_j)·y_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedField {
    pub base: VectorField,
    pub full: VectorField,
    pub cotangent: Cotangent,
}

impl ProlongedField {
    pub fn fiber_vars(&self) -> &[String] {
        &self.cotangent.fiber_vars
    }

    /// The y-components of the full field.
    pub fn fiber_components(&self) -> &[RatFunc] {
        &self.full.components()[self.base.dim()..]
    }
}

pub fn first_prolongation(v: &VectorField) -> Result<ProlongedField, Error> {
    if !v.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    first_prolongation_local(v)
}

/// Same formula for rational components, valid on the open set where the
/// denominators do not vanish.
pub fn first_prolongation_local(v: &VectorField) -> Result<ProlongedField, Error> {
    let cot = Cotangent::of(v.ambient());
    let n = v.dim();
    let comps: Vec<RatFunc> = v
        .components()
        .iter()
        .map(|c| c.remap(&cot.total))
        .collect::<Result<_, _>>()?;
    let mut full = comps.clone();
    for i in 0..n {
        let mut acc = RatFunc::zero(&cot.total);
        for (j, a) in comps.iter().enumerate() {
            let d = a.derivative(i);
            if !d.is_zero() {
                acc = &acc - &(&d * &RatFunc::from_poly(cot.fiber_var(j)));
            }
        }
        full.push(acc);
    }
    Ok(ProlongedField {
        base: v.clone(),
        full: VectorField::new(&cot.total, full)?,
        cotangent: cot,
    })
}

/// A polynomial on `(x, y)` in which every term has exactly one `y_i`, to
/// the first power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberLinearForm {
    pub poly: Poly,
}

impl FiberLinearForm {
    pub fn new(poly: Poly, cot: &Cotangent) -> Result<Self, Error> {
        let ok = poly.terms().all(|(m, _)| cot.fiber_degree(m) == 1);
        if !ok {
            return Err(Error::invalid("form is not linear in the fiber variables"));
        }
        Ok(FiberLinearForm { poly })
    }
}

/// `w̄ = Σ w_i y_i` for a polynomial field.
pub fn tautological_form(w: &VectorField) -> Result<FiberLinearForm, Error> {
    let cot = Cotangent::of(w.ambient());
    let comps = w.poly_components()?;
    Ok(FiberLinearForm {
        poly: tautological_poly(&comps, &cot)?,
    })
}

pub(crate) fn tautological_poly(comps: &[Poly], cot: &Cotangent) -> Result<Poly, Error> {
    let mut acc = Poly::zero(&cot.total);
    for (i, c) in comps.iter().enumerate() {
        acc = &acc + &(&c.remap(&cot.total)? * &cot.fiber_var(i));
    }
    Ok(acc)
}

/// A fiber-homogeneous ideal on `(x, y)`, the affine cone over a subvariety
/// of the projectivized cotangent bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalIdeal {
    pub ideal: Ideal,
    pub cotangent: Cotangent,
    /// Every generator is homogeneous in the fiber block.
    pub homogeneous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizontalIdealJson {
    pub vars: Vec<String>,
    pub fiber_vars: Vec<String>,
    pub generators: Vec<String>,
}

impl HorizontalIdeal {
    pub fn new(cot: &Cotangent, generators: Vec<Poly>) -> Result<Self, Error> {
        let ideal = Ideal::new(&cot.total, generators)?;
        let homogeneous = ideal.generators().iter().all(|g| cot.is_fiber_homogeneous(g));
        Ok(HorizontalIdeal {
            ideal,
            cotangent: cot.clone(),
            homogeneous,
        })
    }

    pub fn generators(&self) -> &[Poly] {
        self.ideal.generators()
    }

    pub fn to_json(&self) -> HorizontalIdealJson {
        HorizontalIdealJson {
            vars: self.cotangent.base.names().to_vec(),
            fiber_vars: self.cotangent.fiber_vars.clone(),
            generators: self.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(j: &HorizontalIdealJson) -> Result<Self, Error> {
        let base = Ambient::new(&j.vars);
        if j.fiber_vars.len() != base.len() {
            return Err(Error::Format("fiber_vars must match vars in length".into()));
        }
        let total = base.extended(&j.fiber_vars);
        let cot = Cotangent {
            base,
            total: total.clone(),
            fiber_vars: j.fiber_vars.clone(),
        };
        let gens = j
            .generators
            .iter()
            .map(|g| parse_poly(g, &total))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&cot, gens)
    }
}

/// `⟨v̄⟩`, the cone over the canonical invariant hypersurface.
pub fn canonical_hypersurface(v: &VectorField) -> Result<HorizontalIdeal, Error> {
    if v.is_zero() {
        return Err(Error::invalid("the zero field has no canonical hypersurface"));
    }
    let cot = Cotangent::of(v.ambient());
    let g = tautological_poly(&v.poly_components()?, &cot)?;
    HorizontalIdeal::new(&cot, vec![g])
}

/// Tri-state invariance verdict; budget exhaustion is not a "no".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    NotInvariant,
    Indeterminate(String),
}

/// Checks `δ_{v^[1]}(g) ∈ I` for every generator `g`.  With rational
/// components the test runs in the localization at their denominators.
pub fn check_horizontal_invariant(
    pv: &ProlongedField,
    h: &HorizontalIdeal,
    budget: &Budget,
) -> Result<Invariance, Error> {
    if !h.homogeneous {
        return Err(Error::invalid("ideal is not homogeneous in the fiber variables"));
    }
    if h.cotangent.total != pv.cotangent.total {
        return Err(Error::AmbientMismatch(
            pv.cotangent.total.names().to_vec(),
            h.cotangent.total.names().to_vec(),
        ));
    }
    let images: Vec<RatFunc> = h
        .generators()
        .iter()
        .map(|g| pv.full.apply(&RatFunc::from_poly(g.clone())))
        .collect();
    let verdict = ideal_contains_localized(&h.ideal, &images, budget);
    match verdict {
        Ok(true) => Ok(Invariance::Invariant),
        Ok(false) => Ok(Invariance::NotInvariant),
        Err(GroebnerError::BudgetExhausted(n)) => Ok(Invariance::Indeterminate(format!(
            "Gröbner budget of {n} reductions exhausted"
        ))),
        Err(e) => Err(e.into()),
    }
}

/// Whether every `N/D` in `elems` lies in `I` localized at the product of
/// their denominators (Rabinowitsch trick when some `D` is non-constant).
pub(crate) fn ideal_contains_localized(
    ideal: &Ideal,
    elems: &[RatFunc],
    budget: &Budget,
) -> Result<bool, GroebnerError> {
    let amb = ideal.ambient();
    let mut den = Poly::one(amb);
    for e in elems {
        if !e.is_polynomial() {
            den = lcm(&den, e.den());
        }
    }
    if den.is_constant() {
        let gb = buchberger_with_budget(ideal, MonomialOrder::GrevLex, budget)?;
        return Ok(elems.iter().all(|e| gb.contains(e.num())));
    }
    let t = amb.fresh_names(&["t", "s", "u"], 1, false).remove(0);
    let big = amb.extended(&[t]);
    let tv = Poly::var(&big, amb.len());
    let mut gens: Vec<Poly> = ideal
        .generators()
        .iter()
        .map(|g| g.remap(&big).expect("extension"))
        .collect();
    gens.push(&(&tv * &den.remap(&big).expect("extension")) - &Poly::one(&big));
    let ext = Ideal::new(&big, gens).expect("same ambient");
    let gb = buchberger_with_budget(&ext, MonomialOrder::GrevLex, budget)?;
    Ok(elems
        .iter()
        .all(|e| gb.contains(&e.num().remap(&big).expect("extension"))))
}

/// `⟨ξ̄_1, …, ξ̄_r⟩` for spanning fields that are independent at a random
/// rational point (three probes); rational components are cleared of
/// denominators, which leaves the ideal unchanged where they are defined.
pub fn distribution_conormal_ideal<R: Rng>(spanning: &[VectorField], rng: &mut R) -> Result<HorizontalIdeal, Error> {
    let first = spanning
        .first()
        .ok_or_else(|| Error::invalid("empty spanning set"))?;
    let amb = first.ambient().clone();
    for s in spanning {
        if s.ambient() != &amb {
            return Err(Error::AmbientMismatch(amb.names().to_vec(), s.vars().to_vec()));
        }
    }
    let n = amb.len();
    let r = spanning.len();
    let mut last_point = Vec::new();
    let mut independent = false;
    for _ in 0..3 {
        let point: Vec<Rational> = (0..n)
            .map(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into()))
            .collect();
        let rows: Option<Vec<Vec<Rational>>> = spanning
            .iter()
            .map(|s| s.components().iter().map(|c| c.evaluate(&point).ok()).collect())
            .collect();
        last_point = point;
        let Some(rows) = rows else { continue };
        let m = QMatrix::from_rows(rows)?;
        if m.rank() == r {
            independent = true;
            break;
        }
    }
    if !independent {
        let pt: Vec<String> = last_point.iter().map(|q| q.to_string()).collect();
        return Err(Error::invalid(format!(
            "spanning fields are dependent (or undefined) at the probe point ({})",
            pt.join(", ")
        )));
    }
    let cot = Cotangent::of(&amb);
    let mut gens = Vec::new();
    for s in spanning {
        let dens: Vec<Poly> = s.components().iter().map(|c| c.den().clone()).collect();
        let mut l = Poly::one(&amb);
        for d in &dens {
            if !d.is_one() {
                l = lcm(&l, d);
            }
        }
        let comps: Vec<Poly> = s
            .components()
            .iter()
            .map(|c| {
                let q = l.exact_divide(c.den()).expect("nonzero").expect("lcm multiple");
                c.num() * &q
            })
            .collect();
        let g = tautological_poly(&comps, &cot)?;
        // drop a common factor free of y: it is a unit on the open set
        let content = gcd_many(comps.iter().filter(|c| !c.is_zero())).unwrap_or_else(|| Poly::one(&amb));
        let g = if content.is_constant() {
            g
        } else {
            let c = content.remap(&cot.total)?;
            g.exact_divide(&c)?.expect("content divides")
        };
        gens.push(g.primitive_integer());
    }
    HorizontalIdeal::new(&cot, gens)
}

/// Every y-component of `(f v)^[1] − f·v^[1]` is divisible by `v̄`.
pub fn bott_restriction_check(v: &VectorField, f: &Poly) -> Result<bool, Error> {
    let f = f.remap(v.ambient())?;
    let fr = RatFunc::from_poly(f.clone());
    let lifted = first_prolongation(&v.scale_by(&fr))?;
    let plain = first_prolongation(v)?;
    let cot = &plain.cotangent;
    let vbar = tautological_poly(&v.poly_components()?, cot)?;
    if vbar.is_zero() {
        return Err(Error::invalid("zero field"));
    }
    let f_total = RatFunc::from_poly(f.remap(&cot.total)?);
    for (a, b) in lifted.fiber_components().iter().zip(plain.fiber_components()) {
        let diff = a - &(&f_total * b);
        let diff = diff.into_poly().ok_or(Error::NotPolynomial)?;
        if diff.is_zero() {
            continue;
        }
        if diff.exact_divide(&vbar)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether all coefficients of `p` in the y-block have y-degree exactly `d`.
pub fn has_fiber_degree(p: &RatFunc, cot: &Cotangent, d: u32) -> bool {
    p.is_zero()
        || (p.den().terms().all(|(m, _)| cot.fiber_degree(m) == 0)
            && p.num().terms().all(|(m, _)| cot.fiber_degree(m) == d))
}
