//! Vector fields `v = Σ a_i ∂_{x_i}` acting as derivations on polynomials and
//! rational functions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::{eliminate_with_budget, Budget, Ideal};
use crate::polyring::{parse_expression, Ambient, Poly, RatFunc};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    ambient: Ambient,
    components: Vec<RatFunc>,
}

/// On-disk form: `{"vars": ["x","y"], "components": ["y", "x + y"]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub vars: Vec<String>,
    pub components: Vec<String>,
}

impl VectorField {
    pub fn new(ambient: &Ambient, components: Vec<RatFunc>) -> Result<Self, Error> {
        if ambient.is_empty() {
            return Err(Error::invalid("a vector field needs at least one variable"));
        }
        if components.len() != ambient.len() {
            return Err(Error::invalid(format!(
                "{} components for {} variables",
                components.len(),
                ambient.len()
            )));
        }
        let components = components
            .iter()
            .map(|c| c.remap(ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField {
            ambient: ambient.clone(),
            components,
        })
    }

    pub fn from_polys(ambient: &Ambient, components: Vec<Poly>) -> Result<Self, Error> {
        Self::new(ambient, components.into_iter().map(RatFunc::from_poly).collect())
    }

    /// Parses components with the expression grammar.
    pub fn parse<S: AsRef<str>>(vars: &[S], components: &[S]) -> Result<Self, Error> {
        let ambient = Ambient::new(vars);
        let comps = components
            .iter()
            .map(|c| parse_expression(c.as_ref(), &ambient))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&ambient, comps)
    }

    pub fn zero(ambient: &Ambient) -> Self {
        VectorField {
            ambient: ambient.clone(),
            components: vec![RatFunc::zero(ambient); ambient.len()],
        }
    }

    /// The coordinate field `∂_{x_i}`.
    pub fn coordinate(ambient: &Ambient, i: usize) -> Self {
        let mut v = Self::zero(ambient);
        v.components[i] = RatFunc::one(ambient);
        v
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn vars(&self) -> &[String] {
        self.ambient.names()
    }

    pub fn dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RatFunc {
        &self.components[i]
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(RatFunc::is_polynomial)
    }

    pub fn poly_components(&self) -> Result<Vec<Poly>, Error> {
        self.components
            .iter()
            .map(|c| c.as_poly().cloned().ok_or(Error::NotPolynomial))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFunc::is_zero)
    }

    /// `δ_v(f) = Σ a_i ∂f/∂x_i`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let f = f.remap(&self.ambient).expect("ambient mismatch in apply");
        let mut acc = RatFunc::zero(&self.ambient);
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(a * &d);
            }
        }
        acc
    }

    /// `δ_v(f)` for polynomial fields and polynomial `f`.
    pub fn apply_poly(&self, f: &Poly) -> Result<Poly, Error> {
        let comps = self.poly_components()?;
        let f = f.remap(&self.ambient)?;
        Ok(derive_poly(&comps, &f))
    }

    /// `f·v`.
    pub fn scale_by(&self, f: &RatFunc) -> VectorField {
        let f = f.remap(&self.ambient).expect("ambient mismatch in scale_by");
        VectorField {
            ambient: self.ambient.clone(),
            components: self.components.iter().map(|a| a * &f).collect(),
        }
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, Error> {
        self.check_same(other)?;
        Ok(VectorField {
            ambient: self.ambient.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, Error> {
        self.check_same(other)?;
        Ok(VectorField {
            ambient: self.ambient.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> VectorField {
        VectorField {
            ambient: self.ambient.clone(),
            components: self.components.iter().map(|a| -a).collect(),
        }
    }

    fn check_same(&self, other: &VectorField) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.vars().to_vec(), other.vars().to_vec()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> FieldJson {
        FieldJson {
            vars: self.vars().to_vec(),
            components: self.components.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn from_json(j: &FieldJson) -> Result<Self, Error> {
        Self::parse(&j.vars, &j.components)
    }

    pub fn from_json_str(text: &str) -> Result<Self, Error> {
        let j: FieldJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(self.vars())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| format!("({c})*d/d{x}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField[{}]", self)
    }
}

/// `Σ a_i ∂f/∂x_i` on polynomials sharing one ambient.
pub(crate) fn derive_poly(components: &[Poly], f: &Poly) -> Poly {
    let mut acc = Poly::zero(f.ambient());
    for (i, a) in components.iter().enumerate() {
        if a.is_zero() || !f.involves(i) {
            continue;
        }
        acc = &acc + &(a * &f.derivative(i));
    }
    acc
}

pub fn apply_derivation(v: &VectorField, f: &RatFunc) -> RatFunc {
    v.apply(f)
}

/// `[v, w]_i = Σ_j (v_j ∂_j w_i − w_j ∂_j v_i)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, Error> {
    v.check_same(w)?;
    let components = (0..v.dim())
        .map(|i| &v.apply(&w.components[i]) - &w.apply(&v.components[i]))
        .collect();
    Ok(VectorField {
        ambient: v.ambient.clone(),
        components,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AffineDegree {
    pub degree: u32,
    /// Set for the zero field, whose degree is reported as 0.
    pub zero_field: bool,
}

pub fn affine_degree(v: &VectorField) -> Result<AffineDegree, Error> {
    let comps = v.poly_components()?;
    let degree = comps.iter().filter_map(Poly::total_degree).max();
    Ok(AffineDegree {
        degree: degree.unwrap_or(0),
        zero_field: degree.is_none(),
    })
}

/// `(f, δ_v f, …, δ_v^order f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSequence {
    pub observable: RatFunc,
    pub entries: Vec<RatFunc>,
}

pub fn jet_sequence(v: &VectorField, f: &RatFunc, order: usize) -> Result<JetSequence, Error> {
    if order == 0 {
        return Err(Error::invalid("jet order must be at least 1"));
    }
    let f = f.remap(v.ambient())?;
    let mut entries = vec![f.clone()];
    for _ in 0..order {
        let next = v.apply(entries.last().unwrap());
        entries.push(next);
    }
    Ok(JetSequence {
        observable: f,
        entries,
    })
}

/// Scalar differential equation satisfied by an observable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeExtraction {
    /// Jet variable names `Y0 … Y_order` (renamed if they collide).
    pub jet_vars: Vec<String>,
    /// Elimination ideal over the jet variables.
    pub ideal: Ideal,
    /// The ideal is generated by a single equation.
    pub principal: bool,
}

impl OdeExtraction {
    /// The scalar equation `F(Y0, …, Y_order) = 0` when the ideal is principal.
    pub fn equation(&self) -> Option<&Poly> {
        if self.principal {
            self.ideal.generators().first()
        } else {
            None
        }
    }
}

/// Eliminates the base variables from `Y_k·den_k − num_k` (k ≤ order), where
/// `num_k/den_k = δ_v^k(f)`; non-constant denominators are inverted with an
/// auxiliary variable `t` and the generator `t·∏den_k − 1`.
pub fn extract_ode(v: &VectorField, f: &RatFunc, order: usize, budget: &Budget) -> Result<OdeExtraction, Error> {
    let jets = jet_sequence(v, f, order)?;
    let jet_vars = v.ambient().fresh_names(&["Y", "Z", "W"], order + 1, false);
    let needs_saturation = jets.entries.iter().any(|e| !e.is_polynomial());
    let mut names: Vec<String> = v.vars().to_vec();
    names.extend(jet_vars.iter().cloned());
    let sat_name = if needs_saturation {
        let probe = Ambient::new(&names);
        let s = probe.fresh_names(&["t", "s", "u"], 1, false).remove(0);
        names.push(s.clone());
        Some(s)
    } else {
        None
    };
    let big = Ambient::new(&names);
    let mut gens = Vec::new();
    let mut den_product = Poly::one(&big);
    for (k, e) in jets.entries.iter().enumerate() {
        let num = e.num().remap(&big)?;
        let den = e.den().remap(&big)?;
        let y = Poly::var_named(&big, &jet_vars[k])?;
        gens.push(&(&y * &den) - &num);
        if !den.is_one() {
            den_product = &den_product * &den;
        }
    }
    if let Some(s) = &sat_name {
        let t = Poly::var_named(&big, s)?;
        gens.push(&(&t * &den_product) - &Poly::one(&big));
    }
    let ideal = Ideal::new(&big, gens)?;
    let keep: Vec<&str> = jet_vars.iter().map(String::as_str).collect();
    let elim = eliminate_with_budget(&ideal, &keep, budget)?;
    let elim = Ideal::new(elim.ambient(), elim.generators().iter().map(Poly::primitive_integer).collect())?;
    let principal = elim.generators().len() == 1;
    Ok(OdeExtraction {
        jet_vars,
        ideal: elim,
        principal,
    })
}

/// `A[i][j] = ∂_{x_i}(a_j)`, the coefficient matrix of the linearized system.
pub fn variational_matrix(v: &VectorField) -> Vec<Vec<RatFunc>> {
    (0..v.dim())
        .map(|i| v.components.iter().map(|a| a.derivative(i)).collect())
        .collect()
}
