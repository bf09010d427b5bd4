//! Homogeneous fields on the cone over projective space, their affine
//! charts, and pole orders of rational fields along coordinate hyperplanes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::polyring::{parse_poly, Ambient, Monomial, Poly, RatFunc};
use crate::vectorfield::{affine_degree, VectorField};

/// `Σ F_i ∂_{X_i}` on `(X0, …, Xn)` with all nonzero `F_i` homogeneous of
/// degree `twist_degree + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousField {
    ambient: Ambient,
    components: Vec<Poly>,
    twist_degree: i64,
    affine_vars: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousFieldJson {
    pub vars: Vec<String>,
    pub components: Vec<String>,
    pub twist_degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_vars: Option<Vec<String>>,
}

/// `X0, …, Xn`.
pub fn projective_ambient(n: usize) -> Ambient {
    let names: Vec<String> = (0..=n).map(|i| format!("X{i}")).collect();
    Ambient::new(&names)
}

impl HomogeneousField {
    pub fn new(ambient: &Ambient, components: Vec<Poly>, twist_degree: i64) -> Result<Self, Error> {
        if ambient.len() < 2 {
            return Err(Error::invalid("projective space needs at least X0, X1"));
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
        let want = twist_degree + 1;
        for c in components.iter().filter(|c| !c.is_zero()) {
            if !c.is_homogeneous() || c.total_degree().map(i64::from) != Some(want) {
                return Err(Error::invalid(format!(
                    "component {c} is not homogeneous of degree {want}"
                )));
            }
        }
        Ok(HomogeneousField {
            ambient: ambient.clone(),
            components,
            twist_degree,
            affine_vars: None,
        })
    }

    pub fn with_affine_vars(mut self, names: Vec<String>) -> Result<Self, Error> {
        if names.len() + 1 != self.ambient.len() {
            return Err(Error::invalid("affine variable count must be n"));
        }
        self.affine_vars = Some(names);
        Ok(self)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn twist_degree(&self) -> i64 {
        self.twist_degree
    }

    pub fn affine_vars(&self) -> Option<&[String]> {
        self.affine_vars.as_deref()
    }

    /// `n`, the dimension of projective space.
    pub fn n(&self) -> usize {
        self.ambient.len() - 1
    }

    pub fn to_json(&self) -> HomogeneousFieldJson {
        HomogeneousFieldJson {
            vars: self.ambient.names().to_vec(),
            components: self.components.iter().map(|c| c.to_string()).collect(),
            twist_degree: self.twist_degree,
            affine_vars: self.affine_vars.clone(),
        }
    }

    pub fn from_json(j: &HomogeneousFieldJson) -> Result<Self, Error> {
        let amb = Ambient::new(&j.vars);
        let comps = j
            .components
            .iter()
            .map(|c| parse_poly(c, &amb))
            .collect::<Result<Vec<_>, _>>()?;
        let h = Self::new(&amb, comps, j.twist_degree)?;
        match &j.affine_vars {
            Some(names) => h.with_affine_vars(names.clone()),
            None => Ok(h),
        }
    }

    fn sub(&self, other: &HomogeneousField) -> Vec<Poly> {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a - b)
            .collect()
    }
}

impl fmt::Display for HomogeneousField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(self.ambient.names())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| format!("({c})*d/d{x}"))
            .collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        write!(f, "{body} [twist {}]", self.twist_degree)
    }
}

impl fmt::Debug for HomogeneousField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomogeneousField[{self}]")
    }
}

/// A twisted field up to multiples of the Euler field.
#[derive(Clone, Debug)]
pub struct TwistedFieldClass(pub HomogeneousField);

impl PartialEq for TwistedFieldClass {
    fn eq(&self, other: &Self) -> bool {
        modulo_euler_equal(&self.0, &other.0)
    }
}

impl Eq for TwistedFieldClass {}

/// `E = Σ X_i ∂_{X_i}` on `X0..Xn`.
pub fn euler_field(n: usize) -> Result<HomogeneousField, Error> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let amb = projective_ambient(n);
    let comps = (0..=n).map(|i| Poly::var(&amb, i)).collect();
    HomogeneousField::new(&amb, comps, 0)
}

/// `F_0 = 0`, `F_i = X0^d f_i(X1/X0, …, Xn/X0)`; twist degree `d − 1`.
pub fn homogenize_affine(v: &VectorField, d: u32) -> Result<HomogeneousField, Error> {
    let deg = affine_degree(v)?;
    if deg.degree > d {
        return Err(Error::invalid(format!(
            "field of affine degree {} cannot be homogenized to degree {d}",
            deg.degree
        )));
    }
    let n = v.dim();
    let amb = projective_ambient(n);
    let mut comps = vec![Poly::zero(&amb)];
    for c in v.poly_components()? {
        let terms = c.terms().map(|(m, coef)| {
            let mut e = vec![d - m.degree()];
            e.extend_from_slice(m.exponents());
            (Monomial::from_exponents(e), coef.clone())
        });
        comps.push(Poly::from_terms(&amb, terms));
    }
    HomogeneousField::new(&amb, comps, i64::from(d) - 1)?.with_affine_vars(v.vars().to_vec())
}

/// Inverse of [`homogenize_affine`] on representatives with `F_0 = 0`.
pub fn dehomogenize(h: &HomogeneousField) -> Result<VectorField, Error> {
    if !h.components[0].is_zero() {
        return Err(Error::invalid(
            "F0 must vanish; subtract (F0/X0)·E first when X0 divides F0",
        ));
    }
    chart_derivation(h, 0)
}

/// Names of the chart coordinates `u_j = X_j / X_i`, `j != i`.
pub fn chart_names(h: &HomogeneousField, chart: usize) -> Vec<String> {
    if chart == 0 {
        if let Some(names) = &h.affine_vars {
            return names.clone();
        }
    }
    (0..=h.n()).filter(|&j| j != chart).map(|j| format!("u{j}")).collect()
}

/// The derivation induced on `u_j = X_j/X_i`: component `F_j − u_j F_i`
/// evaluated at `X_i = 1`.
pub fn chart_derivation(h: &HomogeneousField, chart: usize) -> Result<VectorField, Error> {
    let n = h.n();
    if chart > n {
        return Err(Error::invalid(format!("chart index {chart} out of range 0..={n}")));
    }
    let names = chart_names(h, chart);
    let amb = Ambient::new(&names);
    // X_k ↦ u_k, X_chart ↦ 1
    let mut images = Vec::with_capacity(n + 1);
    let mut k = 0;
    for j in 0..=n {
        if j == chart {
            images.push(Poly::one(&amb));
        } else {
            images.push(Poly::var(&amb, k));
            k += 1;
        }
    }
    let fi = h.components[chart].compose(&images);
    let mut comps = Vec::with_capacity(n);
    for j in (0..=n).filter(|&j| j != chart) {
        let fj = h.components[j].compose(&images);
        comps.push(&fj - &(&images[j] * &fi));
    }
    VectorField::from_polys(&amb, comps)
}

/// `X0 | F0`.
pub fn hyperplane_invariant(h: &HomogeneousField) -> bool {
    let x0 = Poly::var(&h.ambient, 0);
    x0.divides(&h.components[0])
}

/// `h1 − h2 = f·E` for some homogeneous `f`.
pub fn modulo_euler_equal(h1: &HomogeneousField, h2: &HomogeneousField) -> bool {
    if h1.ambient != h2.ambient || h1.twist_degree != h2.twist_degree {
        return false;
    }
    let d = h1.sub(h2);
    let x0 = Poly::var(&h1.ambient, 0);
    let f = match d[0].exact_divide(&x0) {
        Ok(Some(f)) => f,
        _ => return false,
    };
    d.iter()
        .enumerate()
        .all(|(j, dj)| dj == &(&f * &Poly::var(&h1.ambient, j)))
}

/// `max(0, −min_i val_{x_var}(a_i))`.
pub fn pole_order(v: &VectorField, var: &str) -> Result<u32, Error> {
    let j = v
        .ambient()
        .index_of(var)
        .ok_or_else(|| crate::polyring::PolyError::UnknownVariable(var.to_string()))?;
    let min = v
        .components()
        .iter()
        .filter_map(|c: &RatFunc| c.valuation_in(j))
        .min()
        .unwrap_or(0);
    Ok(u32::try_from(-min).unwrap_or(0))
}
