//! Loading of field, ideal and one-form files.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use vfcert::darboux::OneForm;
use vfcert::groebner::Ideal;
use vfcert::polyring::rational::parse_rational;
use vfcert::polyring::{parse_poly, Ambient, Rational};
use vfcert::projective::{homogenize_affine, HomogeneousField, HomogeneousFieldJson};
use vfcert::prolongation::HorizontalIdealJson;
use vfcert::vectorfield::{affine_degree, FieldJson, VectorField};

use crate::commands::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn json_value(path: &Path) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn decode<T: for<'de> Deserialize<'de>>(path: &Path, value: serde_json::Value) -> Result<T, Failure> {
    serde_json::from_value(value).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

pub fn field(path: &Path) -> Result<VectorField, Failure> {
    let j: FieldJson = decode(path, json_value(path)?)?;
    Ok(VectorField::from_json(&j)?)
}

/// A homogeneous field file, or an affine field file homogenized at its own degree.
pub fn homogeneous(path: &Path) -> Result<HomogeneousField, Failure> {
    let value = json_value(path)?;
    if value.get("twist_degree").is_some() {
        let j: HomogeneousFieldJson = decode(path, value)?;
        return Ok(HomogeneousField::from_json(&j)?);
    }
    let j: FieldJson = decode(path, value)?;
    let v = VectorField::from_json(&j)?;
    let d = affine_degree(&v)?.degree;
    Ok(homogenize_affine(&v, d)?)
}

/// Contents of an `--ideal` file.
pub enum IdealInput {
    /// `{"vars", "generators"}` on the base.
    Affine(Ideal),
    /// `{"vars", "fiber_vars", "generators"}` on the cotangent coordinates.
    Horizontal(HorizontalIdealJson),
    /// `{"vars", "fields": [[components], …]}`: spanning fields of a distribution.
    Distribution(Vec<VectorField>),
}

#[derive(Deserialize)]
struct AffineIdealJson {
    vars: Vec<String>,
    generators: Vec<String>,
}

#[derive(Deserialize)]
struct DistributionJson {
    vars: Vec<String>,
    fields: Vec<Vec<String>>,
}

pub fn ideal(path: &Path) -> Result<IdealInput, Failure> {
    let value = json_value(path)?;
    if value.get("fiber_vars").is_some() {
        return Ok(IdealInput::Horizontal(decode(path, value)?));
    }
    if value.get("fields").is_some() {
        let j: DistributionJson = decode(path, value)?;
        let fields = j
            .fields
            .iter()
            .map(|comps| VectorField::parse(&j.vars, comps))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(IdealInput::Distribution(fields));
    }
    let j: AffineIdealJson = decode(path, value)?;
    let amb = Ambient::new(&j.vars);
    let gens = j
        .generators
        .iter()
        .map(|g| parse_poly(g, &amb))
        .collect::<Result<Vec<_>, _>>()
        .map_err(vfcert::Error::from)?;
    Ok(IdealInput::Affine(Ideal::new(&amb, gens).map_err(vfcert::Error::from)?))
}

#[derive(Deserialize)]
struct OneFormJson {
    vars: Vec<String>,
    components: Vec<String>,
}

pub fn oneform(path: &Path) -> Result<OneForm, Failure> {
    let j: OneFormJson = decode(path, json_value(path)?)?;
    Ok(OneForm::parse(&Ambient::new(&j.vars), &j.components)?)
}

pub fn point(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|s| {
            parse_rational(s.trim()).ok_or_else(|| Failure::Parse(format!("not a rational coordinate: '{}'", s.trim())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use vfcert::polyring::rational::rat;

    #[test]
    fn point_parsing() {
        assert_eq!(point("0, -1/2,3").unwrap(), vec![rat(0, 1), rat(-1, 2), rat(3, 1)]);
        assert!(matches!(point("1,x"), Err(Failure::Parse(_))));
    }
}
