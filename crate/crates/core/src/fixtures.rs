//! Named example fields used by the tests and the command-line tool.

use crate::polyring::rational::format_rational;
use crate::polyring::Rational;
use crate::vectorfield::VectorField;

/// Halphen system `H(α1, α2, α3)` on `(x1, x2, x3)`:
/// `x1' = α1 x1² + (1 − α1)(x1x2 + x1x3 − x2x3)` and cyclically with the
/// sign pattern moved to the other two products.
pub fn halphen(alpha: [Rational; 3]) -> VectorField {
    let mixed = ["x1*x2 + x1*x3 - x2*x3", "x1*x2 - x1*x3 + x2*x3", "-x1*x2 + x1*x3 + x2*x3"];
    let comps: Vec<String> = (0..3)
        .map(|i| {
            let a = format_rational(&alpha[i]);
            format!("({a})*x{}^2 + (1 - ({a}))*({})", i + 1, mixed[i])
        })
        .collect();
    let vars: Vec<String> = ["x1", "x2", "x3"].map(String::from).to_vec();
    VectorField::parse(&vars, &comps).expect("halphen components parse")
}

/// The vector fields `v1, v2, v3` on `(y, y', y'')` attached to the
/// Schwarzian equation `S(y) + R(y) (y')² = 0` with `R(y) = 1/y`.
pub fn schwarzian_triple() -> [VectorField; 3] {
    let vars = ["y", "y'", "y''"];
    let v1 = VectorField::parse(&vars, &["y'", "y''", "3/2*(y'')^2/y' - (y')^3/y"]).expect("v1 parses");
    let v2 = VectorField::parse(&vars, &["0", "y'", "2*y''"]).expect("v2 parses");
    let v3 = VectorField::parse(&vars, &["0", "0", "2*y'"]).expect("v3 parses");
    [v1, v2, v3]
}

/// `v1` for an arbitrary `R` given as text in `y`.
pub fn schwarzian_v1(r: &str) -> Result<VectorField, crate::Error> {
    let vars: Vec<String> = ["y", "y'", "y''"].map(String::from).to_vec();
    let third = format!("3/2*(y'')^2/y' - ({r})*(y')^3");
    VectorField::parse(&vars, &["y'".to_string(), "y''".to_string(), third])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::rat;
    use crate::vectorfield::affine_degree;

    #[test]
    fn halphen_shape() {
        let h = halphen([rat(1, 2), rat(1, 3), rat(1, 4)]);
        assert_eq!(affine_degree(&h).unwrap().degree, 2);
        assert_eq!(h.component(0).to_string(), "1/2*x1^2 + 1/2*x1*x2 + 1/2*x1*x3 - 1/2*x2*x3");
    }

    #[test]
    fn schwarzian_matches_general_form() {
        let [v1, _, _] = schwarzian_triple();
        assert_eq!(schwarzian_v1("1/y").unwrap(), v1);
    }
}
