//! Rational points of zero-dimensional ideals by lex-basis back substitution.

use num_traits::Zero;

use super::{buchberger_with_budget, Budget, GroebnerError, Ideal, MonomialOrder};
use crate::linalg::{rational_roots, UniPoly};
use crate::polyring::{Ambient, Poly, Rational};

/// Outcome of a rational point search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    /// Rational points in ambient order, lexicographically sorted.
    pub points: Vec<Vec<Rational>>,
    /// Number of non-rational roots met while back substituting; each one
    /// stands for at least one point with irrational coordinates.
    pub irrational_branches: usize,
    /// The variety is positive-dimensional; `points` is then empty.
    pub positive_dimensional: bool,
}

/// All rational points of `ideal` when it is zero-dimensional.
pub fn rational_points(ideal: &Ideal, budget: &Budget) -> Result<PointSet, GroebnerError> {
    let mut out = PointSet {
        points: Vec::new(),
        irrational_branches: 0,
        positive_dimensional: false,
    };
    let gb = buchberger_with_budget(ideal, MonomialOrder::GrevLex, budget)?;
    if gb.is_unit() {
        return Ok(out);
    }
    if !gb.is_zero_dimensional() {
        out.positive_dimensional = true;
        return Ok(out);
    }
    let mut points = Vec::new();
    solve_rec(ideal, budget, &mut points, &mut out.irrational_branches)?;
    for p in &mut points {
        p.reverse();
    }
    points.sort();
    out.points = points;
    Ok(out)
}

/// Points are built back to front: the last ambient variable is solved first.
fn solve_rec(
    ideal: &Ideal,
    budget: &Budget,
    out: &mut Vec<Vec<Rational>>,
    irrational: &mut usize,
) -> Result<(), GroebnerError> {
    let amb = ideal.ambient();
    let n = amb.len();
    if n == 0 {
        if ideal.generators().iter().all(Poly::is_zero) {
            out.push(Vec::new());
        }
        return Ok(());
    }
    let gb = buchberger_with_budget(ideal, MonomialOrder::Lex, budget)?;
    if gb.is_unit() {
        return Ok(());
    }
    let last = n - 1;
    let uni = gb
        .basis()
        .iter()
        .filter_map(|g| UniPoly::from_poly(g, last))
        .find(|u| !u.is_zero())
        .expect("zero-dimensional lex basis has a univariate element");
    let sq = uni.squarefree_part();
    let roots = rational_roots(&sq);
    *irrational += sq.degree().unwrap_or(0) - roots.len();
    let rest = Ambient::new(&amb.names()[..last]);
    for r in roots {
        let gens = gb
            .basis()
            .iter()
            .map(|g| g.substitute_value(last, &r))
            .filter(|g| !g.is_zero())
            .map(|g| g.remap(&rest))
            .collect::<Result<Vec<_>, _>>()?;
        if gens.iter().any(|g| g.constant_value().is_some_and(|c| !c.is_zero())) {
            continue;
        }
        let sub = Ideal::new(&rest, gens)?;
        let mut tails = Vec::new();
        solve_rec(&sub, budget, &mut tails, irrational)?;
        for mut t in tails {
            t.insert(0, r.clone());
            out.push(t);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::polyring::rational::{int, rat};

    fn ideal(vars: &[&str], gens: &[&str]) -> Ideal {
        let a = Ambient::new(vars);
        Ideal::new(&a, gens.iter().map(|g| parse_poly(g, &a).unwrap()).collect()).unwrap()
    }

    #[test]
    fn finite_rational_points() {
        let s = rational_points(&ideal(&["x", "y"], &["x^2 - 1", "y - 2*x"]), &Budget::default()).unwrap();
        assert_eq!(s.points, vec![vec![int(-1), int(-2)], vec![int(1), int(2)]]);
        assert_eq!(s.irrational_branches, 0);
    }

    #[test]
    fn irrational_branches_counted() {
        let s = rational_points(&ideal(&["x", "y"], &["x^2 - 2", "y - 1/2"]), &Budget::default()).unwrap();
        assert!(s.points.is_empty());
        assert_eq!(s.irrational_branches, 2);
        let s = rational_points(&ideal(&["x", "y"], &["x*y - 1", "y^2 - 4"]), &Budget::default()).unwrap();
        assert_eq!(s.points, vec![vec![rat(-1, 2), int(-2)], vec![rat(1, 2), int(2)]]);
    }

    #[test]
    fn empty_and_positive_dimensional() {
        let s = rational_points(&ideal(&["x"], &["x", "x - 1"]), &Budget::default()).unwrap();
        assert!(s.points.is_empty() && !s.positive_dimensional);
        let s = rational_points(&ideal(&["x", "y"], &["x*y"]), &Budget::default()).unwrap();
        assert!(s.positive_dimensional);
    }
}
