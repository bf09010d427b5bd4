use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names a polynomial lives over.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ambient(Arc<[String]>);

impl Ambient {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Ambient(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// Ambient obtained by appending `extra` names.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Ambient {
        let mut names: Vec<String> = self.0.to_vec();
        names.extend(extra.iter().map(|s| s.as_ref().to_string()));
        Ambient(names.into())
    }

    pub fn ptr_eq(&self, other: &Ambient) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Picks `count` fresh names `prefix1..prefixN`, trying the given prefixes
    /// in turn until none of the generated names collides with this ambient.
    pub fn fresh_names(&self, prefixes: &[&str], count: usize, one_based: bool) -> Vec<String> {
        let offset = usize::from(one_based);
        for p in prefixes {
            let names: Vec<String> = (0..count).map(|i| format!("{p}{}", i + offset)).collect();
            if names.iter().all(|n| self.index_of(n).is_none()) {
                return names;
            }
        }
        let mut underscore = String::from("_");
        loop {
            let names: Vec<String> = (0..count)
                .map(|i| format!("{underscore}{}{}", prefixes[0], i + offset))
                .collect();
            if names.iter().all(|n| self.index_of(n).is_none()) {
                return names;
            }
            underscore.push('_');
        }
    }
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable this monomial is a pure power of.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        v[i] = e;
        Monomial(v)
    }

    /// Graded reverse lexicographic comparison (first variable largest).
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    /// Graded lexicographic comparison (first variable largest).
    pub fn cmp_deglex(&self, other: &Monomial) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        self.0.cmp(&other.0)
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// Renders as `x^2*y` over the given ambient; `"1"` for the unit monomial.
    pub fn render(&self, ambient: &Ambient) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    ambient.name(i).to_string()
                } else {
                    format!("{}^{}", ambient.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_examples() {
        // x^2 > xy > y^2 > x > y > 1 in (x, y)
        let seq = [m(&[2, 0]), m(&[1, 1]), m(&[0, 2]), m(&[1, 0]), m(&[0, 1]), m(&[0, 0])];
        for w in seq.windows(2) {
            assert_eq!(w[0].cmp_grevlex(&w[1]), Ordering::Greater);
        }
        // grevlex vs deglex differ in three variables: x*z^... classic example
        assert_eq!(m(&[1, 0, 2]).cmp_grevlex(&m(&[0, 2, 1])), Ordering::Less);
        assert_eq!(m(&[1, 0, 2]).cmp_deglex(&m(&[0, 2, 1])), Ordering::Greater);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let a = Ambient::new(&["x", "y1"]);
        assert_eq!(a.fresh_names(&["y", "p"], 2, true), vec!["p1", "p2"]);
        let b = Ambient::new(&["x", "y"]);
        assert_eq!(b.fresh_names(&["y", "p"], 2, true), vec!["y1", "y2"]);
    }
}
