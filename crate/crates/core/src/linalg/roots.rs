//! Certified enclosures of all complex roots of a squarefree polynomial.
//!
//! Real roots come from Sturm isolation.  Non-real roots start from
//! floating-point Aberth approximations and are certified exactly with the
//! Weierstrass corrections `w_i = p(z_i) / (a_n prod_{j != i} (z_i - z_j))`:
//! the disks `D(z_i, n |w_i|)` cover every root, and a disk disjoint from all
//! others contains exactly one.  All disk tests run in rational arithmetic.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::univariate::{RealRoot, SturmIsolator, UniPoly};
use super::LinalgError;
use crate::polyring::rational::{from_f64, round_dyadic, sqrt_upper, to_f64};
use crate::polyring::{Ambient, Poly, Rational};

pub type QComplex = Complex<Rational>;

const MAX_CERT_ROUNDS: usize = 80;

/// Closed disk containing exactly one (simple) root of `poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub poly: Poly,
    pub center: QComplex,
    pub radius: Rational,
}

impl RootEnclosure {
    pub fn is_real(&self) -> bool {
        self.center.im.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// The exact rational root, if the enclosure is a point on the real line.
    pub fn rational_value(&self) -> Option<&Rational> {
        (self.is_real() && self.is_exact()).then_some(&self.center.re)
    }

    /// Closed disks intersect.
    pub fn intersects(&self, other: &RootEnclosure) -> bool {
        let d = &self.center - &other.center;
        let r = &self.radius + &other.radius;
        d.norm_sqr() <= &r * &r
    }

    pub fn contains_disk(&self, other: &RootEnclosure) -> bool {
        // |c1 - c2| + r2 <= r1
        if other.radius > self.radius {
            return false;
        }
        let d = &self.center - &other.center;
        let slack = &self.radius - &other.radius;
        d.norm_sqr() <= &slack * &slack
    }
}

fn uni_of(p: &Poly) -> Result<UniPoly, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    let var = (0..p.nvars()).find(|&v| p.involves(v)).unwrap_or(0);
    UniPoly::from_poly(p, var).ok_or(LinalgError::NotUnivariate)
}

/// Enclosures of all complex roots of `p`, each of radius `<= precision`.
///
/// Ordering: real roots ascending, then conjugate pairs sorted by real part
/// and then by `|im|`, the root with positive imaginary part first.  The
/// polynomial is reduced to its squarefree part first.
pub fn isolate_roots(p: &Poly, precision: &Rational) -> Result<Vec<RootEnclosure>, LinalgError> {
    let u = uni_of(p)?.squarefree_part();
    let amb = if p.nvars() == 1 { p.ambient().clone() } else { Ambient::new(&["t"]) };
    let out = isolate_uni(&u, precision)?;
    let poly = u.to_poly(&amb, 0);
    Ok(out
        .into_iter()
        .map(|(center, radius)| RootEnclosure {
            poly: poly.clone(),
            center,
            radius,
        })
        .collect())
}

/// Enclosures for each distinct root with its multiplicity in `p`, in the
/// same ordering as [`isolate_roots`] within each multiplicity class.
pub fn isolate_roots_with_multiplicity(
    p: &Poly,
    precision: &Rational,
) -> Result<Vec<(RootEnclosure, u32)>, LinalgError> {
    let u = uni_of(p)?;
    let amb = if p.nvars() == 1 { p.ambient().clone() } else { Ambient::new(&["t"]) };
    let mut out = Vec::new();
    for (factor, mult) in u.squarefree_factorization() {
        let poly = factor.to_poly(&amb, 0);
        for (center, radius) in isolate_uni(&factor, precision)? {
            out.push((
                RootEnclosure {
                    poly: poly.clone(),
                    center,
                    radius,
                },
                mult,
            ));
        }
    }
    Ok(out)
}

/// Refinement of one enclosure: the returned disk meets `e`, encloses the
/// same root and has at most half the radius.
pub fn refine_enclosure(e: &RootEnclosure) -> Result<RootEnclosure, LinalgError> {
    if e.is_exact() {
        return Ok(e.clone());
    }
    let half = &e.radius / Rational::from_integer(2.into());
    let u = uni_of(&e.poly)?;
    if e.is_real() {
        let iso = SturmIsolator::new(&u);
        let r = iso.bisect(&RealRoot::Interval(&e.center.re - &e.radius, &e.center.re + &e.radius));
        return Ok(real_enclosure(&e.poly, &r));
    }
    let candidates = isolate_uni(&u, &half)?;
    candidates
        .into_iter()
        .map(|(center, radius)| RootEnclosure {
            poly: e.poly.clone(),
            center,
            radius,
        })
        .find(|c| c.intersects(e))
        .ok_or(LinalgError::CertificationFailed)
}

fn real_enclosure(poly: &Poly, r: &RealRoot) -> RootEnclosure {
    let (center, radius) = real_disk(r);
    RootEnclosure {
        poly: poly.clone(),
        center,
        radius,
    }
}

fn real_disk(r: &RealRoot) -> (QComplex, Rational) {
    let two = Rational::from_integer(2.into());
    (
        Complex::new(r.midpoint(), Rational::zero()),
        r.width() / two,
    )
}

fn isolate_uni(u: &UniPoly, precision: &Rational) -> Result<Vec<(QComplex, Rational)>, LinalgError> {
    let n = u.degree().ok_or(LinalgError::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let iso = SturmIsolator::new(u);
    let two = Rational::from_integer(2.into());
    let width = precision * &two;
    let reals: Vec<RealRoot> = iso.isolate().iter().map(|r| iso.refine_to(r, &width)).collect();
    let mut out: Vec<(QComplex, Rational)> = reals.iter().map(real_disk).collect();
    let nonreal = n - reals.len();
    if nonreal > 0 {
        let upper = certify_nonreal(iso.poly(), &reals, nonreal / 2, precision)?;
        for (c, r) in upper {
            let conj = c.conj();
            out.push((c, r.clone()));
            out.push((conj, r));
        }
    }
    Ok(out)
}

fn cmp_pairs(a: &(QComplex, Rational), b: &(QComplex, Rational)) -> Ordering {
    a.0.re.cmp(&b.0.re).then(a.0.im.abs().cmp(&b.0.im.abs()))
}

/// Certified disks around the non-real roots in the upper half plane.
///
/// The approximation vector is kept conjugation-symmetric (reals, upper
/// points, their conjugates) so the corrections of real points stay real.
fn certify_nonreal(
    p: &UniPoly,
    reals: &[RealRoot],
    upper_count: usize,
    precision: &Rational,
) -> Result<Vec<(QComplex, Rational)>, LinalgError> {
    let n = p.degree().unwrap();
    let nreal = reals.len();
    let mut re: Vec<Rational> = reals.iter().map(RealRoot::midpoint).collect();
    let mut cplx: Vec<Complex<f64>> = aberth_f64(p).into_iter().filter(|c| c.im > 0.0).collect();
    cplx.sort_by(|a, b| b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal));
    let mut up: Vec<QComplex> = cplx
        .into_iter()
        .take(upper_count)
        .map(|c| Complex::new(from_f64(c.re), from_f64(c.im)))
        .collect();
    while up.len() < upper_count {
        // floating point lost some roots; seed off the real axis
        let k = up.len() as i64;
        up.push(Complex::new(Rational::from_integer(k.into()), Rational::one()));
    }
    let nr = Rational::from_integer((n as i64).into());
    let mut bits: u32 = 64;
    for _ in 0..MAX_CERT_ROUNDS {
        let mut z: Vec<QComplex> = re.iter().map(|x| Complex::new(x.clone(), Rational::zero())).collect();
        z.extend(up.iter().cloned());
        z.extend(up.iter().map(Complex::conj));
        let w = weierstrass(p, &z);
        let radii: Vec<Rational> = w.iter().map(|wi| &nr * sqrt_upper(&wi.norm_sqr(), bits + 8)).collect();
        if certified(&z, &radii, nreal, upper_count, precision) {
            let mut disks: Vec<(QComplex, Rational)> = (0..upper_count)
                .map(|k| (z[nreal + k].clone(), radii[nreal + k].clone()))
                .collect();
            disks.sort_by(cmp_pairs);
            return Ok(disks);
        }
        for (i, x) in re.iter_mut().enumerate() {
            *x = round_dyadic(&(&*x - &w[i].re), bits);
        }
        for (k, u) in up.iter_mut().enumerate() {
            let next = &*u - &w[nreal + k];
            *u = Complex::new(round_dyadic(&next.re, bits), round_dyadic(&next.im, bits));
        }
        bits = (bits * 2).min(1 << 14);
    }
    Err(LinalgError::CertificationFailed)
}

/// All disks pairwise disjoint, upper disks above the real axis and small enough.
fn certified(z: &[QComplex], radii: &[Rational], nreal: usize, upper_count: usize, precision: &Rational) -> bool {
    for k in nreal..nreal + upper_count {
        if radii[k] > *precision || z[k].im <= radii[k] {
            return false;
        }
    }
    let n = z.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let d = (&z[i] - &z[j]).norm_sqr();
            let r = &radii[i] + &radii[j];
            if d <= &r * &r {
                return false;
            }
        }
    }
    true
}

fn weierstrass(p: &UniPoly, z: &[QComplex]) -> Vec<QComplex> {
    let lead = p.leading().unwrap();
    (0..z.len())
        .map(|i| {
            let mut val = Complex::new(Rational::zero(), Rational::zero());
            for c in p.coeffs().iter().rev() {
                val = val * &z[i] + Complex::new(c.clone(), Rational::zero());
            }
            let mut den = Complex::new(lead.clone(), Rational::zero());
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    den *= &z[i] - zj;
                }
            }
            if den.is_zero() {
                // coincident approximations: make the disk test fail
                return Complex::new(Rational::one(), Rational::zero());
            }
            val / den
        })
        .collect()
}

/// Floating-point Aberth–Ehrlich iteration for starting values.
fn aberth_f64(p: &UniPoly) -> Vec<Complex<f64>> {
    let n = p.degree().unwrap();
    let lead = to_f64(p.leading().unwrap());
    let c: Vec<f64> = p.coeffs().iter().map(|x| to_f64(x) / lead).collect();
    let dc: Vec<f64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let horner = |coef: &[f64], x: Complex<f64>| {
        coef.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &a| acc * x + a)
    };
    let bound = 1.0 + c[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let radius = bound.min(1e150);
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex::from_polar(radius * 0.5, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let pv = horner(&c, z[i]);
            let dv = horner(&dc, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let sum: Complex<f64> = (0..n).filter(|&j| j != i).map(|j| Complex::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}
