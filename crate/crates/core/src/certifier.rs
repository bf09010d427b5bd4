//! Bounded-evidence certificates for a singular point of a polynomial field.
//!
//! A certificate checks, in order: (a) non-resonance of the linear part up
//! to height `K`; (b) that no rational Darboux polynomial of degree at most
//! `D` vanishes at the point; and finiteness of the singular locus.  Every
//! positive statement is bounded by `(D, K)` and says so.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::darboux::{cofactor_of, darboux_search_with_budget, DarbouxPair, SearchReport, SearchReportJson};
use crate::error::Error;
use crate::groebner::{rational_points, Budget};
use crate::linalg::QMatrix;
use crate::polyring::rational::format_rational;
use crate::polyring::Rational;
use crate::singularity::{
    linear_part, resonance_check_with_budget, sing_locus_finite_with_budget, singular_ideal, verify_singular,
    ResonanceStatus, ResonanceVerdict, SingularPoint, VerdictJson, DEFAULT_PRECISION_BUDGET,
};
use crate::vectorfield::{affine_degree, VectorField};

pub const DEFAULT_D: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub degree_bound: u32,
    pub k_bound: u32,
    pub precision_budget: u32,
    pub budget: Budget,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            degree_bound: DEFAULT_D,
            k_bound: crate::singularity::DEFAULT_K,
            precision_budget: DEFAULT_PRECISION_BUDGET,
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    EvidenceForMinimality { d: u32, k: u32 },
    HypothesisAFails { witness: Vec<i64> },
    HypothesisBFails { witness: DarbouxPair },
    Inconclusive { reasons: Vec<String> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::EvidenceForMinimality { .. } => "EVIDENCE_FOR_MINIMALITY",
            Verdict::HypothesisAFails { .. } => "HYPOTHESIS_A_FAILS",
            Verdict::HypothesisBFails { .. } => "HYPOTHESIS_B_FAILS",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub field: VectorField,
    pub field_fingerprint: String,
    pub point: SingularPoint,
    pub degree_bound: u32,
    pub k_bound: u32,
    pub linear_part: QMatrix,
    /// `None` when the stage did not run.
    pub resonance: Option<ResonanceVerdict>,
    pub darboux: Option<SearchReport>,
    /// Each found `g` with whether it vanishes at the point.
    pub point_membership: Vec<(DarbouxPair, bool)>,
    pub sing_finite: Option<bool>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembershipJson {
    pub g: String,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictBodyJson {
    pub kind: String,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub field_fingerprint: String,
    pub field: crate::vectorfield::FieldJson,
    pub point: Vec<String>,
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub linear_part: Vec<Vec<String>>,
    pub resonance: Option<VerdictJson>,
    pub darboux: Option<SearchReportJson>,
    pub point_membership: Vec<MembershipJson>,
    pub sing_finite: Option<bool>,
    pub verdict: VerdictBodyJson,
}

/// SHA-256 of the canonical JSON of the field, hex encoded.
pub fn field_fingerprint(v: &VectorField) -> Result<String, Error> {
    let canonical = serde_json::to_string(&v.to_json())?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    }))
}

fn stage_error(stage: &str, e: &Error) -> String {
    if e.is_budget() {
        format!("{stage}: Gröbner step budget exhausted")
    } else {
        format!("{stage}: {e}")
    }
}

pub fn certify(v: &VectorField, point: &[Rational], opts: &CertifyOptions) -> Result<Certificate, Error> {
    let comps = v.poly_components()?;
    if v.is_zero() {
        return Err(Error::invalid("the zero field has no isolated singularities"));
    }
    let p = verify_singular(v, point)?;
    let a = linear_part(v, &p)?;
    let mut cert = Certificate {
        field: v.clone(),
        field_fingerprint: field_fingerprint(v)?,
        point: p.clone(),
        degree_bound: opts.degree_bound,
        k_bound: opts.k_bound,
        linear_part: a.clone(),
        resonance: None,
        darboux: None,
        point_membership: Vec::new(),
        sing_finite: None,
        verdict: Verdict::Inconclusive { reasons: Vec::new() },
    };
    if comps.len() < 2 {
        cert.verdict = Verdict::Inconclusive {
            reasons: vec!["dimension 1: the criterion needs at least two variables".into()],
        };
        return Ok(cert);
    }

    // (a)
    let res = match resonance_check_with_budget(&a, opts.k_bound, opts.precision_budget, &opts.budget) {
        Ok(r) => r,
        Err(e) => {
            cert.verdict = Verdict::Inconclusive {
                reasons: vec![stage_error("resonance", &e)],
            };
            return Ok(cert);
        }
    };
    let status = res.status.clone();
    cert.resonance = Some(res);
    match status {
        ResonanceStatus::Resonant(k) => {
            cert.verdict = Verdict::HypothesisAFails { witness: k };
            return Ok(cert);
        }
        ResonanceStatus::Unresolved(cands) => {
            cert.verdict = Verdict::Inconclusive {
                reasons: vec![format!(
                    "resonance: {} candidate relation(s) up to height {} neither excluded nor certified",
                    cands.len(),
                    opts.k_bound
                )],
            };
            return Ok(cert);
        }
        ResonanceStatus::NonresonantUpTo(_) => {}
    }

    // (b)
    let report = match darboux_search_with_budget(v, opts.degree_bound, &opts.budget) {
        Ok(r) => r,
        Err(e) => {
            cert.verdict = Verdict::Inconclusive {
                reasons: vec![stage_error("darboux", &e)],
            };
            return Ok(cert);
        }
    };
    for pair in &report.found {
        let vanishes = pair.g.evaluate(point)?.is_zero();
        cert.point_membership.push((pair.clone(), vanishes));
    }
    let witness = cert
        .point_membership
        .iter()
        .find(|(_, vanishes)| *vanishes)
        .map(|(pair, _)| pair.clone());
    let complete = report.is_complete();
    let families = report.families.len();
    cert.darboux = Some(report);
    if let Some(w) = witness {
        // independent re-check before emitting a failure verdict
        let h = cofactor_of(v, &w.g)?;
        if h.as_ref() != Some(&w.h) || !w.g.evaluate(point)?.is_zero() {
            return Err(Error::invalid("internal check failed: Darboux witness does not verify"));
        }
        cert.verdict = Verdict::HypothesisBFails { witness: w };
        return Ok(cert);
    }

    let mut reasons = Vec::new();
    if !complete {
        reasons.push(format!(
            "darboux: search up to degree {} stopped on the Gröbner step budget",
            opts.degree_bound
        ));
    }
    if families > 0 {
        reasons.push(format!(
            "darboux: {families} positive-dimensional famil{} of Darboux polynomials up to degree {}",
            if families == 1 { "y" } else { "ies" },
            opts.degree_bound
        ));
    }

    match sing_locus_finite_with_budget(v, &opts.budget) {
        Ok(f) => {
            cert.sing_finite = Some(f);
            if !f {
                reasons.push("singular locus is not finite".into());
            }
        }
        Err(e) => reasons.push(stage_error("singular locus", &e)),
    }

    cert.verdict = if reasons.is_empty() {
        Verdict::EvidenceForMinimality {
            d: opts.degree_bound,
            k: opts.k_bound,
        }
    } else {
        Verdict::Inconclusive { reasons }
    };
    Ok(cert)
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        let verdict = match &self.verdict {
            Verdict::EvidenceForMinimality { d, k } => VerdictBodyJson {
                kind: self.verdict.label().into(),
                d: Some(*d),
                k: Some(*k),
                witness: None,
                reasons: Vec::new(),
            },
            Verdict::HypothesisAFails { witness } => VerdictBodyJson {
                kind: self.verdict.label().into(),
                d: None,
                k: Some(self.k_bound),
                witness: Some(serde_json::json!(witness)),
                reasons: Vec::new(),
            },
            Verdict::HypothesisBFails { witness } => VerdictBodyJson {
                kind: self.verdict.label().into(),
                d: Some(self.degree_bound),
                k: None,
                witness: Some(serde_json::json!({"g": witness.g.to_string(), "h": witness.h.to_string()})),
                reasons: Vec::new(),
            },
            Verdict::Inconclusive { reasons } => VerdictBodyJson {
                kind: self.verdict.label().into(),
                d: Some(self.degree_bound),
                k: Some(self.k_bound),
                witness: None,
                reasons: reasons.clone(),
            },
        };
        CertificateJson {
            field_fingerprint: self.field_fingerprint.clone(),
            field: self.field.to_json(),
            point: self.point.coords().iter().map(format_rational).collect(),
            d: self.degree_bound,
            k: self.k_bound,
            linear_part: self
                .linear_part
                .to_rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            resonance: self.resonance.as_ref().map(ResonanceVerdict::to_json),
            darboux: self.darboux.as_ref().map(SearchReport::to_json),
            point_membership: self
                .point_membership
                .iter()
                .map(|(p, vanishes)| MembershipJson {
                    g: p.g.to_string(),
                    vanishes: *vanishes,
                })
                .collect(),
            sing_finite: self.sing_finite,
            verdict,
        }
    }

    pub fn to_json_string(&self) -> Result<String, Error> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    /// Human-readable report with the bounded-evidence disclaimer.
    pub fn render_text(&self) -> String {
        let (d, k) = (self.degree_bound, self.k_bound);
        let mut s = String::new();
        let point: Vec<String> = self.point.coords().iter().map(format_rational).collect();
        let _ = writeln!(s, "field        {}", self.field);
        let _ = writeln!(s, "fingerprint  {}", self.field_fingerprint);
        let _ = writeln!(s, "point        ({})", point.join(", "));
        let _ = writeln!(s, "linear part  {}", self.linear_part);
        if let Some(r) = &self.resonance {
            let line = match &r.status {
                ResonanceStatus::Resonant(w) => format!("RESONANT, witness k = {w:?}"),
                ResonanceStatus::NonresonantUpTo(kk) => {
                    format!("non-resonant up to height K = {kk} (relations with max |k_i| <= {kk} excluded)")
                }
                ResonanceStatus::Unresolved(c) => format!("UNRESOLVED, {} candidate(s) up to height K = {k}", c.len()),
            };
            let _ = writeln!(s, "resonance    {line}");
        }
        if let Some(r) = &self.darboux {
            let _ = writeln!(
                s,
                "darboux      {:?} search up to degree D = {d}: {} found, {} famil{}, {} irrational branch(es)",
                r.status,
                r.found.len(),
                r.families.len(),
                if r.families.len() == 1 { "y" } else { "ies" },
                r.irrational_branches
            );
            for (p, vanishes) in &self.point_membership {
                let _ = writeln!(
                    s,
                    "             g = {}   h = {}   vanishes at point: {}",
                    p.g, p.h, vanishes
                );
            }
            if r.found.is_empty() && r.families.is_empty() {
                let _ = writeln!(s, "             no invariant hypersurface of degree <= {d} with rational coefficients");
            }
        }
        if let Some(f) = self.sing_finite {
            let _ = writeln!(s, "sing finite  {f}");
        }
        let verdict = match &self.verdict {
            Verdict::EvidenceForMinimality { d, k } => format!("EVIDENCE_FOR_MINIMALITY(D = {d}, K = {k})"),
            Verdict::HypothesisAFails { witness } => format!("HYPOTHESIS_A_FAILS (resonance k = {witness:?})"),
            Verdict::HypothesisBFails { witness } => {
                format!("HYPOTHESIS_B_FAILS (invariant hypersurface {} = 0 through the point)", witness.g)
            }
            Verdict::Inconclusive { reasons } => format!("INCONCLUSIVE: {}", reasons.join("; ")),
        };
        let _ = writeln!(s, "verdict      {verdict}");
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "This verdict is evidence bounded by (D, K) = ({d}, {k}). Hypothesis (a) is checked only for \
             integer relations of height at most K = {k}. Hypothesis (b) is only checked against invariant \
             hypersurfaces defined by Darboux polynomials with rational coefficients of degree at most D = {d}; \
             no invariant curves or higher-codimension sets are searched, and hypersurfaces defined only over \
             a number field appear through their rational Galois-orbit products of possibly larger degree."
        );
        let _ = writeln!(
            s,
            "If hypothesis (a) holds for every relation and hypothesis (b) holds for every proper \
             positive-dimensional invariant subvariety, the generic type of the field is minimal; for \
             such fields this yields strong minimality and geometric triviality of the solution set. \
             The toolkit does not assert that conclusion."
        );
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub dimension: usize,
    pub affine_degree: u32,
    pub sing_finite: bool,
    /// Rational singular points, when the singular locus is finite.
    pub rational_singular_points: Vec<Vec<String>>,
    pub irrational_singular_branches: usize,
    pub notes: Vec<String>,
}

/// Singular-locus summary plus notes on degenerate low-degree cases.
pub fn structure_report(v: &VectorField) -> Result<StructureReport, Error> {
    structure_report_with_budget(v, &Budget::default())
}

pub fn structure_report_with_budget(v: &VectorField, budget: &Budget) -> Result<StructureReport, Error> {
    let deg = affine_degree(v)?;
    let n = v.dim();
    let sing_finite = sing_locus_finite_with_budget(v, budget)?;
    let mut points = Vec::new();
    let mut irrational = 0;
    if sing_finite {
        let ps = rational_points(&singular_ideal(v)?, budget)?;
        points = ps.points.iter().map(|p| p.iter().map(format_rational).collect()).collect();
        irrational = ps.irrational_branches;
    }
    let mut notes = Vec::new();
    if deg.zero_field {
        notes.push("zero field".to_string());
    } else if deg.degree <= 1 {
        notes.push(
            "affine degree <= 1: a linear system, whose solutions are internal to the constants; \
             not strongly minimal"
                .to_string(),
        );
    }
    if n == 1 && deg.degree == 2 {
        notes.push(
            "dimension 1, degree 2: an autonomous Riccati equation, internal to the constants; \
             not strongly minimal"
                .to_string(),
        );
    } else if n == 1 {
        notes.push("dimension 1: the singular-point criterion needs at least two variables".to_string());
    }
    if n == 3 && deg.degree == 2 {
        notes.push(
            "dimension 3, degree 2: the family containing the Halphen systems, some of which are strongly \
             minimal and geometrically trivial"
                .to_string(),
        );
    }
    Ok(StructureReport {
        dimension: n,
        affine_degree: deg.degree,
        sing_finite,
        rational_singular_points: points,
        irrational_singular_branches: irrational,
        notes,
    })
}
