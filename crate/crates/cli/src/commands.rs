//! Verb dispatch.  Each verb produces a JSON document, a text rendering and
//! an exit code.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vfcert::certifier::{certify, structure_report_with_budget, CertifyOptions, Verdict, DEFAULT_D};
use vfcert::darboux::{
    codim1_invariant, darboux_search_with_budget, invariant_ideal_check_with_budget, tangency_identity_check,
    SearchStatus,
};
use vfcert::groebner::{rational_points, Budget, GroebnerError, DEFAULT_REDUCTION_BUDGET};
use vfcert::polyring::rational::format_rational;
use vfcert::polyring::{parse_expression, Rational};
use vfcert::projective::{chart_derivation, dehomogenize, homogenize_affine, pole_order};
use vfcert::prolongation::{
    check_horizontal_invariant, distribution_conormal_ideal, first_prolongation, first_prolongation_local,
    HorizontalIdeal, HorizontalIdealJson, Invariance, ProlongedField,
};
use vfcert::singularity::{
    linear_part, resonance_check_with_budget, sing_locus_finite_with_budget, singular_ideal, verify_singular,
    ResonanceStatus, DEFAULT_K, DEFAULT_PRECISION_BUDGET,
};
use vfcert::vectorfield::{affine_degree, extract_ode, lie_bracket, VectorField};
use vfcert::Error;

use crate::input::{self, IdealInput};
use crate::{Cli, Verb, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK};

pub struct Outcome {
    pub code: u8,
    pub json: String,
    pub text: String,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Budget(String),
    Negative(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Budget(m) | Failure::Negative(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Groebner(GroebnerError::BudgetExhausted(_)) => Failure::Budget(msg),
            Error::NotSingular { .. } => Failure::Negative(msg),
            _ => Failure::Parse(msg),
        }
    }
}

fn outcome<T: Serialize>(code: u8, value: &T, text: String) -> Result<Outcome, Failure> {
    let json = serde_json::to_string_pretty(value).map_err(|e| Failure::Parse(e.to_string()))?;
    Ok(Outcome { code, json, text })
}

fn require<'a, T>(value: &'a Option<T>, flag: &str, verb: &str) -> Result<&'a T, Failure> {
    value
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("`{verb}` needs {flag}")))
}

fn rationals(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(format_rational).collect()
}

fn field_text(v: &VectorField) -> String {
    let mut s = String::new();
    for (x, c) in v.vars().iter().zip(v.components()) {
        let _ = writeln!(s, "d{x}/dt = {c}");
    }
    s
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let expected = if cli.verb == Verb::Bracket { 2 } else { 1 };
    if cli.files.len() != expected {
        return Err(Failure::Usage(format!(
            "expected {expected} input file(s), got {}",
            cli.files.len()
        )));
    }
    if cli.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let budget = Budget {
        max_reductions: cli.budget.unwrap_or(DEFAULT_REDUCTION_BUDGET),
    };
    let path = &cli.files[0];
    match cli.verb {
        Verb::Bracket => {
            let v = input::field(&cli.files[0])?;
            let w = input::field(&cli.files[1])?;
            let b = lie_bracket(&v, &w)?;
            outcome(EXIT_OK, &b.to_json(), field_text(&b))
        }
        Verb::Prolong => {
            let v = input::field(path)?;
            let pv = prolong(&v)?;
            match &cli.ideal {
                None => outcome(EXIT_OK, &pv.full.to_json(), field_text(&pv.full)),
                Some(p) => match input::ideal(p)? {
                    IdealInput::Affine(_) => Err(Failure::Usage(
                        "`prolong --ideal` needs fiber_vars or a spanning set of fields".into(),
                    )),
                    other => horizontal_invariance(&pv, other, cli.seed, &budget),
                },
            }
        }
        Verb::Invariant => {
            let v = input::field(path)?;
            let file = require(&cli.ideal, "--ideal", "invariant")?;
            match input::ideal(file)? {
                IdealInput::Affine(ideal) => {
                    let ok = invariant_ideal_check_with_budget(&v, &ideal, &budget)?;
                    let inv = if ok { Invariance::Invariant } else { Invariance::NotInvariant };
                    invariance_outcome(&inv, None)
                }
                other => horizontal_invariance(&prolong(&v)?, other, cli.seed, &budget),
            }
        }
        Verb::Singular => singular(cli, path, &budget),
        Verb::Linpart => {
            let v = input::field(path)?;
            let pt = input::point(require(&cli.point, "--point", "linpart")?)?;
            let sp = verify_singular(&v, &pt)?;
            let a = linear_part(&v, &sp)?;
            let rows: Vec<Vec<String>> = a.to_rows().iter().map(|r| rationals(r)).collect();
            let doc = serde_json::json!({ "point": rationals(&pt), "matrix": rows });
            outcome(EXIT_OK, &doc, format!("linear part at ({}): {a}\n", rationals(&pt).join(", ")))
        }
        Verb::Resonance => {
            let v = input::field(path)?;
            let pt = input::point(require(&cli.point, "--point", "resonance")?)?;
            let sp = verify_singular(&v, &pt)?;
            let a = linear_part(&v, &sp)?;
            let k = cli.max_height.unwrap_or(DEFAULT_K);
            let verdict = resonance_check_with_budget(&a, k, DEFAULT_PRECISION_BUDGET, &budget)?;
            let code = match verdict.status {
                ResonanceStatus::Resonant(_) => EXIT_NEGATIVE,
                ResonanceStatus::NonresonantUpTo(_) => EXIT_OK,
                ResonanceStatus::Unresolved(_) => EXIT_INCONCLUSIVE,
            };
            let mut text = verdict.status.label().to_string();
            match &verdict.status {
                ResonanceStatus::Resonant(w) => {
                    let _ = write!(text, " witness {w:?}");
                }
                ResonanceStatus::NonresonantUpTo(k) => {
                    let _ = write!(text, " (K = {k})");
                }
                ResonanceStatus::Unresolved(c) => {
                    let _ = write!(text, " candidates {c:?}");
                }
            }
            text.push('\n');
            outcome(code, &verdict.to_json(), text)
        }
        Verb::Darboux => {
            let v = input::field(path)?;
            let d = cli.max_degree.unwrap_or(DEFAULT_D);
            let report = darboux_search_with_budget(&v, d, &budget)?;
            let code = match report.status {
                SearchStatus::Complete => EXIT_OK,
                SearchStatus::BudgetExhausted => EXIT_INCONCLUSIVE,
            };
            let j = report.to_json();
            let mut text = format!("degree <= {d}: {:?}\n", j.status);
            for p in &j.found {
                let _ = writeln!(text, "  g = {}    cofactor {}", p.g, p.h);
            }
            for f in &j.families {
                let _ = writeln!(text, "  family with leading monomial {}: g = {}", f.leading, f.g);
            }
            if j.irrational_branches > 0 {
                let _ = writeln!(text, "  {} branch(es) with irrational coefficients", j.irrational_branches);
            }
            outcome(code, &j, text)
        }
        Verb::Codim1 => {
            let v = input::field(path)?;
            let w = input::oneform(require(&cli.oneform, "--oneform", "codim1")?)?;
            match codim1_invariant(&v, &w)? {
                Some(h) => {
                    let tangency = tangency_identity_check(&v, &w)?;
                    let doc = serde_json::json!({
                        "invariant": true,
                        "cofactor": h.to_string(),
                        "tangency_identity": tangency,
                    });
                    outcome(
                        EXIT_OK,
                        &doc,
                        format!("invariant, cofactor {h}; tangency identity {tangency}\n"),
                    )
                }
                None => outcome(
                    EXIT_NEGATIVE,
                    &serde_json::json!({ "invariant": false }),
                    "not invariant\n".into(),
                ),
            }
        }
        Verb::Homogenize => {
            let v = input::field(path)?;
            let d = match cli.max_degree {
                Some(d) => d,
                None => affine_degree(&v)?.degree,
            };
            let h = homogenize_affine(&v, d)?;
            outcome(EXIT_OK, &h.to_json(), format!("{h}\n"))
        }
        Verb::Dehomogenize => {
            let h = input::homogeneous(path)?;
            let v = dehomogenize(&h)?;
            outcome(EXIT_OK, &v.to_json(), field_text(&v))
        }
        Verb::Chart => {
            let h = input::homogeneous(path)?;
            let i = *require(&cli.chart, "--chart", "chart")?;
            if i > h.n() {
                return Err(Failure::Usage(format!("chart index {i} out of range 0..={}", h.n())));
            }
            let v = chart_derivation(&h, i)?;
            outcome(EXIT_OK, &v.to_json(), field_text(&v))
        }
        Verb::PoleOrder => {
            let v = input::field(path)?;
            let var = require(&cli.hyperplane, "--hyperplane", "pole-order")?;
            let k = pole_order(&v, var)?;
            let doc = serde_json::json!({ "hyperplane": var, "pole_order": k });
            outcome(EXIT_OK, &doc, format!("pole order along {var} = 0: {k}\n"))
        }
        Verb::JetOde => {
            let v = input::field(path)?;
            let obs = require(&cli.observable, "--observable", "jet-ode")?;
            let order = *require(&cli.order, "--order", "jet-ode")?;
            let f = parse_expression(obs, v.ambient()).map_err(Error::from)?;
            let ode = extract_ode(&v, &f, order, &budget)?;
            let gens: Vec<String> = ode.ideal.generators().iter().map(|g| g.to_string()).collect();
            let doc = serde_json::json!({
                "jet_vars": ode.jet_vars,
                "generators": gens,
                "principal": ode.principal,
            });
            let text = match ode.equation() {
                Some(e) => format!("{e} = 0\n"),
                None => format!("non-principal ideal: <{}>\n", gens.join(", ")),
            };
            outcome(EXIT_OK, &doc, text)
        }
        Verb::Certify => {
            let v = input::field(path)?;
            let pt = input::point(require(&cli.point, "--point", "certify")?)?;
            let opts = CertifyOptions {
                degree_bound: cli.max_degree.unwrap_or(DEFAULT_D),
                k_bound: cli.max_height.unwrap_or(DEFAULT_K),
                precision_budget: DEFAULT_PRECISION_BUDGET,
                budget,
            };
            let cert = certify(&v, &pt, &opts)?;
            let code = match cert.verdict {
                Verdict::EvidenceForMinimality { .. } => EXIT_OK,
                Verdict::HypothesisAFails { .. } | Verdict::HypothesisBFails { .. } => EXIT_NEGATIVE,
                Verdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            };
            Ok(Outcome {
                code,
                json: cert.to_json_string()?,
                text: cert.render_text(),
            })
        }
        Verb::Structure => {
            let v = input::field(path)?;
            let r = structure_report_with_budget(&v, &budget)?;
            let mut text = format!(
                "dimension {}, affine degree {}, singular locus {}\n",
                r.dimension,
                r.affine_degree,
                if r.sing_finite { "finite" } else { "not finite" }
            );
            for p in &r.rational_singular_points {
                let _ = writeln!(text, "  rational singular point ({})", p.join(", "));
            }
            if r.irrational_singular_branches > 0 {
                let _ = writeln!(text, "  {} irrational branch(es)", r.irrational_singular_branches);
            }
            for n in &r.notes {
                let _ = writeln!(text, "  note: {n}");
            }
            outcome(EXIT_OK, &r, text)
        }
    }
}

fn prolong(v: &VectorField) -> Result<ProlongedField, Failure> {
    Ok(if v.is_polynomial() {
        first_prolongation(v)?
    } else {
        first_prolongation_local(v)?
    })
}

fn horizontal_invariance(pv: &ProlongedField, input: IdealInput, seed: u64, budget: &Budget) -> Result<Outcome, Failure> {
    let h = match input {
        IdealInput::Horizontal(j) => HorizontalIdeal::from_json(&j)?,
        IdealInput::Distribution(fields) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            distribution_conormal_ideal(&fields, &mut rng)?
        }
        IdealInput::Affine(_) => unreachable!("affine ideals are handled by the caller"),
    };
    let inv = check_horizontal_invariant(pv, &h, budget)?;
    invariance_outcome(&inv, Some(h.to_json()))
}

fn invariance_outcome(inv: &Invariance, ideal: Option<HorizontalIdealJson>) -> Result<Outcome, Failure> {
    let (code, label, reason) = match inv {
        Invariance::Invariant => (EXIT_OK, "INVARIANT", None),
        Invariance::NotInvariant => (EXIT_NEGATIVE, "NOT_INVARIANT", None),
        Invariance::Indeterminate(r) => (EXIT_INCONCLUSIVE, "INDETERMINATE", Some(r.clone())),
    };
    let mut doc = serde_json::json!({ "invariance": label });
    if let Some(r) = &reason {
        doc["reason"] = serde_json::json!(r);
    }
    if let Some(i) = ideal {
        doc["ideal"] = serde_json::to_value(i).map_err(|e| Failure::Parse(e.to_string()))?;
    }
    let text = match reason {
        Some(r) => format!("{label}: {r}\n"),
        None => format!("{label}\n"),
    };
    outcome(code, &doc, text)
}

fn singular(cli: &Cli, path: &std::path::Path, budget: &Budget) -> Result<Outcome, Failure> {
    let v = input::field(path)?;
    if let Some(p) = &cli.point {
        let pt = input::point(p)?;
        return match verify_singular(&v, &pt) {
            Ok(_) => {
                let doc = serde_json::json!({ "point": rationals(&pt), "singular": true });
                outcome(EXIT_OK, &doc, format!("({}) is singular\n", rationals(&pt).join(", ")))
            }
            Err(Error::NotSingular { index, value }) => {
                let doc = serde_json::json!({
                    "point": rationals(&pt),
                    "singular": false,
                    "component": index,
                    "value": format_rational(&value),
                });
                let text = format!(
                    "({}) is not singular: component {index} evaluates to {}\n",
                    rationals(&pt).join(", "),
                    format_rational(&value)
                );
                outcome(EXIT_NEGATIVE, &doc, text)
            }
            Err(e) => Err(e.into()),
        };
    }
    let finite = sing_locus_finite_with_budget(&v, budget)?;
    let mut points = Vec::new();
    let mut irrational = 0;
    if finite {
        let ps = rational_points(&singular_ideal(&v)?, budget).map_err(Error::from)?;
        points = ps.points.iter().map(|p| rationals(p)).collect();
        irrational = ps.irrational_branches;
    }
    let doc = serde_json::json!({
        "finite": finite,
        "rational_points": points,
        "irrational_branches": irrational,
    });
    let mut text = format!("singular locus {}\n", if finite { "finite" } else { "not finite" });
    for p in &points {
        let _ = writeln!(text, "  ({})", p.join(", "));
    }
    if irrational > 0 {
        let _ = writeln!(text, "  {irrational} irrational branch(es)");
    }
    outcome(EXIT_OK, &doc, text)
}
