use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::MultiPoly;
use crate::classify::hypo::{DEFAULT_RADII, DEFAULT_SAMPLES_PER_CIRCLE};
use crate::classify::{
    first_order_certify, hypo_certify_first_order, hypo_certify_newton, hypo_certify_quadratic, hypo_falsify,
    injectivity_quadratic, injectivity_sos, injectivity_wick, recognize_family, recognize_first_order, Certificate,
    Falsification, Grade, PhasePoint, QuadraticCoeffs, RegularityVerdict, Side, Status, WickGrid,
};
use crate::error::{Error, Result};
use crate::symbol::{
    a_tilde, build_b_symbol, t_conjugate, verify_degeneracy, weyl_wick, LinearChange, OperatorSpec, SpecDocument,
};
use crate::wigner::{intertwine_residual, AnalyticTestFunction, CheckMode, Grid2D, IntertwineReport};

/// Reads an operator file.
pub fn parse_spec(text: &str) -> Result<(OperatorSpec, Option<LinearChange>)> {
    let doc: SpecDocument = serde_json::from_str(text)?;
    doc.into_spec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedSymbol {
    pub text: String,
    pub poly: MultiPoly,
}

impl NamedSymbol {
    fn new(poly: MultiPoly) -> Self {
        Self { text: poly.to_string(), poly }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Symbols {
    pub a: NamedSymbol,
    pub b: NamedSymbol,
    pub atilde: NamedSymbol,
    pub wick: NamedSymbol,
    /// `b(x + qη, y − pξ; ξ, η) = ã(x, y)`
    pub degeneracy_holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_conjugated: Option<NamedSymbol>,
}

impl Symbols {
    pub fn compute(spec: &OperatorSpec, t: Option<&LinearChange>) -> Self {
        let a = spec.symbol_a();
        let b = build_b_symbol(spec);
        Self {
            wick: NamedSymbol::new(weyl_wick(&a)),
            atilde: NamedSymbol::new(a_tilde(spec)),
            degeneracy_holds: verify_degeneracy(spec).holds,
            b_conjugated: t.map(|t| NamedSymbol::new(t_conjugate(&b, t))),
            a: NamedSymbol::new(a),
            b: NamedSymbol::new(b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub method: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub spec: SpecDocument,
    pub symbols: Symbols,
    pub verdict: RegularityVerdict,
    pub grade: Grade,
    pub hypo_attempts: Vec<Attempt>,
    pub injectivity_attempts: Vec<Attempt>,
    pub falsifier: Falsification,
    /// Kernel analysis of `A*` for first-order symbols.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<IntertwineReport>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    pub radii: Vec<f64>,
    pub samples_per_circle: usize,
    pub wick: WickGrid,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            radii: DEFAULT_RADII.to_vec(),
            samples_per_circle: DEFAULT_SAMPLES_PER_CIRCLE,
            wick: WickGrid::default(),
        }
    }
}

fn attempt(method: &str, certificate: Certificate) -> Attempt {
    Attempt { method: method.to_string(), certificate }
}

pub fn certify(spec: &OperatorSpec) -> Report {
    certify_with(spec, None, &CertifyOptions::default())
}

/// Runs the hypo-ellipticity certificates (quadratic form, Newton family,
/// first order, then the sampling falsifier) and the injectivity
/// certificates (quadratic estimate, sum of squares, anti-Wick sampling,
/// first-order kernel), and composes the verdict.
pub fn certify_with(spec: &OperatorSpec, t: Option<&LinearChange>, opts: &CertifyOptions) -> Report {
    let a = spec.symbol_a();
    let family = recognize_family(&a);
    let first_order = recognize_first_order(&a);

    let mut hypo = vec![
        attempt("quadratic form", hypo_certify_quadratic(&a)),
        attempt(
            "Newton polygon",
            family.as_ref().map_or_else(
                || Certificate::not_applicable("not a member of the quasi-homogeneous family"),
                hypo_certify_newton,
            ),
        ),
        attempt("first order", hypo_certify_first_order(&a)),
    ];
    let falsifier = hypo_falsify(&a, &opts.radii, opts.samples_per_circle)
        .expect("operator specs are never zero and the radii are validated");
    hypo.push(attempt(
        "sampling falsifier",
        if falsifier.falsified {
            Certificate::NotApplicable {
                reason: format!(
                    "falsified: {}",
                    falsifier.reason.clone().unwrap_or_else(|| "symbol is not hypo-elliptic".into())
                ),
                witness: falsifier.witness.clone(),
            }
        } else {
            Certificate::HypoUnfalsified {
                radii: opts.radii.clone(),
                samples_per_circle: opts.samples_per_circle,
                trend: falsifier.trend.clone(),
            }
        },
    ));

    let mut inj = vec![
        attempt(
            "quadratic estimate",
            QuadraticCoeffs::from_symbol(&a).map_or_else(
                || Certificate::not_applicable("symbol is not of the symmetric quadratic shape"),
                |c| injectivity_quadratic(&c),
            ),
        ),
        attempt(
            "sum of squares",
            family.as_ref().map_or_else(
                || Certificate::not_applicable("not a member of the quasi-homogeneous family"),
                injectivity_sos,
            ),
        ),
        attempt("anti-Wick positivity", injectivity_wick(&a, &opts.wick)),
    ];
    let adjoint = first_order.as_ref().map(|s| first_order_certify(&s.alpha, s.m, Side::Adjoint));
    inj.push(attempt(
        "first-order kernel",
        first_order.as_ref().map_or_else(
            || Certificate::not_applicable("symbol is not of the form c(ξ + αx^m)"),
            |s| first_order_certify(&s.alpha, s.m, Side::Operator),
        ),
    ));

    let certs = |v: &[Attempt]| v.iter().map(|x| x.certificate.clone()).collect::<Vec<_>>();
    let verdict = RegularityVerdict::compose(&certs(&hypo), &certs(&inj));
    Report {
        spec: SpecDocument::from_spec(spec, t),
        symbols: Symbols::compute(spec, t),
        grade: verdict.grade,
        verdict,
        hypo_attempts: hypo,
        injectivity_attempts: inj,
        falsifier,
        adjoint,
        residuals: None,
    }
}

/// Attaches the full intertwining residual for `h₀ ⊗ h₀` on the given grid.
pub fn attach_residuals(report: &mut Report, spec: &OperatorSpec, grid: Grid2D) -> Result<()> {
    let h0 = AnalyticTestFunction::Hermite(0);
    report.residuals = Some(intertwine_residual(spec, &h0, &h0, grid, CheckMode::Full)?);
    Ok(())
}

/// 0 regular (exact), 2 regular (evidence), 3 unknown, 4 not regular.
pub fn exit_code(report: &Report) -> i32 {
    match (report.verdict.status, report.grade) {
        (Status::Regular, Grade::Exact) => 0,
        (Status::Regular, Grade::Evidence) => 2,
        (Status::Unknown, _) => 3,
        (Status::NotRegular, _) => 4,
    }
}

fn witness_text(w: &Option<PhasePoint>) -> String {
    w.as_ref().map_or_else(String::new, |w| format!(" at ({}, {})", w.x, w.xi))
}

pub fn summary(report: &Report) -> String {
    let mut s = String::new();
    let v = &report.verdict;
    let status = match (v.status, report.grade) {
        (Status::Regular, Grade::Exact) => "Regular (exact)",
        (Status::Regular, Grade::Evidence) => "Regular (evidence-grade)",
        (Status::NotRegular, _) => "NotRegular",
        (Status::Unknown, _) => "Unknown",
    };
    let _ = writeln!(s, "verdict: {status}");
    let _ = writeln!(s, "reason:  {}", v.reason);
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "kernel:  {w}");
    }
    let _ = writeln!(s, "a(x,ξ)  = {}", report.symbols.a.text);
    let _ = writeln!(s, "W[a]    = {}", report.symbols.wick.text);
    for (title, list) in [("hypo-ellipticity", &report.hypo_attempts), ("injectivity", &report.injectivity_attempts)] {
        let _ = writeln!(s, "{title}:");
        for at in list.iter() {
            let detail = match &at.certificate {
                Certificate::NotApplicable { reason, witness } => format!("{reason}{}", witness_text(witness)),
                c => c.kind().to_string(),
            };
            let _ = writeln!(s, "  {:<22} {detail}", at.method);
        }
    }
    if let Some(adj) = &report.adjoint {
        let state = if matches!(adj, Certificate::NotInjectiveWitness { .. }) { "N(A*) ≠ 0" } else { "N(A*) = 0" };
        let _ = writeln!(s, "adjoint: {state} ({})", adj.kind());
    }
    if let Some(r) = &report.residuals {
        let _ = writeln!(s, "intertwining residual (p={}): {:.3e}", r.p, r.max_residual());
    }
    s
}

/// Writes the JSON report and optionally a text summary; returns the exit
/// code for the verdict.
pub fn emit_report(report: &Report, json: Option<&Path>, text: Option<&Path>) -> Result<i32> {
    let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
    if let Some(path) = json {
        let body = serde_json::to_string_pretty(report)?;
        std::fs::write(path, body + "\n").map_err(io)?;
    }
    if let Some(path) = text {
        std::fs::write(path, summary(report)).map_err(io)?;
    }
    Ok(exit_code(report))
}
