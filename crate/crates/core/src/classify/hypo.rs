//! Hypo-ellipticity: exact sufficient certificates and a sampling falsifier.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, PhasePoint};
use super::family::{FamilyParams, NewtonPolygon};
use crate::algebra::{rat, Monomial, MultiPoly, Rational, Var, VarSet};
use crate::error::{Error, Result};

pub const DEFAULT_RADII: [f64; 4] = [1e1, 1e2, 1e3, 1e4];
pub const DEFAULT_SAMPLES_PER_CIRCLE: usize = 720;

/// Exponents γ of the monomial curves `(±R, ±R^γ)` and `(±R^γ, ±R)`
/// probed in addition to the circle. They reach the thin regions near the
/// axes where a non-elliptic symbol can stay bounded.
const CURVE_EXPONENTS: [f64; 5] = [-2.0, -1.0, -0.5, 0.0, 0.5];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Falsification {
    pub falsified: bool,
    pub witness: Option<PhasePoint>,
    pub reason: Option<String>,
    #[serde(with = "super::certificate::trend_serde")]
    pub trend: Vec<(f64, f64)>,
}

struct Probe {
    x: f64,
    xi: f64,
    value: f64,
    /// Infinite where the symbol vanishes.
    ratio: f64,
}

fn probe_points(r: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut pts = Vec::with_capacity(samples + 8 * CURVE_EXPONENTS.len());
    for s in 0..samples {
        let th = 2.0 * std::f64::consts::PI * s as f64 / samples as f64;
        pts.push((r * th.cos(), r * th.sin()));
    }
    for g in CURVE_EXPONENTS {
        let small = r.powf(g);
        for (sx, sy) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            pts.push((sx * r, sy * small));
            pts.push((sx * small, sy * r));
        }
    }
    pts
}

/// Sampling falsifier for hypo-ellipticity of `a(x, ξ)`.
///
/// Reports `falsified` when `a` vanishes at the outermost radius, or when
/// the largest gradient-to-value ratio at the outermost radius exceeds both
/// the one at the innermost radius and `0.1`. A negative answer is never a
/// proof of hypo-ellipticity.
pub fn hypo_falsify(a: &MultiPoly, radii: &[f64], samples_per_circle: usize) -> Result<Falsification> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if radii.len() < 2 {
        return Err(Error::InvalidArgument("at least two radii are required".into()));
    }
    if radii[0] <= 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("radii must be positive and strictly increasing".into()));
    }
    if samples_per_circle == 0 {
        return Err(Error::InvalidArgument("samples_per_circle must be positive".into()));
    }
    let a = a.clone().with_vars(VarSet::PHASE_1D);
    let dx = a.diff_unchecked(Var::X, 1);
    let dxi = a.diff_unchecked(Var::Xi, 1);
    let abs_terms: Vec<(u32, u32, f64)> =
        a.terms().map(|(m, c)| (m.exp(Var::X), m.exp(Var::Xi), c.to_complex().norm())).collect();

    let mut trend = Vec::with_capacity(radii.len());
    let mut worst_last: Option<Probe> = None;
    let mut zero_last: Option<Probe> = None;
    for (ri, &r) in radii.iter().enumerate() {
        let mut max_ratio = 0.0f64;
        for (x, xi) in probe_points(r, samples_per_circle) {
            let v = a.eval_phase(x, xi).norm();
            let scale: f64 =
                abs_terms.iter().map(|&(i, j, c)| c * x.abs().powi(i as i32) * xi.abs().powi(j as i32)).sum();
            let grad = dx.eval_phase(x, xi).norm() + dxi.eval_phase(x, xi).norm();
            let vanishes = v <= 1e-12 * scale;
            let ratio = if vanishes { f64::INFINITY } else { grad / v };
            let last = ri + 1 == radii.len();
            if ratio > max_ratio {
                max_ratio = ratio;
                if last {
                    worst_last = Some(Probe { x, xi, value: v, ratio });
                }
            }
            if vanishes && last && zero_last.is_none() {
                zero_last = Some(Probe { x, xi, value: v, ratio });
            }
        }
        trend.push((r, max_ratio));
    }

    if let Some(z) = zero_last {
        return Ok(Falsification {
            falsified: true,
            witness: Some(PhasePoint { x: z.x, xi: z.xi, value: Some(z.value), ratio: None }),
            reason: Some(format!("symbol vanishes at radius {}", radii[radii.len() - 1])),
            trend,
        });
    }
    let first = trend[0].1;
    let last = trend[trend.len() - 1].1;
    if last > first && last > 0.1 {
        let w = worst_last.expect("a maximum exists on the last circle");
        return Ok(Falsification {
            falsified: true,
            witness: Some(PhasePoint { x: w.x, xi: w.xi, value: Some(w.value), ratio: Some(w.ratio) }),
            reason: Some(format!("gradient ratio grows from {first:.3e} to {last:.3e}")),
            trend,
        });
    }
    Ok(Falsification { falsified: false, witness: None, reason: None, trend })
}

/// Splits a degree-2 symbol into its real leading form, or explains why
/// it does not have that shape.
fn quadratic_leading(a: &MultiPoly) -> std::result::Result<(Rational, Rational, Rational), String> {
    if a.terms().any(|(m, _)| m.exp(Var::Y) > 0 || m.exp(Var::Eta) > 0) {
        return Err("symbol depends on y or η".into());
    }
    if a.degree() != Some(2) {
        return Err("symbol is not of total degree 2".into());
    }
    if a.terms().any(|(m, c)| m.degree() > 0 && !c.is_real()) {
        return Err("non-constant coefficients must be real".into());
    }
    let a2 = a.coeff(&Monomial::of(&[(Var::X, 2)])).re;
    let b1 = a.coeff(&Monomial::of(&[(Var::X, 1), (Var::Xi, 1)])).re * rat(1, 2);
    let c0 = a.coeff(&Monomial::of(&[(Var::Xi, 2)])).re;
    Ok((a2, b1, c0))
}

/// Positive-definite leading form `a₂x² + 2b₁xξ + c₀ξ²`.
pub fn hypo_certify_quadratic(a: &MultiPoly) -> Certificate {
    match quadratic_leading(a) {
        Err(reason) => Certificate::not_applicable(reason),
        Ok((a2, b1, c0)) => {
            let det = &a2 * &c0 - &b1 * &b1;
            if a2.is_positive() && det.is_positive() {
                Certificate::HypoQuadraticForm { a2, b1, c0, det }
            } else {
                Certificate::not_applicable(format!("leading form is not positive-definite (a2={a2}, det={det})"))
            }
        }
    }
}

pub(crate) fn check_quadratic_form(
    a: &MultiPoly,
    a2: &Rational,
    b1: &Rational,
    c0: &Rational,
    det: &Rational,
) -> std::result::Result<(), String> {
    let (ea2, eb1, ec0) = quadratic_leading(a)?;
    if (&ea2, &eb1, &ec0) != (a2, b1, c0) {
        return Err("payload does not match the symbol's leading form".into());
    }
    if *det != a2 * c0 - b1 * b1 {
        return Err("determinant mismatch".into());
    }
    if !(a2.is_positive() && det.is_positive()) {
        return Err("leading form is not positive-definite".into());
    }
    Ok(())
}

/// Parameter test for the quasi-homogeneous family. The mixed vertex
/// conditions only apply when `μ + ν > 0`.
pub fn hypo_certify_newton(params: &FamilyParams) -> Certificate {
    if !params.lambda.is_positive() || !params.sigma.is_positive() {
        return Certificate::not_applicable("λ and σ must be positive");
    }
    if params.mu.is_negative() || params.nu.is_negative() {
        return Certificate::not_applicable("μ and ν must be non-negative");
    }
    if params.h == 0 || params.k == 0 {
        return Certificate::not_applicable("h and k must be positive");
    }
    if params.has_mixed() {
        if !params.exponents_positive() {
            return Certificate::not_applicable("m and n must be positive");
        }
        if !params.polygon_conditions() {
            return Certificate::not_applicable(format!(
                "Newton polygon conditions fail: need m<h, n<k, nh+mk≥hk (h={}, k={}, m={}, n={}: nh+mk={}, hk={})",
                params.h,
                params.k,
                params.m,
                params.n,
                params.n * params.h + params.m * params.k,
                params.h * params.k
            ));
        }
    }
    Certificate::HypoNewtonPolygon { family: params.clone(), polygon: NewtonPolygon::for_family(params) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn line_of_zeros_is_falsified() {
        let f = hypo_falsify(&p("xi"), &DEFAULT_RADII, 360).unwrap();
        assert!(f.falsified);
        let w = f.witness.unwrap();
        assert_eq!((w.x, w.xi), (1e4, 0.0));
    }

    #[test]
    fn harmonic_oscillator_not_falsified() {
        let f = hypo_falsify(&p("x^2 + xi^2"), &DEFAULT_RADII, 360).unwrap();
        assert!(!f.falsified);
        for &(r, ratio) in &f.trend {
            assert!(ratio <= 2.0 * 2f64.sqrt() / r * 1.0001, "{r} {ratio}");
            assert!(ratio >= 2.0 / r * 0.999);
        }
        assert!(f.trend.windows(2).all(|w| w[1].1 < w[0].1));
    }

    #[test]
    fn hyperbola_is_falsified() {
        let f = hypo_falsify(&p("1 + x^2*xi^2"), &DEFAULT_RADII, 360).unwrap();
        assert!(f.falsified);
        let w = f.witness.unwrap();
        // along ξ = 1/x the ratio is about 2|x|
        assert!(w.ratio.unwrap() > 1e3);
        assert!((w.x.abs() * w.xi.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(hypo_falsify(&MultiPoly::zero(VarSet::PHASE_1D), &DEFAULT_RADII, 8), Err(Error::ZeroPolynomial));
        assert!(hypo_falsify(&p("x"), &[10.0], 8).is_err());
        assert!(hypo_falsify(&p("x"), &[10.0, 5.0], 8).is_err());
    }

    #[test]
    fn quadratic_form_examples() {
        match hypo_certify_quadratic(&p("4*x^2 + 1/4*xi^2")) {
            Certificate::HypoQuadraticForm { det, .. } => assert_eq!(det, rat(1, 1)),
            c => panic!("{c:?}"),
        }
        assert!(!hypo_certify_quadratic(&p("x^2 + 2*x*xi + xi^2")).is_applicable());
        match hypo_certify_quadratic(&p("x^2 + xi^2 + x*xi")) {
            Certificate::HypoQuadraticForm { det, .. } => assert_eq!(det, rat(3, 4)),
            c => panic!("{c:?}"),
        }
        // constant imaginary part allowed, other imaginary parts not
        assert!(hypo_certify_quadratic(&p("x^2 + xi^2 - 3*i")).is_applicable());
        assert!(!hypo_certify_quadratic(&p("x^2 + xi^2 + i*x")).is_applicable());
        assert!(!hypo_certify_quadratic(&p("x^4 + xi^2")).is_applicable());
    }

    fn fam(h: u32, k: u32, m: u32, n: u32, mu: Rational, nu: Rational) -> FamilyParams {
        FamilyParams { lambda: rat(1, 1), mu, nu, sigma: rat(1, 1), h, k, m, n }
    }

    #[test]
    fn newton_examples() {
        assert!(hypo_certify_newton(&fam(2, 2, 1, 1, rat(1, 1), rat(1, 1))).is_applicable());
        assert!(!hypo_certify_newton(&fam(3, 3, 1, 1, rat(1, 1), rat(1, 1))).is_applicable());
        assert!(hypo_certify_newton(&fam(1, 1, 1, 1, rat(0, 1), rat(0, 1))).is_applicable());
        let neg = FamilyParams { sigma: rat(-1, 1), ..fam(1, 1, 1, 1, rat(0, 1), rat(0, 1)) };
        assert!(!hypo_certify_newton(&neg).is_applicable());
    }
}
