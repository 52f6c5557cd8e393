//! Independent re-checking of certificates against a symbol `a(x, ξ)`.
//!
//! Exact kinds are re-derived from their payload with rational arithmetic;
//! no search is repeated. The two sampling kinds re-run their sampler on
//! the recorded grid.

use num_traits::{Signed, Zero};

use super::certificate::Certificate;
use super::family::{family_symbol, NewtonPolygon};
use super::first_order::{first_order_certify, first_order_symbol, recognize_first_order, FirstOrderShape};
use super::hypo::{check_quadratic_form, hypo_certify_newton, hypo_falsify};
use super::injectivity::{check_wick_positive, evaluate_split, WickGrid};
use crate::algebra::{rat, MultiPoly};
use crate::symbol::weyl_wick;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

pub fn verify_certificate(cert: &Certificate, a: &MultiPoly) -> Check {
    match cert {
        Certificate::NotApplicable { .. } => Ok(()),
        Certificate::HypoQuadraticForm { a2, b1, c0, det } => check_quadratic_form(a, a2, b1, c0, det),
        Certificate::HypoNewtonPolygon { family, polygon } => {
            ensure(family_symbol(family) == *a, "symbol is not the family member")?;
            ensure(*polygon == NewtonPolygon::for_family(family), "Newton polygon mismatch")?;
            ensure(hypo_certify_newton(family) == *cert, "family parameters fail the conditions")
        }
        Certificate::HypoFirstOrder { alpha, m, scale } => {
            let shape = FirstOrderShape { scale: scale.clone(), alpha: alpha.clone(), m: *m };
            ensure(!scale.is_zero() && *m > 0, "degenerate first-order payload")?;
            ensure(first_order_symbol(&shape) == *a, "symbol is not scale·(ξ + αx^m)")?;
            ensure(!alpha.im.is_zero(), "Im α = 0")
        }
        Certificate::HypoUnfalsified { radii, samples_per_circle, .. } => {
            let f = hypo_falsify(a, radii, *samples_per_circle).map_err(|e| e.to_string())?;
            ensure(!f.falsified, "falsifier rejects the symbol on the recorded grid")
        }
        Certificate::InjQuadraticEstimate {
            coeffs, s1_sq, s0_sq, r1_sq, r0_sq, margin, lower_bound, relaxed, ..
        } => {
            ensure(coeffs.to_symbol() == *a, "coefficients do not reproduce the symbol")?;
            ensure(!coeffs.c0.is_negative() && coeffs.a2.is_positive(), "requires c0 >= 0, a2 > 0")?;
            ensure(!s1_sq.is_negative() && !s0_sq.is_negative(), "negative split")?;
            ensure(s1_sq + s0_sq <= coeffs.c0, "s1^2 + s0^2 exceeds c0")?;
            let split = evaluate_split(coeffs, s1_sq, s0_sq).ok_or("split leaves a nonzero b unabsorbed")?;
            ensure(split.r1_sq == *r1_sq && split.r0_sq == *r0_sq, "r values inconsistent with b = r·s")?;
            ensure(split.margin == *margin, "margin mismatch")?;
            ensure(split.reduced_a2.is_positive(), "a2 - r1^2 must be positive")?;
            ensure(!margin.is_negative(), "negative margin")?;
            ensure(*relaxed == margin.is_zero(), "relaxed flag mismatch")?;
            ensure(*lower_bound == margin / (rat(4, 1) * &split.reduced_a2), "lower bound mismatch")
        }
        Certificate::InjSOS { family } => {
            ensure(family_symbol(family) == *a, "symbol is not the family member")?;
            ensure(family.weights_admissible() && family.h > 0 && family.k > 0, "weights not admissible")
        }
        Certificate::InjWickPositive { wick_symbol, radius, count, directions, .. } => {
            ensure(weyl_wick(a) == *wick_symbol, "anti-Wick symbol mismatch")?;
            ensure(wick_symbol.has_real_coeffs(), "anti-Wick symbol is complex")?;
            let grid = WickGrid { radius: *radius, count: *count, directions: *directions };
            check_wick_positive(wick_symbol, &grid).map(|_| ()).map_err(|na| match *na {
                Certificate::NotApplicable { reason, .. } => reason,
                _ => "positivity check failed".into(),
            })
        }
        Certificate::InjKernelEscape { alpha, m, side, .. }
        | Certificate::NotInjectiveWitness { alpha, m, side, .. } => {
            let shape = recognize_first_order(a).ok_or("symbol is not first order")?;
            ensure(shape.alpha == *alpha && shape.m == *m, "α or m does not match the symbol")?;
            ensure(first_order_certify(alpha, *m, *side) == *cert, "kernel analysis mismatch")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::certificate::Side;
    use crate::classify::hypo::hypo_certify_quadratic;
    use crate::classify::injectivity::{injectivity_quadratic, injectivity_wick};
    use crate::classify::QuadraticCoeffs;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn accepts_own_certificates() {
        let a = p("4*x^2 + 1/4*xi^2");
        let c = hypo_certify_quadratic(&a);
        assert_eq!(verify_certificate(&c, &a), Ok(()));
        let q = QuadraticCoeffs::from_symbol(&a).unwrap();
        let c = injectivity_quadratic(&q);
        assert_eq!(verify_certificate(&c, &a), Ok(()));
        let w = p("x^2 + xi^2 + 2");
        assert_eq!(verify_certificate(&injectivity_wick(&w, &WickGrid::default()), &w), Ok(()));
        let f = p("xi - i*x");
        assert_eq!(
            verify_certificate(
                &first_order_certify(
                    &f.coeff(&crate::algebra::Monomial::of(&[(crate::algebra::Var::X, 1)])),
                    1,
                    Side::Adjoint
                ),
                &f
            ),
            Ok(())
        );
    }

    #[test]
    fn rejects_tampering() {
        let a = p("4*x^2 + 1/4*xi^2");
        let q = QuadraticCoeffs::from_symbol(&a).unwrap();
        let Certificate::InjQuadraticEstimate { coeffs, s1_sq, s0_sq, r1_sq, r0_sq, margin, relaxed, note, .. } =
            injectivity_quadratic(&q)
        else {
            panic!()
        };
        let forged = Certificate::InjQuadraticEstimate {
            coeffs,
            s1_sq,
            s0_sq,
            r1_sq,
            r0_sq,
            margin,
            lower_bound: rat(1, 1),
            relaxed,
            note,
        };
        assert!(verify_certificate(&forged, &a).is_err());
        // right certificate, wrong symbol
        let c = hypo_certify_quadratic(&a);
        assert!(verify_certificate(&c, &p("4*x^2 + xi^2")).is_err());
    }
}
