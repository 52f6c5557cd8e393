//! First-order model operators `A = c(D + αx^m)`.
//!
//! The classical kernel of `D + αx^m` is `exp(−iα x^{m+1}/(m+1))`, whose
//! modulus is `exp(Im α · x^{m+1}/(m+1))`. It is Schwartz exactly when `m`
//! is odd and `Im α < 0`; otherwise it grows on at least one side and the
//! kernel in `S'` is trivial.

use num_traits::{Signed, Zero};

use super::certificate::{Certificate, Side};
use crate::algebra::{rat, GaussianRational, Monomial, MultiPoly, Var, VarSet};

/// `a = scale·(ξ + αx^m)` read off a symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstOrderShape {
    pub scale: GaussianRational,
    pub alpha: GaussianRational,
    pub m: u32,
}

pub fn recognize_first_order(a: &MultiPoly) -> Option<FirstOrderShape> {
    if a.len() != 2 {
        return None;
    }
    let xi = Monomial::of(&[(Var::Xi, 1)]);
    let scale = a.coeff(&xi);
    if scale.is_zero() {
        return None;
    }
    let (mono, beta) = a.terms().find(|(m, _)| **m != xi)?;
    let m = mono.exp(Var::X);
    if m == 0 || *mono != Monomial::of(&[(Var::X, m)]) {
        return None;
    }
    let alpha = beta.clone() * scale.inv().ok()?;
    Some(FirstOrderShape { scale, alpha, m })
}

pub fn first_order_symbol(shape: &FirstOrderShape) -> MultiPoly {
    MultiPoly::from_terms(
        VarSet::PHASE_1D,
        [
            (Monomial::of(&[(Var::Xi, 1)]), shape.scale.clone()),
            (Monomial::of(&[(Var::X, shape.m)]), &shape.scale * &shape.alpha),
        ],
    )
}

/// A zero set reduced to the origin and `|∇a|/|a| → 0` hold as soon as
/// `Im α ≠ 0`.
pub fn hypo_certify_first_order(a: &MultiPoly) -> Certificate {
    match recognize_first_order(a) {
        None => Certificate::not_applicable("symbol is not of the form c(ξ + αx^m)"),
        Some(s) if s.alpha.im.is_zero() => Certificate::not_applicable("α is real: a vanishes on the curve ξ = −αx^m"),
        Some(s) => Certificate::HypoFirstOrder { alpha: s.alpha, m: s.m, scale: s.scale },
    }
}

/// `κ x^{m+1}` with `κ = −iα/(m+1)`, so that `exp(κx^{m+1})` solves
/// `(D + αx^m)u = 0`.
pub fn kernel_exponent(alpha: &GaussianRational, m: u32) -> MultiPoly {
    let kappa = (GaussianRational::i() * alpha.clone()).scale(&rat(-1, i64::from(m) + 1));
    MultiPoly::monomial(kappa, Monomial::of(&[(Var::X, m + 1)])).with_vars(VarSet::PHASE_1D)
}

fn kernel_text(exponent: &MultiPoly) -> String {
    format!("exp({exponent})")
}

/// Kernel analysis of `D + αx^m` (operator side) or of its adjoint
/// `D + ᾱx^m`. The certificate keeps the `α` of the operator itself.
pub fn first_order_certify(alpha: &GaussianRational, m: u32, side: Side) -> Certificate {
    if m == 0 {
        return Certificate::not_applicable("m must be positive");
    }
    if alpha.im.is_zero() {
        return Certificate::not_applicable("Im α = 0");
    }
    let effective = match side {
        Side::Operator => alpha.clone(),
        Side::Adjoint => alpha.conj(),
    };
    let exponent = kernel_exponent(&effective, m);
    if m % 2 == 1 && effective.im.is_negative() {
        Certificate::NotInjectiveWitness { alpha: alpha.clone(), m, side, kernel: kernel_text(&exponent), exponent }
    } else {
        Certificate::InjKernelEscape { alpha: alpha.clone(), m, side, exponent }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(rat(re, 1), rat(im, 1))
    }

    #[test]
    fn growing_kernel() {
        match first_order_certify(&gi(0, 1), 1, Side::Operator) {
            Certificate::InjKernelEscape { exponent, .. } => {
                assert_eq!(exponent, "1/2*x^2".parse().unwrap())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schwartz_kernel() {
        match first_order_certify(&gi(0, -1), 1, Side::Operator) {
            Certificate::NotInjectiveWitness { exponent, kernel, .. } => {
                assert_eq!(exponent, "-1/2*x^2".parse().unwrap());
                assert_eq!(kernel, "exp(-1/2*x^2)");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn adjoint_has_kernel() {
        let c = first_order_certify(&gi(0, 1), 1, Side::Adjoint);
        assert!(matches!(c, Certificate::NotInjectiveWitness { side: Side::Adjoint, .. }));
        assert!(!c.is_not_injective());
    }

    #[test]
    fn even_power_always_escapes() {
        for im in [-1, 1] {
            let c = first_order_certify(&gi(2, im), 2, Side::Operator);
            assert_eq!(c.kind(), "InjKernelEscape");
        }
    }

    #[test]
    fn real_alpha() {
        assert!(!first_order_certify(&gi(3, 0), 1, Side::Operator).is_applicable());
        assert!(!hypo_certify_first_order(&"xi + 3*x".parse().unwrap()).is_applicable());
    }

    #[test]
    fn recognition() {
        let a: MultiPoly = "2*xi - 4*i*x^3".parse().unwrap();
        let s = recognize_first_order(&a).unwrap();
        assert_eq!(s, FirstOrderShape { scale: gi(2, 0), alpha: gi(0, -2), m: 3 });
        assert_eq!(first_order_symbol(&s), a);
        assert!(hypo_certify_first_order(&a).is_applicable());
        assert!(recognize_first_order(&"xi + x*xi".parse().unwrap()).is_none());
        assert!(recognize_first_order(&"xi + 1".parse().unwrap()).is_none());
    }
}
