//! Constructions of operators that are regular by design.

use num_traits::{One, Zero};
use serde::Serialize;

use super::report::{certify, Report};
use crate::algebra::{GaussianRational, MultiPoly, Rational, Var, VarSet};
use crate::classify::injectivity::sample_min;
use crate::classify::WickGrid;
use crate::error::{Error, Result};
use crate::symbol::{build_b_symbol, t_conjugate, weyl_wick, weyl_wick_inverse, LinearChange, OperatorSpec};

#[derive(Clone, Debug, Serialize)]
pub struct Generated {
    /// `W⁻¹[a]`, the symbol of the generated `A`.
    pub r: MultiPoly,
    #[serde(skip)]
    pub spec: OperatorSpec,
    /// `W[r] = a` holds exactly.
    pub round_trip: bool,
    pub report: Report,
}

/// Builds `A = r(x, D)` with `W[r] = a`, so that `A` is positive whenever
/// `a` is. Fails with a witness when a sample of `a` is negative.
pub fn generate_from_positive_symbol(a: &MultiPoly, p: Rational) -> Result<Generated> {
    if a.terms().any(|(m, _)| m.exp(Var::Y) > 0 || m.exp(Var::Eta) > 0) {
        return Err(Error::InvalidArgument("symbol must only involve x and ξ".into()));
    }
    if !a.has_real_coeffs() {
        return Err(Error::InvalidArgument(format!("symbol {a} has non-real coefficients")));
    }
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = a.clone().with_vars(VarSet::PHASE_1D);
    let s = sample_min(&a, &WickGrid::default());
    if s.min < 0.0 {
        return Err(Error::NotPositive { x: s.at.0, xi: s.at.1, value: s.min });
    }
    let r = weyl_wick_inverse(&a);
    let spec = OperatorSpec::from_symbol(&r, p)?;
    let round_trip = weyl_wick(&spec.symbol_a()) == a;
    let report = certify(&spec);
    Ok(Generated { r, spec, round_trip, report })
}

#[derive(Clone, Debug)]
pub struct QuasiHomogeneous {
    pub spec: OperatorSpec,
    pub t: LinearChange,
    /// `b(T'z, T⁻¹ζ)`, equal to `(η + ρx)^{2h} + (ξ + τy)^{2k}`.
    pub conjugated_symbol: MultiPoly,
}

/// `λ = (ρ − τ)^{2h}`, `σ = 1`, `p = ρ/(ρ − τ)`, `T = diag(p, τ)`.
pub fn generate_quasi_homogeneous(rho: Rational, tau: Rational, h: u32, k: u32) -> Result<QuasiHomogeneous> {
    if rho.is_zero() || tau.is_zero() {
        return Err(Error::InvalidArgument("ρτ must be non-zero".into()));
    }
    if rho == tau {
        return Err(Error::InvalidArgument("ρ and τ must differ".into()));
    }
    if h == 0 || k == 0 {
        return Err(Error::InvalidArgument("h and k must be positive".into()));
    }
    let diff = &rho - &tau;
    let lambda = num_traits::pow(diff.clone(), 2 * h as usize);
    let p = &rho / &diff;
    let spec = OperatorSpec::new(
        [((2 * h, 0), GaussianRational::real(lambda)), ((0, 2 * k), GaussianRational::real(Rational::one()))],
        p.clone(),
    )?;
    let t = LinearChange::diag(p, tau)?;
    let conjugated_symbol = t_conjugate(&build_b_symbol(&spec), &t);
    Ok(QuasiHomogeneous { spec, t, conjugated_symbol })
}

/// `(η + ρx)^{2h} + (ξ + τy)^{2k}`.
pub fn quasi_homogeneous_target(rho: &Rational, tau: &Rational, h: u32, k: u32) -> MultiPoly {
    let lin = |c: &Rational, v: Var, w: Var| &MultiPoly::var(w) + &MultiPoly::var(v).scale_rational(c);
    let first = lin(rho, Var::X, Var::Eta).pow(2 * h);
    let second = lin(tau, Var::Y, Var::Xi).pow(2 * k);
    (&first + &second).with_vars(VarSet::ALL)
}
