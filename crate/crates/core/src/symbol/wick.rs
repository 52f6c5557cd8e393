//! Weyl–Wick transform: left symbol → anti-Wick (coherent-state) symbol.
//!
//! `W = exp(−Δ/4) ∘ exp((i/2) ∂_x∂_ξ)` with `Δ = ∂_x² + ∂_ξ²`. The mixed
//! factor maps the left symbol of `Σ c x^j D^k` (`D = −i∂`) to its Weyl
//! symbol; the heat factor then removes the Gaussian smoothing of the
//! coherent-state projections. Both factors are nilpotent on polynomials,
//! so the series terminate.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{GaussianRational, MultiPoly, Rational, Var, VarSet};

fn laplacian(a: &MultiPoly) -> MultiPoly {
    &a.diff_unchecked(Var::X, 2) + &a.diff_unchecked(Var::Xi, 2)
}

fn mixed(a: &MultiPoly) -> MultiPoly {
    a.diff_unchecked(Var::X, 1).diff_unchecked(Var::Xi, 1)
}

/// `Σ_n c^n/n! L^n a` for a nilpotent operator `L`.
fn exp_series(a: &MultiPoly, c: &GaussianRational, op: fn(&MultiPoly) -> MultiPoly) -> MultiPoly {
    let mut out = a.clone();
    let mut term = a.clone();
    let mut n = 0u32;
    loop {
        n += 1;
        term = op(&term);
        if term.is_zero() {
            break;
        }
        let w = c.pow(n).scale(&Rational::new(BigInt::one(), (1..=n).map(BigInt::from).product()));
        out = &out + &term.scale(&w);
    }
    out
}

fn half_i(sign: i64) -> GaussianRational {
    GaussianRational::new(Rational::zero(), Rational::new(sign.into(), 2.into()))
}

fn quarter(sign: i64) -> GaussianRational {
    GaussianRational::from_ratio(sign, 4)
}

pub fn weyl_wick(a: &MultiPoly) -> MultiPoly {
    let a = a.clone().with_vars(VarSet::PHASE_1D);
    let weyl = exp_series(&a, &half_i(1), mixed);
    exp_series(&weyl, &quarter(-1), laplacian)
}

pub fn weyl_wick_inverse(a: &MultiPoly) -> MultiPoly {
    let a = a.clone().with_vars(VarSet::PHASE_1D);
    let heat = exp_series(&a, &quarter(1), laplacian);
    exp_series(&heat, &half_i(-1), mixed)
}
