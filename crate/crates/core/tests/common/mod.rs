//! Shared oracles, generators and fixtures for the integration suites.
//! The oracles are written from the defining formulas and do not call the
//! library routine they check.
#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use wigreg_core::algebra::{rat, GaussianRational, Monomial, MultiPoly, Rational, Var, VarSet};
use wigreg_core::classify::{family_symbol, FamilyParams, QuadraticCoeffs};
use wigreg_core::symbol::OperatorSpec;

fn fact(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k as i64, 1))
}

/// `n!/(n−k)!`
fn falling(n: u32, k: u32) -> Rational {
    fact(n) / fact(n - k)
}

fn add_term(out: &mut Vec<(Monomial, GaussianRational)>, ex: u32, exi: u32, c: GaussianRational) {
    out.push((Monomial::of(&[(Var::X, ex), (Var::Xi, exi)]), c));
}

/// `exp(−Δ/4) exp((i/2)∂_x∂_ξ)` expanded monomial by monomial.
pub fn wick_oracle(a: &MultiPoly) -> MultiPoly {
    let mut stage1 = Vec::new();
    for (m, c) in a.terms() {
        let (ea, eb) = (m.exp(Var::X), m.exp(Var::Xi));
        for l in 0..=ea.min(eb) {
            let w = GaussianRational::new(Rational::zero(), rat(1, 2))
                .pow(l)
                .scale(&(falling(ea, l) * falling(eb, l) / fact(l)));
            add_term(&mut stage1, ea - l, eb - l, c * &w);
        }
    }
    let mut stage2 = Vec::new();
    for (m, c) in stage1 {
        let (ea, eb) = (m.exp(Var::X), m.exp(Var::Xi));
        for s in 0..=ea / 2 {
            for t in 0..=eb / 2 {
                let sign = rat(-1, 4);
                let w = num_traits::pow(sign, (s + t) as usize) * falling(ea, 2 * s) * falling(eb, 2 * t)
                    / (fact(s) * fact(t));
                add_term(&mut stage2, ea - 2 * s, eb - 2 * t, c.scale(&w));
            }
        }
    }
    MultiPoly::from_terms(VarSet::PHASE_1D, stage2)
}

/// Symbol of `B` read off `e^{−i(xξ+yη)} B e^{i(xξ+yη)}`: each factor acts
/// on `g·e^{iφ}` as `(y + pD_x) → y g + p(D_x g + ξ g)` and
/// `(x − qD_y) → x g − q(D_y g + η g)`.
pub fn b_oracle(spec: &OperatorSpec) -> MultiPoly {
    let p = spec.p().clone();
    let q = spec.q();
    let minus_i = GaussianRational::new(Rational::zero(), rat(-1, 1));
    let d = |g: &MultiPoly, v: Var| g.diff(v, 1).unwrap().scale(&minus_i);
    let var = |v: Var| MultiPoly::var(v).with_vars(VarSet::ALL);
    let mut total = MultiPoly::zero(VarSet::ALL);
    for (&(j, k), c) in spec.coeffs() {
        let mut g = MultiPoly::constant(GaussianRational::one()).with_vars(VarSet::ALL);
        for _ in 0..k {
            let inner = &d(&g, Var::X) + &(&var(Var::Xi) * &g);
            g = &(&var(Var::Y) * &g) + &inner.scale_rational(&p);
        }
        for _ in 0..j {
            let inner = &d(&g, Var::Y) + &(&var(Var::Eta) * &g);
            g = &(&var(Var::X) * &g) - &inner.scale_rational(&q);
        }
        total = &total + &g.scale(c);
    }
    total
}

fn binom(n: u32, k: u32) -> Rational {
    fact(n) / (fact(k) * fact(n - k))
}

/// `Σ c (iq)^n n! C(j,n) C(k,n) x^{j−n} y^{k−n}` (the base-point form).
pub fn atilde_oracle_xy(spec: &OperatorSpec) -> MultiPoly {
    let iq = GaussianRational::new(Rational::zero(), spec.q());
    let mut terms = Vec::new();
    for (&(j, k), c) in spec.coeffs() {
        for n in 0..=j.min(k) {
            let w = iq.pow(n).scale(&(fact(n) * binom(j, n) * binom(k, n)));
            terms.push((Monomial::of(&[(Var::X, j - n), (Var::Y, k - n)]), c * &w));
        }
    }
    MultiPoly::from_terms(VarSet::ALL, terms)
}

/// Brute force over the split `s₁² + s₀² = c₀` (the boundary is optimal
/// because `r² = b²/s²` decreases in `s`). Returns the largest
/// `4(a₂ − r₁²)(a₀ − r₀²) − a₁²` over splits with `a₂ − r₁² > 10⁻⁴`, or
/// `None` when no split qualifies.
pub fn quadratic_oracle(c: &QuadraticCoeffs) -> Option<f64> {
    let f = wigreg_core::algebra::rational::rat_to_f64;
    let (a2, a1, a0, b1, b0, c0) = (f(&c.a2), f(&c.a1), f(&c.a0), f(&c.b1), f(&c.b0), f(&c.c0));
    if c0 < 0.0 {
        return None;
    }
    let r_sq = |b: f64, s: f64| {
        if b == 0.0 {
            Some(0.0)
        } else if s > 0.0 {
            Some(b * b / s)
        } else {
            None
        }
    };
    let margin = |u: f64| {
        let (r1, r0) = (r_sq(b1, c0 * u)?, r_sq(b0, c0 * (1.0 - u))?);
        let aa = a2 - r1;
        // a margin that only tends to 0 as a₂ − r₁² → 0⁺ is not attained
        (aa > 1e-4).then_some(4.0 * aa * (a0 - r0) - a1 * a1)
    };
    let steps = 20_000;
    let h = 1.0 / steps as f64;
    let (u, best) = (0..=steps).filter_map(|i| margin(i as f64 * h).map(|m| (i as f64 * h, m))).reduce(|a, b| {
        if b.1 > a.1 {
            b
        } else {
            a
        }
    })?;
    // polish inside the neighbouring cells; the margin is unimodal there
    let (mut lo, mut hi) = ((u - h).max(0.0), (u + h).min(1.0));
    let at = |u: f64| margin(u).unwrap_or(f64::NEG_INFINITY);
    for _ in 0..100 {
        let (m1, m2) = (lo + (hi - lo) / 3.0, hi - (hi - lo) / 3.0);
        if at(m1) < at(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    Some(best.max(at((lo + hi) / 2.0)))
}

/// Agreement rule for the oracle: feasible when the best margin is
/// non-negative up to rounding.
pub fn quadratic_oracle_feasible(c: &QuadraticCoeffs) -> bool {
    quadratic_oracle(c).is_some_and(|m| m >= -1e-10)
}

pub fn rand_rational(rng: &mut StdRng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn rand_gaussian(rng: &mut StdRng) -> GaussianRational {
    GaussianRational::new(rand_rational(rng, 9, 5), rand_rational(rng, 9, 5))
}

/// Gaussian-rational polynomial in `(x, ξ)` of total degree `≤ max_deg`.
pub fn rand_poly(rng: &mut StdRng, max_deg: u32) -> MultiPoly {
    let n = rng.gen_range(1..=12);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            let ex = rng.gen_range(0..=d);
            (Monomial::of(&[(Var::X, ex), (Var::Xi, d - ex)]), rand_gaussian(rng))
        })
        .collect();
    MultiPoly::from_terms(VarSet::PHASE_1D, terms)
}

/// Spec of order `≤ max_order` with `p ∈ [−2, 2]`.
pub fn rand_spec(rng: &mut StdRng, max_order: u32) -> OperatorSpec {
    loop {
        let n = rng.gen_range(1..=6);
        let terms: Vec<_> = (0..n)
            .map(|_| {
                let m = rng.gen_range(0..=max_order);
                let j = rng.gen_range(0..=m);
                ((j, m - j), rand_gaussian(rng))
            })
            .collect();
        let den = rng.gen_range(1..=6);
        let p = rat(rng.gen_range(-2 * den..=2 * den), den);
        if let Ok(s) = OperatorSpec::new(terms, p) {
            return s;
        }
    }
}

pub fn rand_quadratic(rng: &mut StdRng) -> QuadraticCoeffs {
    QuadraticCoeffs {
        a2: rand_rational(rng, 6, 2),
        a1: rand_rational(rng, 6, 2),
        a0: rand_rational(rng, 6, 2),
        b1: rand_rational(rng, 3, 2),
        b0: rand_rational(rng, 3, 2),
        c0: rand_rational(rng, 6, 2),
    }
}

/// Leading coefficients drawn with `a₂ > 0`, `c₀ ≥ 0`, so both outcomes
/// of the estimate occur often.
pub fn rand_quadratic_admissible(rng: &mut StdRng) -> QuadraticCoeffs {
    let pos = |rng: &mut StdRng, n: i64| rat(rng.gen_range(0..=n), rng.gen_range(1..=2));
    QuadraticCoeffs {
        a2: &pos(rng, 6) + &rat(1, 4),
        a1: rand_rational(rng, 4, 2),
        a0: &pos(rng, 8) - &rat(1, 1),
        b1: rand_rational(rng, 2, 2),
        b0: rand_rational(rng, 2, 2),
        c0: pos(rng, 6),
    }
}

pub fn real(n: i64, d: i64) -> GaussianRational {
    GaussianRational::real(rat(n, d))
}

pub fn spec_of(terms: &[((u32, u32), GaussianRational)], p: Rational) -> OperatorSpec {
    OperatorSpec::new(terms.iter().cloned(), p).unwrap()
}

/// `4x² + D²/4`
pub fn twisted_spec() -> OperatorSpec {
    spec_of(&[((2, 0), real(4, 1)), ((0, 2), real(1, 4))], rat(1, 2))
}

/// `xD`
pub fn mixed_spec() -> OperatorSpec {
    spec_of(&[((1, 1), real(1, 1))], rat(1, 2))
}

#[allow(clippy::too_many_arguments)]
pub fn family(lambda: i64, mu: i64, nu: i64, sigma: i64, h: u32, k: u32, m: u32, n: u32) -> FamilyParams {
    FamilyParams { lambda: rat(lambda, 1), mu: rat(mu, 1), nu: rat(nu, 1), sigma: rat(sigma, 1), h, k, m, n }
}

pub fn family_spec(f: &FamilyParams) -> OperatorSpec {
    OperatorSpec::from_symbol(&family_symbol(f), rat(1, 2)).unwrap()
}

/// `D + αx` written as `(y + pD_x) + α(x − qD_y)`.
pub fn first_order_spec(alpha_im: i64) -> OperatorSpec {
    spec_of(&[((0, 1), real(1, 1)), ((1, 0), GaussianRational::new(rat(0, 1), rat(alpha_im, 1)))], rat(1, 2))
}
