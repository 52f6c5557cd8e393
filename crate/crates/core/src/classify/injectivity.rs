//! Injectivity of the model operator `A = a(x, D)`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::certificate::{Certificate, PhasePoint, QuadraticCoeffs};
use super::family::FamilyParams;
use crate::algebra::rational::rat_to_f64;
use crate::algebra::{rat, GaussianRational, Monomial, MultiPoly, Rational, Var, VarSet};
use crate::symbol::weyl_wick;

const RELAXED_NOTE: &str =
    "margin is zero: (Au|u) >= int q(x)|u|^2 with q >= 0 vanishing at one point only, so Au=0 forces u=0";

impl QuadraticCoeffs {
    /// Reads `a₂x² + a₁x + a₀ − ib₁ + 2(b₁x + b₀)ξ + c₀ξ²` off a symbol.
    /// The imaginary constant must equal `−b₁` (formal symmetry of `A`).
    pub fn from_symbol(a: &MultiPoly) -> Option<Self> {
        if a.degree().is_some_and(|d| d > 2) {
            return None;
        }
        let known = [
            Monomial::of(&[(Var::X, 2)]),
            Monomial::of(&[(Var::X, 1)]),
            Monomial::default(),
            Monomial::of(&[(Var::X, 1), (Var::Xi, 1)]),
            Monomial::of(&[(Var::Xi, 1)]),
            Monomial::of(&[(Var::Xi, 2)]),
        ];
        if a.terms().any(|(m, _)| !known.contains(m)) {
            return None;
        }
        let real = |m: &Monomial| {
            let c = a.coeff(m);
            c.is_real().then_some(c.re)
        };
        let half = rat(1, 2);
        let b1 = real(&known[3])? * &half;
        let b0 = real(&known[4])? * &half;
        let constant = a.coeff(&known[2]);
        if constant.im != -b1.clone() {
            return None;
        }
        Some(QuadraticCoeffs {
            a2: real(&known[0])?,
            a1: real(&known[1])?,
            a0: constant.re,
            b1,
            b0,
            c0: real(&known[5])?,
        })
    }

    pub fn to_symbol(&self) -> MultiPoly {
        let g = |r: &Rational| GaussianRational::real(r.clone());
        let two = rat(2, 1);
        MultiPoly::from_terms(
            VarSet::PHASE_1D,
            [
                (Monomial::of(&[(Var::X, 2)]), g(&self.a2)),
                (Monomial::of(&[(Var::X, 1)]), g(&self.a1)),
                (Monomial::default(), GaussianRational::new(self.a0.clone(), -self.b1.clone())),
                (Monomial::of(&[(Var::X, 1), (Var::Xi, 1)]), g(&(&two * &self.b1))),
                (Monomial::of(&[(Var::Xi, 1)]), g(&(&two * &self.b0))),
                (Monomial::of(&[(Var::Xi, 2)]), g(&self.c0)),
            ],
        )
    }
}

/// Quantities derived from a split `c₀ ≥ s₁² + s₀²`; `None` when the split
/// cannot absorb a nonzero `b`.
pub(crate) struct Split {
    pub r1_sq: Rational,
    pub r0_sq: Rational,
    pub reduced_a2: Rational,
    pub margin: Rational,
}

pub(crate) fn evaluate_split(c: &QuadraticCoeffs, s1_sq: &Rational, s0_sq: &Rational) -> Option<Split> {
    let r_sq = |b: &Rational, s: &Rational| {
        if b.is_zero() {
            Some(Rational::zero())
        } else if s.is_positive() {
            Some(b * b / s)
        } else {
            None
        }
    };
    let r1_sq = r_sq(&c.b1, s1_sq)?;
    let r0_sq = r_sq(&c.b0, s0_sq)?;
    let reduced_a2 = &c.a2 - &r1_sq;
    let margin = rat(4, 1) * &reduced_a2 * (&c.a0 - &r0_sq) - &c.a1 * &c.a1;
    Some(Split { r1_sq, r0_sq, reduced_a2, margin })
}

/// Certificate for a specific split `(s₁², s₀²)`.
pub fn injectivity_quadratic_with(c: &QuadraticCoeffs, s1_sq: Rational, s0_sq: Rational) -> Certificate {
    if c.c0.is_negative() || !c.a2.is_positive() {
        return Certificate::not_applicable("requires c0 >= 0 and a2 > 0");
    }
    if s1_sq.is_negative() || s0_sq.is_negative() || &s1_sq + &s0_sq > c.c0 {
        return Certificate::not_applicable("split must satisfy s1^2 + s0^2 <= c0");
    }
    let Some(split) = evaluate_split(c, &s1_sq, &s0_sq) else {
        return Certificate::not_applicable("split leaves a nonzero b unabsorbed");
    };
    if !split.reduced_a2.is_positive() || split.margin.is_negative() {
        return Certificate::not_applicable(format!(
            "estimate fails: a2-r1^2={}, margin={}",
            split.reduced_a2, split.margin
        ));
    }
    let relaxed = split.margin.is_zero();
    let lower_bound = &split.margin / (rat(4, 1) * &split.reduced_a2);
    Certificate::InjQuadraticEstimate {
        coeffs: c.clone(),
        s1_sq,
        s0_sq,
        r1_sq: split.r1_sq,
        r0_sq: split.r0_sq,
        margin: split.margin,
        lower_bound,
        relaxed,
        note: relaxed.then(|| RELAXED_NOTE.to_string()),
    }
}

const COARSE: i64 = 64;
const FINE: i64 = 512;

/// Searches the split `s₁² = c₀u, s₀² = c₀(1−u)` over `u ∈ [0, 1]`: a
/// 64-step pass, then 512 steps across the two coarse cells around the
/// best candidate. All candidates are exact rationals.
pub fn injectivity_quadratic(c: &QuadraticCoeffs) -> Certificate {
    if c.c0.is_negative() || !c.a2.is_positive() {
        return Certificate::not_applicable("requires c0 >= 0 and a2 > 0");
    }
    let score = |u: &Rational| -> Option<Rational> {
        let s1 = &c.c0 * u;
        let s0 = &c.c0 * (Rational::one() - u);
        let sp = evaluate_split(c, &s1, &s0)?;
        sp.reduced_a2.is_positive().then_some(sp.margin)
    };
    let mut best: Option<(Rational, Rational)> = None;
    let consider = |u: Rational, best: &mut Option<(Rational, Rational)>| {
        if let Some(f) = score(&u) {
            if best.as_ref().is_none_or(|(_, bf)| f > *bf) {
                *best = Some((u, f));
            }
        }
    };
    for i in 0..=COARSE {
        consider(rat(i, COARSE), &mut best);
    }
    let centre = best.as_ref().map(|(u, _)| u.clone()).unwrap_or_else(|| rat(1, 2));
    let lo = &centre - rat(1, COARSE);
    for i in 0..=FINE {
        let u = &lo + rat(2 * i, COARSE * FINE);
        if !u.is_negative() && u <= Rational::one() {
            consider(u, &mut best);
        }
    }
    if best.as_ref().is_none_or(|(_, f)| f.is_negative()) {
        // the optimum can sit exactly on a zero margin; retry at rational
        // approximations of the float maximiser
        for u in convergents(refine_maximiser(c, &centre)) {
            consider(u, &mut best);
        }
    }
    match best {
        Some((u, _)) => {
            let s1 = &c.c0 * &u;
            let s0 = &c.c0 * (Rational::one() - &u);
            injectivity_quadratic_with(c, s1, s0)
        }
        None => Certificate::not_applicable("no admissible split keeps a2 - r1^2 > 0"),
    }
}

/// Ternary search of the margin in `f64` near `centre`. The margin is a
/// product of two concave factors, so it is unimodal where both are
/// positive.
fn refine_maximiser(c: &QuadraticCoeffs, centre: &Rational) -> f64 {
    let f = |r: &Rational| rat_to_f64(r);
    let (a2, a1, a0, b1, b0, c0) = (f(&c.a2), f(&c.a1), f(&c.a0), f(&c.b1), f(&c.b0), f(&c.c0));
    let margin = |u: f64| {
        let r1 = if b1 == 0.0 { 0.0 } else { b1 * b1 / (c0 * u) };
        let r0 = if b0 == 0.0 { 0.0 } else { b0 * b0 / (c0 * (1.0 - u)) };
        4.0 * (a2 - r1) * (a0 - r0) - a1 * a1
    };
    let u0 = f(centre);
    let (mut lo, mut hi) = ((u0 - 1.0 / COARSE as f64).max(0.0), (u0 + 1.0 / COARSE as f64).min(1.0));
    for _ in 0..200 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if margin(m1) < margin(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    (lo + hi) / 2.0
}

/// Continued-fraction convergents of `x ∈ [0, 1]` with denominators up to
/// `10⁶`.
fn convergents(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return out;
    }
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut rest = x;
    for _ in 0..32 {
        let a = rest.floor();
        let (h2, k2) = (a as i64 * h1 + h0, a as i64 * k1 + k0);
        if k2 > 1_000_000 {
            break;
        }
        out.push(rat(h2, k2));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}

/// The two strict weights `λ, σ > 0` pin the kernel to zero.
pub fn injectivity_sos(params: &FamilyParams) -> Certificate {
    if params.weights_admissible() && params.h > 0 && params.k > 0 {
        Certificate::InjSOS { family: params.clone() }
    } else {
        Certificate::not_applicable("need λ > 0, σ > 0, μ >= 0, ν >= 0")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WickGrid {
    pub radius: f64,
    pub count: usize,
    pub directions: usize,
}

impl Default for WickGrid {
    fn default() -> Self {
        Self { radius: 20.0, count: 401, directions: 3600 }
    }
}

pub(crate) struct Sampled {
    pub min: f64,
    pub at: (f64, f64),
}

pub(crate) fn sample_min(w: &MultiPoly, grid: &WickGrid) -> Sampled {
    let n = grid.count.max(2);
    let step = 2.0 * grid.radius / (n - 1) as f64;
    let node = |i: usize| -grid.radius + i as f64 * step;
    // rows in parallel, reduced in fixed order
    let rows: Vec<Sampled> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = node(i);
            let mut best = Sampled { min: f64::INFINITY, at: (x, 0.0) };
            for j in 0..n {
                let xi = node(j);
                let v = w.eval_phase(x, xi).re;
                if better(v, (x, xi), &best) {
                    best = Sampled { min: v, at: (x, xi) };
                }
            }
            best
        })
        .collect();
    rows.into_iter().reduce(|a, b| if better(b.min, b.at, &a) { b } else { a }).expect("at least one row")
}

/// Smaller value wins; ties go to the point closer to the origin.
fn better(v: f64, at: (f64, f64), cur: &Sampled) -> bool {
    v < cur.min || (v == cur.min && at.0.hypot(at.1) < cur.at.0.hypot(cur.at.1))
}

pub(crate) struct WickCheck {
    pub min_sample: f64,
    pub min_leading: f64,
}

pub(crate) fn check_wick_positive(w: &MultiPoly, grid: &WickGrid) -> Result<WickCheck, Box<Certificate>> {
    let s = sample_min(w, grid);
    if s.min <= 0.0 {
        return Err(Box::new(Certificate::NotApplicable {
            reason: format!("anti-Wick symbol is not positive: sampled minimum {:.6e}", s.min),
            witness: Some(PhasePoint { x: s.at.0, xi: s.at.1, value: Some(s.min), ratio: None }),
        }));
    }
    let d = w.degree().unwrap_or(0);
    let lead = w.homogeneous_part(d);
    let mut min_leading = f64::INFINITY;
    let mut max_leading: f64 = 0.0;
    let mut flat = Vec::new();
    let dirs = grid.directions.max(1);
    let values: Vec<(f64, f64, f64)> = (0..dirs)
        .map(|t| {
            let th = 2.0 * std::f64::consts::PI * t as f64 / dirs as f64;
            let (c, sn) = (th.cos(), th.sin());
            (c, sn, lead.eval_phase(c, sn).re)
        })
        .collect();
    for &(_, _, v) in &values {
        min_leading = min_leading.min(v);
        max_leading = max_leading.max(v.abs());
    }
    let tol = 1e-12 * max_leading.max(1.0);
    if min_leading < -tol {
        let &(c, sn, v) = values.iter().min_by(|a, b| a.2.total_cmp(&b.2)).expect("non-empty");
        return Err(Box::new(Certificate::NotApplicable {
            reason: "leading part of the anti-Wick symbol takes negative values".into(),
            witness: Some(PhasePoint { x: c, xi: sn, value: Some(v), ratio: None }),
        }));
    }
    for &(c, sn, v) in &values {
        if v.abs() <= tol {
            flat.push((c, sn));
        }
    }
    // where the leading part vanishes, lower-order terms must keep W positive
    for (c, sn) in flat {
        for k in 0..=10 {
            let r = grid.radius * f64::from(1u32 << k);
            let v = w.eval_phase(r * c, r * sn).re;
            if v <= 0.0 {
                return Err(Box::new(Certificate::NotApplicable {
                    reason: "anti-Wick symbol is not positive along a degenerate direction".into(),
                    witness: Some(PhasePoint { x: r * c, xi: r * sn, value: Some(v), ratio: None }),
                }));
            }
        }
    }
    Ok(WickCheck { min_sample: s.min, min_leading })
}

/// Evidence-grade: `W[a] > 0` on a sample grid plus a directional check of
/// its leading part.
pub fn injectivity_wick(a: &MultiPoly, grid: &WickGrid) -> Certificate {
    let w = weyl_wick(a);
    if !w.has_real_coeffs() {
        return Certificate::not_applicable(format!("anti-Wick symbol {w} is not real"));
    }
    if w.is_zero() {
        return Certificate::not_applicable("anti-Wick symbol vanishes");
    }
    match check_wick_positive(&w, grid) {
        Ok(chk) => Certificate::InjWickPositive {
            wick_symbol: w,
            radius: grid.radius,
            count: grid.count,
            directions: grid.directions,
            min_sample: chk.min_sample,
            min_leading: chk.min_leading,
        },
        Err(na) => *na,
    }
}
