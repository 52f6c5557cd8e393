//! The quasi-homogeneous family
//! `A = λx^{2h} + μ x^m D^{2n} x^m + ν D^n x^{2m} D^n + σ D^{2k}`
//! and its Newton polygon.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::serial::rational_str;
use crate::algebra::{GaussianRational, Monomial, MultiPoly, Rational, Var, VarSet};
use crate::symbol::symbol_compose;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(with = "rational_str")]
    pub lambda: Rational,
    #[serde(with = "rational_str")]
    pub mu: Rational,
    #[serde(with = "rational_str")]
    pub nu: Rational,
    #[serde(with = "rational_str")]
    pub sigma: Rational,
    pub h: u32,
    pub k: u32,
    pub m: u32,
    pub n: u32,
}

impl FamilyParams {
    pub fn has_mixed(&self) -> bool {
        !(&self.mu + &self.nu).is_zero()
    }

    /// `m < h`, `n < k`, `nh + mk ≥ hk`.
    pub fn polygon_conditions(&self) -> bool {
        let (h, k, m, n) = (self.h as u64, self.k as u64, self.m as u64, self.n as u64);
        m < h && n < k && n * h + m * k >= h * k
    }

    pub fn weights_admissible(&self) -> bool {
        self.lambda.is_positive() && self.sigma.is_positive() && !self.mu.is_negative() && !self.nu.is_negative()
    }

    pub fn exponents_positive(&self) -> bool {
        self.h > 0 && self.k > 0 && self.m > 0 && self.n > 0
    }
}

fn x_pow(e: u32) -> MultiPoly {
    MultiPoly::monomial(GaussianRational::one(), Monomial::of(&[(Var::X, e)]))
}

fn xi_pow(e: u32) -> MultiPoly {
    MultiPoly::monomial(GaussianRational::one(), Monomial::of(&[(Var::Xi, e)]))
}

/// Left symbol of `x^m D^{2n} x^m`.
pub fn outer_x_symbol(m: u32, n: u32) -> MultiPoly {
    symbol_compose(&x_pow(m), &symbol_compose(&xi_pow(2 * n), &x_pow(m)))
}

/// Left symbol of `D^n x^{2m} D^n`.
pub fn outer_d_symbol(m: u32, n: u32) -> MultiPoly {
    symbol_compose(&xi_pow(n), &symbol_compose(&x_pow(2 * m), &xi_pow(n)))
}

pub fn family_symbol(f: &FamilyParams) -> MultiPoly {
    let g = |r: &Rational| GaussianRational::real(r.clone());
    let mut a = &x_pow(2 * f.h).scale(&g(&f.lambda)) + &xi_pow(2 * f.k).scale(&g(&f.sigma));
    if !f.mu.is_zero() {
        a = &a + &outer_x_symbol(f.m, f.n).scale(&g(&f.mu));
    }
    if !f.nu.is_zero() {
        a = &a + &outer_d_symbol(f.m, f.n).scale(&g(&f.nu));
    }
    a.with_vars(VarSet::PHASE_1D)
}

fn real_coeff(a: &MultiPoly, m: &Monomial) -> Option<Rational> {
    let c = a.coeff(m);
    c.is_real().then_some(c.re)
}

/// Reads `λ, μ, ν, σ, h, k, m, n` off a symbol in `(x, ξ)`, if it belongs
/// to the family. Signs of the weights are not checked here.
pub fn recognize_family(a: &MultiPoly) -> Option<FamilyParams> {
    if a.terms().any(|(m, _)| m.exp(Var::Y) > 0 || m.exp(Var::Eta) > 0) {
        return None;
    }
    let top_x = a.terms().filter(|(m, _)| m.exp(Var::Xi) == 0).map(|(m, _)| m.exp(Var::X)).max()?;
    let top_xi = a.terms().filter(|(m, _)| m.exp(Var::X) == 0).map(|(m, _)| m.exp(Var::Xi)).max()?;
    if top_x == 0 || top_xi == 0 || top_x % 2 == 1 || top_xi % 2 == 1 {
        return None;
    }
    let lambda = real_coeff(a, &Monomial::of(&[(Var::X, top_x)]))?;
    let sigma = real_coeff(a, &Monomial::of(&[(Var::Xi, top_xi)]))?;
    let (h, k) = (top_x / 2, top_xi / 2);
    let base = FamilyParams { lambda, mu: Rational::zero(), nu: Rational::zero(), sigma, h, k, m: 1, n: 1 };
    let rest = a - &family_symbol(&base);
    if rest.is_zero() {
        return Some(base);
    }
    let (lead, total) = rest.terms().next_back().map(|(m, c)| (*m, c.clone()))?;
    let (ex, exi) = (lead.exp(Var::X), lead.exp(Var::Xi));
    if ex == 0 || exi == 0 || ex % 2 == 1 || exi % 2 == 1 || !total.is_real() {
        return None;
    }
    let (m, n) = (ex / 2, exi / 2);
    let s1 = outer_x_symbol(m, n);
    let s2 = outer_d_symbol(m, n);
    let diff = &s1 - &s2;
    let t = total.re;
    let mu = match diff.terms().next_back() {
        None => &t / Rational::from_integer(2.into()),
        Some((mono, d)) => {
            let r = rest.coeff(mono);
            let s2c = s2.coeff(mono);
            let mu = (&r - &s2c.scale(&t)) * d.inv().ok()?;
            if !mu.is_real() {
                return None;
            }
            mu.re
        }
    };
    let nu = &t - &mu;
    let fam = FamilyParams { mu, nu, m, n, ..base };
    (family_symbol(&fam) == *a).then_some(fam)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    /// Counter-clockwise from `(0, 0)`.
    pub vertices: Vec<(u32, u32)>,
    /// Both axes carry a vertex other than the origin and every other
    /// vertex has strictly positive coordinates.
    pub complete: bool,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl NewtonPolygon {
    /// Convex hull of the given exponents together with the origin.
    pub fn from_points(points: &[(u32, u32)]) -> Self {
        let mut pts: Vec<(i64, i64)> =
            points.iter().map(|&(a, b)| (a as i64, b as i64)).chain(std::iter::once((0, 0))).collect();
        pts.sort_unstable();
        pts.dedup();
        // Andrew's monotone chain; collinear points are dropped.
        let mut lower: Vec<(i64, i64)> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<(i64, i64)> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        let vertices: Vec<(u32, u32)> = lower.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        let on_x = vertices.iter().any(|&(a, b)| a > 0 && b == 0);
        let on_xi = vertices.iter().any(|&(a, b)| a == 0 && b > 0);
        let interior_ok = vertices.iter().all(|&(a, b)| (a == 0 || b == 0) || (a > 0 && b > 0));
        NewtonPolygon { vertices, complete: on_x && on_xi && interior_ok }
    }

    pub fn for_family(f: &FamilyParams) -> Self {
        let mut pts = vec![(2 * f.h, 0), (0, 2 * f.k)];
        if f.has_mixed() {
            pts.push((2 * f.m, 2 * f.n));
        }
        Self::from_points(&pts)
    }
}
