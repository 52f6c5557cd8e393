//! Left-symbol calculus for polynomial operators on the plane.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::spec::{LinearChange, OperatorSpec};
use crate::algebra::{GaussianRational, Monomial, MultiPoly, Rational, Substitution, Var, VarSet};

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(−i)^n`.
fn minus_i_pow(n: u32) -> GaussianRational {
    GaussianRational::new(Rational::zero(), -Rational::one()).pow(n)
}

/// Left symbol of `P ∘ Q` (Q applied first):
/// `Σ_β (−i)^{|β|}/β! ∂_{ξ,η}^β p · ∂_{x,y}^β q`.
pub fn symbol_compose(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let vars = p.vars().union(q.vars());
    let mut out = MultiPoly::zero(vars);
    let max1 = p.degree_in(Var::Xi).min(q.degree_in(Var::X));
    let max2 = p.degree_in(Var::Eta).min(q.degree_in(Var::Y));
    for b1 in 0..=max1 {
        let dp1 = p.diff_unchecked(Var::Xi, b1);
        let dq1 = q.diff_unchecked(Var::X, b1);
        for b2 in 0..=max2 {
            let dp = dp1.diff_unchecked(Var::Eta, b2);
            let dq = dq1.diff_unchecked(Var::Y, b2);
            if dp.is_zero() || dq.is_zero() {
                continue;
            }
            let w = minus_i_pow(b1 + b2).scale(&Rational::new(BigInt::one(), factorial(b1) * factorial(b2)));
            out = &out + &(&dp * &dq).scale(&w);
        }
    }
    out.with_vars(vars)
}

/// `x − qη`, the symbol of `x − qD_y`.
pub fn factor_x(q: &Rational) -> MultiPoly {
    &MultiPoly::var(Var::X) - &MultiPoly::var(Var::Eta).scale_rational(q)
}

/// `y + pξ`, the symbol of `y + pD_x`.
pub fn factor_y(p: &Rational) -> MultiPoly {
    &MultiPoly::var(Var::Y) + &MultiPoly::var(Var::Xi).scale_rational(p)
}

fn compose_powers(f: &MultiPoly, n: u32) -> Vec<MultiPoly> {
    let mut out = vec![MultiPoly::constant(GaussianRational::one()).with_vars(VarSet::ALL)];
    for i in 1..=n as usize {
        let next = symbol_compose(f, &out[i - 1]);
        out.push(next);
    }
    out
}

/// Symbol of `B = Σ c_{j,k} (x − qD_y)^j (y + pD_x)^k`, built by composing
/// first-order factors with `(y + pD_x)^k` acting first.
pub fn build_b_symbol(spec: &OperatorSpec) -> MultiPoly {
    let q = spec.q();
    let (mut jmax, mut kmax) = (0, 0);
    for (&(j, k), _) in spec.coeffs() {
        jmax = jmax.max(j);
        kmax = kmax.max(k);
    }
    let xs = compose_powers(&factor_x(&q), jmax);
    let ys = compose_powers(&factor_y(spec.p()), kmax);
    let mut b = MultiPoly::zero(VarSet::ALL);
    for (&(j, k), c) in spec.coeffs() {
        let term = symbol_compose(&xs[j as usize], &ys[k as usize]);
        b = &b + &term.scale(c);
    }
    b.with_vars(VarSet::ALL)
}

/// `ã(x, ξ) = Σ c_{j,k} Σ_{n ≤ min(j,k)} (iq)^n n! C(j,n) C(k,n) x^{j−n} ξ^{k−n}`.
///
/// The sum over `n` stops at `min(j, k)`; larger `n` carry a zero binomial.
pub fn a_tilde(spec: &OperatorSpec) -> MultiPoly {
    let iq = GaussianRational::new(Rational::zero(), spec.q());
    let mut terms = Vec::new();
    for (&(j, k), c) in spec.coeffs() {
        for n in 0..=j.min(k) {
            let w = factorial(n) * binomial(j, n) * binomial(k, n);
            let coeff = (c * &iq.pow(n)).scale(&Rational::from_integer(w));
            terms.push((Monomial::of(&[(Var::X, j - n), (Var::Xi, k - n)]), coeff));
        }
    }
    MultiPoly::from_terms(VarSet::PHASE_1D, terms)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Degeneracy {
    pub holds: bool,
    /// `b(x+qη, y−pξ; ξ, η)`, with `x, y` standing for the base point.
    pub restricted: MultiPoly,
    /// `ã(x, y)`, i.e. `ã` with `ξ` renamed to `y`.
    pub expected: MultiPoly,
    pub residual: MultiPoly,
}

/// Restricts `b` to the planes `(x₀ + qη, y₀ − pξ; ξ, η)` and compares the
/// result with `ã(x₀, y₀)`. The base point is carried by the variables
/// `x, y` of the output.
pub fn verify_degeneracy(spec: &OperatorSpec) -> Degeneracy {
    let b = build_b_symbol(spec);
    let q = spec.q();
    let shift = Substitution::identity(VarSet::ALL)
        .with(Var::X, &MultiPoly::var(Var::X) + &MultiPoly::var(Var::Eta).scale_rational(&q))
        .with(Var::Y, &MultiPoly::var(Var::Y) - &MultiPoly::var(Var::Xi).scale_rational(spec.p()));
    let restricted = b.substitute(&shift).expect("identity covers every variable");
    let rename = Substitution::new().with(Var::X, MultiPoly::var(Var::X)).with(Var::Xi, MultiPoly::var(Var::Y));
    let expected = a_tilde(spec).substitute(&rename).expect("ã only involves x and ξ");
    let residual = &restricted - &expected;
    Degeneracy { holds: residual.is_zero(), restricted, expected, residual }
}

/// `sym(T'z, T⁻¹ζ)` with `z = (x, y)` and `ζ = (ξ, η)`.
pub fn t_conjugate(sym: &MultiPoly, t: &LinearChange) -> MultiPoly {
    let tt = t.transpose();
    let ti = t.inverse_matrix();
    let lin = |a: &Rational, u: Var, b: &Rational, v: Var| {
        &MultiPoly::var(u).scale_rational(a) + &MultiPoly::var(v).scale_rational(b)
    };
    let s = Substitution::new()
        .with(Var::X, lin(&tt[0][0], Var::X, &tt[0][1], Var::Y))
        .with(Var::Y, lin(&tt[1][0], Var::X, &tt[1][1], Var::Y))
        .with(Var::Xi, lin(&ti[0][0], Var::Xi, &ti[0][1], Var::Eta))
        .with(Var::Eta, lin(&ti[1][0], Var::Xi, &ti[1][1], Var::Eta));
    sym.clone().with_vars(VarSet::ALL).substitute(&s).expect("all four images supplied").with_vars(VarSet::ALL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn spec(c: &[((u32, u32), &str)], pp: Rational) -> OperatorSpec {
        OperatorSpec::new(
            c.iter().map(|(jk, s)| {
                let g = p(s);
                (*jk, g.coeff(&Monomial::default()))
            }),
            pp,
        )
        .unwrap()
    }

    #[test]
    fn compose_derivative_after_multiplication() {
        assert_eq!(symbol_compose(&p("xi"), &p("x")), p("x*xi - i"));
        assert_eq!(symbol_compose(&p("x"), &p("xi")), p("x*xi"));
    }

    #[test]
    fn compose_twisted_factors() {
        let q = rat(1, 3);
        let pp = rat(2, 3);
        let lhs = symbol_compose(&factor_x(&q), &factor_y(&pp));
        let rhs = &(&factor_x(&q) * &factor_y(&pp)) + &MultiPoly::constant(GaussianRational::new(rat(0, 1), q.clone()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn b_symbol_examples() {
        let any_p = rat(-3, 7);
        let single = spec(&[((1, 0), "1")], any_p.clone());
        assert_eq!(build_b_symbol(&single), factor_x(&single.q()));

        let eq44 = spec(&[((2, 0), "4"), ((0, 2), "1/4")], rat(1, 2));
        assert_eq!(build_b_symbol(&eq44), p("4*(x - eta/2)^2 + 1/4*(y + xi/2)^2"));

        let mixed = spec(&[((1, 1), "1")], rat(1, 2));
        assert_eq!(build_b_symbol(&mixed), p("(x - eta/2)*(y + xi/2) + i/2"));
    }

    #[test]
    fn a_tilde_examples() {
        let eq44 = spec(&[((2, 0), "4"), ((0, 2), "1/4")], rat(1, 2));
        assert_eq!(a_tilde(&eq44), p("4*x^2 + 1/4*xi^2"));
        let mixed = spec(&[((1, 1), "1")], rat(5, 3));
        assert_eq!(a_tilde(&mixed), p("x*xi - 2/3*i"));
        assert_eq!(a_tilde(&spec(&[((0, 0), "5")], rat(0, 1))), p("5"));
    }

    #[test]
    fn degeneracy_examples() {
        let eq44 = spec(&[((2, 0), "4"), ((0, 2), "1/4")], rat(1, 2));
        let d = verify_degeneracy(&eq44);
        assert!(d.holds);
        assert_eq!(d.restricted, p("4*x^2 + 1/4*y^2"));

        let d = verify_degeneracy(&spec(&[((1, 1), "1")], rat(1, 2)));
        assert!(d.holds);
        assert_eq!(d.restricted, p("x*y + i/2"));

        let d = verify_degeneracy(&spec(&[((0, 0), "7")], rat(9, 4)));
        assert!(d.holds);
        assert_eq!(d.restricted, p("7"));
    }

    #[test]
    fn twisted_laplacian_by_conjugation() {
        let b = p("4*(x - eta/2)^2 + 1/4*(y + xi/2)^2");
        let t = LinearChange::diag(rat(1, 4), rat(1, 1)).unwrap();
        assert_eq!(t_conjugate(&b, &t), p("(eta - x/2)^2 + (xi + y/2)^2"));
        assert_eq!(t_conjugate(&b, &LinearChange::identity()), b);
    }

    #[test]
    fn quasi_homogeneous_conjugation() {
        // rho = 2, tau = 1, h = k = 1: lambda = 1, sigma = 1, p = 2
        let s = spec(&[((2, 0), "1"), ((0, 2), "1")], rat(2, 1));
        let t = LinearChange::diag(rat(2, 1), rat(1, 1)).unwrap();
        assert_eq!(t_conjugate(&build_b_symbol(&s), &t), p("(eta + 2*x)^2 + (xi + y)^2"));
    }

    #[test]
    fn conjugation_inverts() {
        let b = p("x^2*eta - 3*i*y*xi + eta^3 - 1/2");
        let t = LinearChange::new([[rat(1, 2), rat(3, 1)], [rat(-1, 1), rat(2, 5)]]).unwrap();
        assert_eq!(t_conjugate(&t_conjugate(&b, &t), &t.inverse()), b);
    }
}
