//! Sparse polynomials over the Gaussian rationals in the phase-space
//! variables `x, y, ξ, η`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::rational::{GaussianRational, Rational};
use crate::error::{Error, Result};

pub const NVARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Xi = 2,
    Eta = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Xi, Var::Eta];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name used in serialized documents.
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Xi => "xi",
            Var::Eta => "eta",
        }
    }

    pub fn from_name(s: &str) -> Result<Var> {
        match s {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "xi" | "ξ" => Ok(Var::Xi),
            "eta" | "η" => Ok(Var::Eta),
            _ => Err(Error::UnknownVariableName(s.to_string())),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Xi => "ξ",
            Var::Eta => "η",
        })
    }
}

/// Ordered subset of the variable universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const PHASE_1D: VarSet = VarSet(0b0101); // x, ξ
    pub const ALL: VarSet = VarSet(0b1111);

    pub fn of(vars: &[Var]) -> Self {
        VarSet(vars.iter().fold(0, |m, v| m | (1 << v.index())))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

/// Exponent vector over the full universe; ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn of(pairs: &[(Var, u32)]) -> Self {
        let mut e = [0; NVARS];
        for &(v, k) in pairs {
            e[v.index()] += k;
        }
        Monomial(e)
    }

    fn vars(&self) -> VarSet {
        VarSet((0..NVARS).filter(|&i| self.0[i] > 0).fold(0, |m, i| m | (1 << i)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    // exponents add under multiplication
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Monomial(e)
    }
}

/// Sparse polynomial. No stored coefficient is zero. Equality compares
/// terms only, so the same polynomial declared over different variable
/// sets compares equal.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(vars: VarSet) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, Monomial::default())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(GaussianRational::one(), Monomial::of(&[(v, 1)]))
    }

    pub fn monomial(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::zero(m.vars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Collects terms, summing duplicates and dropping zeros. Every
    /// variable with a positive exponent is added to `vars`.
    pub fn from_terms<I>(vars: VarSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        self.vars = self.vars.union(m.vars());
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// Same polynomial declared over `vars ∪ self.vars()`.
    pub fn with_vars(mut self, vars: VarSet) -> Self {
        self.vars = self.vars.union(vars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        Self::from_terms(self.vars, self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())))
    }

    pub fn scale(&self, c: &GaussianRational) -> MultiPoly {
        Self::from_terms(self.vars, self.terms.iter().map(|(m, a)| (*m, a * c)))
    }

    pub fn scale_rational(&self, r: &Rational) -> MultiPoly {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn conj(&self) -> MultiPoly {
        Self::from_terms(self.vars, self.terms.iter().map(|(m, c)| (*m, c.conj())))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(GaussianRational::one()).with_vars(self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `∂^order / ∂var^order`.
    pub fn diff(&self, var: Var, order: u32) -> Result<MultiPoly> {
        if !self.vars.contains(var) {
            return Err(Error::UnknownVariable(var));
        }
        Ok(self.diff_unchecked(var, order))
    }

    pub(crate) fn diff_unchecked(&self, var: Var, order: u32) -> MultiPoly {
        if order == 0 {
            return self.clone();
        }
        let i = var.index();
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e < order {
                continue;
            }
            // falling factorial e (e-1) ... (e-order+1)
            let ff: i64 = ((e - order + 1)..=e).map(i64::from).product();
            let mut nm = *m;
            nm.0[i] -= order;
            out.terms.insert(nm, c.scale(&Rational::from_integer(ff.into())));
        }
        out
    }

    pub fn substitute(&self, s: &Substitution) -> Result<MultiPoly> {
        let used = self.terms.keys().fold(VarSet::EMPTY, |a, m| a.union(m.vars()));
        for v in self.vars.union(used).iter() {
            if s.image(v).is_none() {
                return Err(Error::MissingImage(v));
            }
        }
        let out_vars = self.vars.iter().filter_map(|v| s.image(v)).fold(VarSet::EMPTY, |a, p| a.union(p.vars));
        let mut powers: [Vec<MultiPoly>; NVARS] = Default::default();
        for v in used.iter() {
            let img = s.image(v).expect("checked above");
            let max = self.degree_in(v) as usize;
            let mut pw = Vec::with_capacity(max + 1);
            pw.push(MultiPoly::constant(GaussianRational::one()));
            for k in 1..=max {
                let next = &pw[k - 1] * img;
                pw.push(next);
            }
            powers[v.index()] = pw;
        }
        let mut out = MultiPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for v in m.vars().iter() {
                term = &term * &powers[v.index()][m.exp(v) as usize];
            }
            out = &out + &term;
        }
        Ok(out.with_vars(out_vars))
    }

    /// Floating-point evaluation at `(x, y, ξ, η)`.
    pub fn eval(&self, point: [Complex64; NVARS]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_complex();
                for (i, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        v *= point[i].powu(e);
                    }
                }
                v
            })
            .sum()
    }

    /// Evaluation of a polynomial in `(x, ξ)` at a real phase-space point.
    pub fn eval_phase(&self, x: f64, xi: f64) -> Complex64 {
        let z = Complex64::zero();
        self.eval([Complex64::new(x, 0.0), z, Complex64::new(xi, 0.0), z])
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero(VarSet::EMPTY)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<GaussianRational> for MultiPoly {
    fn from(c: GaussianRational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.vars = out.vars.union(rhs.vars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.vars = out.vars.union(rhs.vars);
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.vars.union(rhs.vars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&GaussianRational::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, c) = if c.im.is_zero() && c.re < Rational::zero() { (true, -c) } else { (false, c.clone()) };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let is_one = c.is_one();
            if !is_one || m.degree() == 0 {
                write!(f, "{c}")?;
            }
            let mut first = is_one;
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Per-variable images for [`MultiPoly::substitute`].
#[derive(Clone, Debug, Default)]
pub struct Substitution {
    images: [Option<MultiPoly>; NVARS],
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn identity(vars: VarSet) -> Self {
        let mut s = Self::new();
        for v in vars.iter() {
            s = s.with(v, MultiPoly::var(v));
        }
        s
    }

    pub fn with(mut self, v: Var, image: MultiPoly) -> Self {
        self.images[v.index()] = Some(image);
        self
    }

    pub fn image(&self, v: Var) -> Option<&MultiPoly> {
        self.images[v.index()].as_ref()
    }
}
