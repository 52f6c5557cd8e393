use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::serial::rational_str;
use crate::algebra::{format_rational, parse_rational, GaussianRational, Monomial, MultiPoly, Rational, Var, VarSet};
use crate::error::{Error, Result};

/// Coefficient table `c_{j,k}` together with the shift parameter `p`.
///
/// One table defines two operators: the model operator on the line,
/// `A = Σ c_{j,k} x^j D^k` (left symbol `Σ c_{j,k} x^j ξ^k`), and the planar
/// operator `B = Σ c_{j,k} (x − qD_y)^j (y + pD_x)^k` with `q = 1 − p`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    coeffs: BTreeMap<(u32, u32), GaussianRational>,
    p: Rational,
}

impl OperatorSpec {
    /// Zero coefficients are dropped; an operator with no nonzero
    /// coefficient is rejected.
    pub fn new<I>(coeffs: I, p: Rational) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), GaussianRational)>,
    {
        let mut table = BTreeMap::new();
        for (jk, c) in coeffs {
            let slot: &mut GaussianRational = table.entry(jk).or_default();
            *slot += &c;
        }
        table.retain(|_, c: &mut GaussianRational| !c.is_zero());
        if table.is_empty() {
            return Err(Error::InvalidArgument("empty operator".into()));
        }
        Ok(Self { coeffs: table, p })
    }

    /// Reads the coefficient table off a symbol in `(x, ξ)`.
    pub fn from_symbol(a: &MultiPoly, p: Rational) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (m, c) in a.terms() {
            if m.exp(Var::Y) > 0 || m.exp(Var::Eta) > 0 {
                return Err(Error::InvalidArgument(format!("symbol {a} depends on y or η")));
            }
            coeffs.push(((m.exp(Var::X), m.exp(Var::Xi)), c.clone()));
        }
        Self::new(coeffs, p)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> Rational {
        Rational::one() - &self.p
    }

    /// Largest `j + k` with a nonzero coefficient.
    pub fn order(&self) -> u32 {
        self.coeffs.keys().map(|(j, k)| j + k).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(u32, u32), &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, j: u32, k: u32) -> GaussianRational {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn with_p(&self, p: Rational) -> Self {
        Self { coeffs: self.coeffs.clone(), p }
    }

    /// Left symbol `a(x, ξ) = Σ c_{j,k} x^j ξ^k` of the model operator `A`.
    pub fn symbol_a(&self) -> MultiPoly {
        MultiPoly::from_terms(
            VarSet::PHASE_1D,
            self.coeffs.iter().map(|(&(j, k), c)| (Monomial::of(&[(Var::X, j), (Var::Xi, k)]), c.clone())),
        )
    }
}

/// Nonsingular 2×2 rational matrix with its exact inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChange {
    t: [[Rational; 2]; 2],
    inv: [[Rational; 2]; 2],
}

impl LinearChange {
    pub fn new(t: [[Rational; 2]; 2]) -> Result<Self> {
        let det = &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0];
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv = [[&t[1][1] / &det, -(&t[0][1] / &det)], [-(&t[1][0] / &det), &t[0][0] / &det]];
        Ok(Self { t, inv })
    }

    pub fn diag(a: Rational, b: Rational) -> Result<Self> {
        Self::new([[a, Rational::zero()], [Rational::zero(), b]])
    }

    pub fn identity() -> Self {
        Self::diag(Rational::one(), Rational::one()).expect("identity is nonsingular")
    }

    pub fn matrix(&self) -> &[[Rational; 2]; 2] {
        &self.t
    }

    pub fn inverse_matrix(&self) -> &[[Rational; 2]; 2] {
        &self.inv
    }

    pub fn transpose(&self) -> [[Rational; 2]; 2] {
        [[self.t[0][0].clone(), self.t[1][0].clone()], [self.t[0][1].clone(), self.t[1][1].clone()]]
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { t: self.inv.clone(), inv: self.t.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CoeffDoc {
    j: u32,
    k: u32,
    re: String,
    #[serde(default = "zero_str")]
    im: String,
}

fn zero_str() -> String {
    "0".into()
}

/// On-disk operator file:
/// `{"p":"1/2","coeffs":[{"j":2,"k":0,"re":"4","im":"0"}],"T":[["1/4","0"],["0","1"]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecDocument {
    #[serde(with = "rational_str")]
    p: Rational,
    coeffs: Vec<CoeffDoc>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    t: Option<[[String; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
}

impl SpecDocument {
    pub fn from_spec(spec: &OperatorSpec, t: Option<&LinearChange>) -> Self {
        Self {
            p: spec.p.clone(),
            coeffs: spec
                .coeffs
                .iter()
                .map(|(&(j, k), c)| CoeffDoc { j, k, re: format_rational(&c.re), im: format_rational(&c.im) })
                .collect(),
            t: t.map(|lc| {
                let m = lc.matrix();
                [
                    [format_rational(&m[0][0]), format_rational(&m[0][1])],
                    [format_rational(&m[1][0]), format_rational(&m[1][1])],
                ]
            }),
            m: None,
        }
    }

    pub fn into_spec(self) -> Result<(OperatorSpec, Option<LinearChange>)> {
        let mut seen = BTreeMap::new();
        for c in &self.coeffs {
            let g = GaussianRational::parse(&c.re, &c.im)?;
            if seen.insert((c.j, c.k), g).is_some() {
                return Err(Error::Malformed(format!("duplicate coefficient for (j,k)=({},{})", c.j, c.k)));
            }
        }
        let spec = OperatorSpec::new(seen, self.p)?;
        if let Some(m) = self.m {
            if m != spec.order() {
                return Err(Error::Malformed(format!("declared order m={m} but the largest j+k is {}", spec.order())));
            }
        }
        let t = match self.t {
            Some(rows) => {
                let parse = |s: &String| parse_rational(s);
                Some(LinearChange::new([
                    [parse(&rows[0][0])?, parse(&rows[0][1])?],
                    [parse(&rows[1][0])?, parse(&rows[1][1])?],
                ])?)
            }
            None => None,
        };
        Ok((spec, t))
    }
}
