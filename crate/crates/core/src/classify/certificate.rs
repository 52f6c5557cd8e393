use serde::{Deserialize, Serialize};

use super::family::{FamilyParams, NewtonPolygon};
use crate::algebra::serial::rational_str;
use crate::algebra::{GaussianRational, MultiPoly, Rational};

/// A phase-space point `(x, ξ)` with optional diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: f64,
    pub xi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    /// Gradient-to-value ratio; `None` where the symbol vanishes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

/// `(radius, max_ratio)` pairs; an infinite ratio is written as `null`.
pub(crate) mod trend_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(t: &[(f64, f64)], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(f64, Option<f64>)> = t.iter().map(|&(r, q)| (r, q.is_finite().then_some(q))).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(f64, f64)>, D::Error> {
        let v = Vec::<(f64, Option<f64>)>::deserialize(d)?;
        Ok(v.into_iter().map(|(r, q)| (r, q.unwrap_or(f64::INFINITY))).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Operator,
    Adjoint,
}

/// Real coefficients of
/// `a₂x² + a₁x + a₀ − ib₁ + 2(b₁x + b₀)ξ + c₀ξ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    #[serde(with = "rational_str")]
    pub a2: Rational,
    #[serde(with = "rational_str")]
    pub a1: Rational,
    #[serde(with = "rational_str")]
    pub a0: Rational,
    #[serde(with = "rational_str")]
    pub b1: Rational,
    #[serde(with = "rational_str")]
    pub b0: Rational,
    #[serde(with = "rational_str")]
    pub c0: Rational,
}

/// Machine-checkable evidence for one hypothesis of the reduction.
/// Every variant can be re-checked against a symbol with
/// [`super::verify_certificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    /// Leading form `a₂x² + 2b₁xξ + c₀ξ²` is positive-definite.
    HypoQuadraticForm {
        #[serde(with = "rational_str")]
        a2: Rational,
        #[serde(with = "rational_str")]
        b1: Rational,
        #[serde(with = "rational_str")]
        c0: Rational,
        #[serde(with = "rational_str")]
        det: Rational,
    },
    HypoNewtonPolygon {
        family: FamilyParams,
        polygon: NewtonPolygon,
    },
    /// `a = scale·(ξ + αx^m)` with `Im α ≠ 0`.
    HypoFirstOrder {
        alpha: GaussianRational,
        m: u32,
        scale: GaussianRational,
    },
    /// Sampling found no counter-evidence. Not a proof.
    HypoUnfalsified {
        radii: Vec<f64>,
        samples_per_circle: usize,
        #[serde(with = "trend_serde")]
        trend: Vec<(f64, f64)>,
    },
    InjQuadraticEstimate {
        coeffs: QuadraticCoeffs,
        #[serde(with = "rational_str")]
        s1_sq: Rational,
        #[serde(with = "rational_str")]
        s0_sq: Rational,
        #[serde(with = "rational_str")]
        r1_sq: Rational,
        #[serde(with = "rational_str")]
        r0_sq: Rational,
        /// `4(a₂−r₁²)(a₀−r₀²) − a₁²`
        #[serde(with = "rational_str")]
        margin: Rational,
        /// `(Au|u) ≥ lower_bound·‖u‖²`
        #[serde(with = "rational_str")]
        lower_bound: Rational,
        /// Margin is zero; injectivity then rests on the quadratic
        /// `(a₂−r₁²)x² + a₁x + (a₀−r₀²)` having a single zero.
        relaxed: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
    /// `(Au|u) = λ‖M^h u‖² + μ‖D^n M^m u‖² + ν‖M^m D^n u‖² + σ‖D^k u‖²`.
    InjSOS {
        family: FamilyParams,
    },
    /// Sampled positivity of the anti-Wick symbol. Evidence only.
    InjWickPositive {
        wick_symbol: MultiPoly,
        radius: f64,
        count: usize,
        directions: usize,
        min_sample: f64,
        min_leading: f64,
    },
    /// Every classical solution of `(D + αx^m)u = 0` grows, so the
    /// kernel in `S'` is trivial.
    InjKernelEscape {
        alpha: GaussianRational,
        m: u32,
        side: Side,
        /// `u = exp(exponent)` solves the equation.
        exponent: MultiPoly,
    },
    /// `exp(exponent)` is a Schwartz solution of `(D + αx^m)u = 0`.
    NotInjectiveWitness {
        alpha: GaussianRational,
        m: u32,
        side: Side,
        exponent: MultiPoly,
        kernel: String,
    },
    NotApplicable {
        reason: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<PhasePoint>,
    },
}

impl Certificate {
    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Certificate::NotApplicable { reason: reason.into(), witness: None }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::HypoQuadraticForm { .. } => "HypoQuadraticForm",
            Certificate::HypoNewtonPolygon { .. } => "HypoNewtonPolygon",
            Certificate::HypoFirstOrder { .. } => "HypoFirstOrder",
            Certificate::HypoUnfalsified { .. } => "HypoUnfalsified",
            Certificate::InjQuadraticEstimate { .. } => "InjQuadraticEstimate",
            Certificate::InjSOS { .. } => "InjSOS",
            Certificate::InjWickPositive { .. } => "InjWickPositive",
            Certificate::InjKernelEscape { .. } => "InjKernelEscape",
            Certificate::NotInjectiveWitness { .. } => "NotInjectiveWitness",
            Certificate::NotApplicable { .. } => "NotApplicable",
        }
    }

    pub fn is_hypo(&self) -> bool {
        matches!(
            self,
            Certificate::HypoQuadraticForm { .. }
                | Certificate::HypoNewtonPolygon { .. }
                | Certificate::HypoFirstOrder { .. }
                | Certificate::HypoUnfalsified { .. }
        )
    }

    /// Claims injectivity of `A` itself (adjoint-side analyses excluded).
    pub fn is_injective(&self) -> bool {
        match self {
            Certificate::InjQuadraticEstimate { .. }
            | Certificate::InjSOS { .. }
            | Certificate::InjWickPositive { .. } => true,
            Certificate::InjKernelEscape { side, .. } => *side == Side::Operator,
            _ => false,
        }
    }

    pub fn is_not_injective(&self) -> bool {
        matches!(self, Certificate::NotInjectiveWitness { side: Side::Operator, .. })
    }

    /// Re-checkable with exact arithmetic only.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Certificate::HypoUnfalsified { .. } | Certificate::InjWickPositive { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Certificate::NotApplicable { .. })
    }
}
