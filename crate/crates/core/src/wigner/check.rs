//! Numeric checks of the intertwining identity and of the anti-Wick
//! representation of `(Au|u)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::functions::{eval_test_function, AnalyticTestFunction, CoherentFrame};
use super::grid::{relative_sup, Grid2D, GridFunction2D};
use super::operator::{apply_operator_1d, apply_operator_2d, PlaneOps};
use super::transform::wig_forward;
use crate::algebra::rational::rat_to_f64;
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::symbol::{weyl_wick, OperatorSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Full,
    Generators,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    pub name: String,
    pub relative_sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntertwineReport {
    pub p: f64,
    pub mode: CheckMode,
    pub residuals: Vec<Residual>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl IntertwineReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.relative_sup).fold(0.0, f64::max)
    }
}

fn residual(name: &str, lhs: &GridFunction2D, rhs: &GridFunction2D) -> Residual {
    Residual { name: name.to_string(), relative_sup: relative_sup(lhs, rhs) }
}

/// Compares `B Wig_p[u⊗v]` with `Wig_p[(Au)⊗v]` (full mode), or checks
/// the four generator relations and the two derived ones. `p` is taken
/// from the spec; `Au` is formed exactly on the analytic side.
pub fn intertwine_residual(
    spec: &OperatorSpec,
    u: &AnalyticTestFunction,
    v: &AnalyticTestFunction,
    grid: Grid2D,
    mode: CheckMode,
) -> Result<IntertwineReport> {
    let p = rat_to_f64(spec.p());
    let q = 1.0 - p;
    let w = wig_forward(u, v, p, grid)?;
    let mut warnings = Vec::new();
    let residuals = match mode {
        CheckMode::Full => {
            let lhs = apply_operator_2d(spec, &w);
            warnings.extend(lhs.warning);
            let rhs = wig_forward(&u.apply_operator(spec), v, p, grid)?;
            vec![residual("intertwining", &lhs.value, &rhs)]
        }
        CheckMode::Generators => {
            let ops = PlaneOps::for_function(&w);
            let d1w = wig_forward(&u.apply_d(), v, p, grid)?;
            let d2w = wig_forward(u, &v.apply_d(), p, grid)?;
            let m1w = wig_forward(&u.mul_t(), v, p, grid)?;
            let m2w = wig_forward(u, &v.mul_t(), p, grid)?;
            let (d1, d2, m1, m2) = (ops.d1(&w), ops.d2(&w), ops.m1(&w), ops.m2(&w));
            vec![
                residual("eq1: D1 Wig = Wig[D1 w] + Wig[D2 w]", &d1, &d1w.combine(&d2w, |a, b| a + b)),
                residual("eq2: D2 Wig = Wig[M2 w] - Wig[M1 w]", &d2, &m2w.combine(&m1w, |a, b| a - b)),
                residual("eq3: M1 Wig = q Wig[M2 w] + p Wig[M1 w]", &m1, &m2w.combine(&m1w, |a, b| a * q + b * p)),
                residual("eq4: M2 Wig = q Wig[D1 w] - p Wig[D2 w]", &m2, &d1w.combine(&d2w, |a, b| a * q - b * p)),
                residual("Wig[D1 w] = (M2 + p D1) Wig", &d1w, &m2.combine(&d1, |a, b| a + b * p)),
                residual("Wig[M1 w] = (M1 - q D2) Wig", &m1w, &m1.combine(&d2, |a, b| a - b * q)),
            ]
        }
    };
    Ok(IntertwineReport { p, mode, residuals, warnings })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WickEnergy {
    pub direct: f64,
    pub wick: f64,
    pub gap: f64,
}

/// `(Au|u)` computed directly and as `(2π)^{−1} ∬ W[a] |Vu|²`.
pub fn wick_energy_compare(a: &MultiPoly, u: &AnalyticTestFunction, grid: Grid2D) -> Result<WickEnergy> {
    let wa = weyl_wick(a);
    if !wa.has_real_coeffs() {
        return Err(Error::NotApplicable(format!("anti-Wick symbol {wa} is not real")));
    }
    let spec = OperatorSpec::from_symbol(a, Rational::from_integer(0.into()))?;
    let nodes = grid.nodes();
    let samples: Vec<Complex64> = nodes.iter().map(|&t| eval_test_function(u, t)).collect();
    let au = apply_operator_1d(&spec, &samples, grid)?.value;
    let direct = au.iter().zip(&samples).map(|(x, y)| x * y.conj()).sum::<Complex64>().re * grid.spacing();

    let vu = CoherentFrame::new(grid).analyze(u);
    let etas = grid.dual_nodes();
    let mut acc = 0.0;
    for (i, &y) in nodes.iter().enumerate() {
        for (k, &eta) in etas.iter().enumerate() {
            acc += wa.eval_phase(y, eta).re * vu.at(i, k).norm_sqr();
        }
    }
    let wick = acc * grid.spacing() * grid.dual_spacing() / (2.0 * PI);
    Ok(WickEnergy { direct, wick, gap: (direct - wick).abs() })
}
