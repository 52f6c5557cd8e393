//! Analytic Schwartz test functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{dual_transform, AxisKind, FftPair, Grid2D, GridFunction2D};
use crate::error::{Error, Result};
use crate::symbol::OperatorSpec;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn pi_quarter() -> f64 {
    PI.powf(-0.25)
}

/// `P(t)·exp(−a(t − x₀)² + ibt)` with `P` given by ascending coefficients.
/// The family is closed under multiplication by `t` and under `D = −i d/dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyGaussian {
    pub coeffs: Vec<Complex64>,
    pub a: f64,
    pub b: f64,
    pub x0: f64,
}

impl PolyGaussian {
    pub fn new(coeffs: Vec<Complex64>, a: f64, b: f64, x0: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!("width must be positive, got {a}")));
        }
        Ok(Self { coeffs, a, b, x0 })
    }

    /// `h_n(t) = p_n(t) e^{−t²/2}` with `p_n` from the normalized recurrence.
    pub fn hermite(n: u32) -> Self {
        let mut prev: Vec<Complex64> = Vec::new();
        let mut cur = vec![Complex64::new(pi_quarter(), 0.0)];
        for k in 0..n {
            let kf = f64::from(k);
            let up = (2.0 / (kf + 1.0)).sqrt();
            let down = (kf / (kf + 1.0)).sqrt();
            let mut next = vec![Complex64::new(0.0, 0.0); cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c * up;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= c * down;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        Self { coeffs: cur, a: 0.5, b: 0.0, x0: 0.0 }
    }

    fn phase_derivative(&self) -> [Complex64; 2] {
        // φ'(t) = −2a(t − x₀) + ib
        [Complex64::new(2.0 * self.a * self.x0, self.b), Complex64::new(-2.0 * self.a, 0.0)]
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let p = self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c);
        let d = t - self.x0;
        p * Complex64::new(-self.a * d * d, self.b * t).exp()
    }

    pub fn mul_t(&self) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs, ..self.clone() }
    }

    /// `D f = −i(P' + Pφ')e^φ`.
    pub fn apply_d(&self) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            out[i - 1] += c * i as f64;
        }
        let dphi = self.phase_derivative();
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] += c * dphi[0];
            out[i + 1] += c * dphi[1];
        }
        out.iter_mut().for_each(|v| *v *= -I);
        Self { coeffs: out, ..self.clone() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    /// Sum of two functions sharing the same exponential factor.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.a, self.b, self.x0) != (other.a, other.b, other.x0) {
            return Err(Error::InvalidArgument("exponential factors differ".into()));
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).copied().unwrap_or_default() + other.coeffs.get(i).copied().unwrap_or_default())
            .collect();
        Ok(Self { coeffs, ..self.clone() })
    }

    /// `Σ c_{j,k} t^j D^k f`, exactly.
    pub fn apply_operator(&self, spec: &OperatorSpec) -> Self {
        let max_k = spec.coeffs().map(|((_, k), _)| *k).max().unwrap_or(0);
        let mut derivs = vec![self.clone()];
        for _ in 0..max_k {
            let next = derivs.last().expect("non-empty").apply_d();
            derivs.push(next);
        }
        let mut acc = Self { coeffs: Vec::new(), ..self.clone() };
        for (&(j, k), c) in spec.coeffs() {
            let mut term = derivs[k as usize].clone();
            for _ in 0..j {
                term = term.mul_t();
            }
            acc = acc.add(&term.scale(c.to_complex())).expect("shared exponential");
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticTestFunction {
    /// Normalized Hermite function `h_n`.
    Hermite(u32),
    /// `exp(−a(t − x₀)² + ibt)`.
    GaussianPacket {
        a: f64,
        b: f64,
        x0: f64,
    },
    PolyGaussian(PolyGaussian),
}

impl AnalyticTestFunction {
    pub fn zero() -> Self {
        AnalyticTestFunction::PolyGaussian(PolyGaussian { coeffs: Vec::new(), a: 0.5, b: 0.0, x0: 0.0 })
    }

    pub fn to_poly_gaussian(&self) -> PolyGaussian {
        match self {
            AnalyticTestFunction::Hermite(n) => PolyGaussian::hermite(*n),
            AnalyticTestFunction::GaussianPacket { a, b, x0 } => {
                PolyGaussian { coeffs: vec![Complex64::new(1.0, 0.0)], a: *a, b: *b, x0: *x0 }
            }
            AnalyticTestFunction::PolyGaussian(p) => p.clone(),
        }
    }

    pub fn apply_operator(&self, spec: &OperatorSpec) -> Self {
        AnalyticTestFunction::PolyGaussian(self.to_poly_gaussian().apply_operator(spec))
    }

    pub fn mul_t(&self) -> Self {
        AnalyticTestFunction::PolyGaussian(self.to_poly_gaussian().mul_t())
    }

    pub fn apply_d(&self) -> Self {
        AnalyticTestFunction::PolyGaussian(self.to_poly_gaussian().apply_d())
    }

    pub fn samples(&self, nodes: &[f64]) -> Vec<Complex64> {
        nodes.iter().map(|&t| eval_test_function(self, t)).collect()
    }

    /// Parses `hermite:n`, `packet:a,b,x0` (the name alone gives `h_0`).
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognized test function {s:?}"));
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<f64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?
        };
        match (name.trim(), nums.as_slice()) {
            ("hermite", []) => Ok(AnalyticTestFunction::Hermite(0)),
            ("hermite", [n]) if *n >= 0.0 && n.fract() == 0.0 => Ok(AnalyticTestFunction::Hermite(*n as u32)),
            ("packet", [a, b, x0]) if *a > 0.0 => Ok(AnalyticTestFunction::GaussianPacket { a: *a, b: *b, x0: *x0 }),
            _ => Err(bad()),
        }
    }
}

/// Parses a pair such as `hermite:0,1` into `(h_0, h_1)`.
pub fn parse_test_pair(s: &str) -> Result<(AnalyticTestFunction, AnalyticTestFunction)> {
    let bad = || Error::InvalidArgument(format!("expected hermite:m,n, got {s:?}"));
    let (name, args) = s.split_once(':').ok_or_else(bad)?;
    if name.trim() != "hermite" {
        return Err(bad());
    }
    let (m, n) = args.split_once(',').ok_or_else(bad)?;
    let m: u32 = m.trim().parse().map_err(|_| bad())?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    Ok((AnalyticTestFunction::Hermite(m), AnalyticTestFunction::Hermite(n)))
}

/// Hermite functions use the three-term recurrence on `h_n` itself, so
/// the Gaussian factor is carried along and nothing overflows.
pub fn eval_test_function(f: &AnalyticTestFunction, t: f64) -> Complex64 {
    match f {
        AnalyticTestFunction::Hermite(n) => Complex64::new(hermite_fn(*n, t), 0.0),
        AnalyticTestFunction::GaussianPacket { a, b, x0 } => {
            let d = t - x0;
            Complex64::new(-a * d * d, b * t).exp()
        }
        AnalyticTestFunction::PolyGaussian(p) => p.eval(t),
    }
}

pub fn hermite_fn(n: u32, t: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = pi_quarter() * (-t * t / 2.0).exp();
    for k in 0..n {
        let kf = f64::from(k);
        let next = (2.0 / (kf + 1.0)).sqrt() * t * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gaussian windows `Φ_{y,η}(x) = π^{−1/4} e^{ixη} e^{−(y−x)²/2}` indexed by
/// the spatial nodes (`y`) and dual nodes (`η`) of a grid.
#[derive(Clone, Copy, Debug)]
pub struct CoherentFrame {
    pub grid: Grid2D,
}

impl CoherentFrame {
    pub fn new(grid: Grid2D) -> Self {
        Self { grid }
    }

    pub fn window(y: f64, eta: f64, x: f64) -> Complex64 {
        let d = y - x;
        Complex64::new(-d * d / 2.0, x * eta).exp() * pi_quarter()
    }

    /// Discrete `‖Φ_{y,η}‖_{L²}` on the spatial nodes.
    pub fn window_norm(&self, y: f64, eta: f64) -> f64 {
        let s: f64 = self.grid.nodes().iter().map(|&x| Self::window(y, eta, x).norm_sqr()).sum();
        (s * self.grid.spacing()).sqrt()
    }

    /// `Vu(y, η) = ∫ u(t) Φ̄_{y,η}(t) dt` on (spatial × dual) nodes.
    pub fn analyze(&self, u: &AnalyticTestFunction) -> GridFunction2D {
        let g = self.grid;
        let nodes = g.nodes();
        let samples = u.samples(&nodes);
        let pair = FftPair::new(g.len());
        let mut out = GridFunction2D::zeros(g, AxisKind::Dual);
        out.data.par_chunks_mut(g.len()).enumerate().for_each(|(i, row)| {
            let y = nodes[i];
            let mut buf: Vec<Complex64> = samples
                .iter()
                .zip(&nodes)
                .map(|(&s, &t)| s * ((-(y - t) * (y - t) / 2.0).exp() * pi_quarter()))
                .collect();
            row.copy_from_slice(&dual_transform(&pair, &mut buf, g.spacing()));
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::symbol::SpecDocument;

    #[test]
    fn closed_forms() {
        let h0 = eval_test_function(&AnalyticTestFunction::Hermite(0), 0.0);
        assert!((h0.re - pi_quarter()).abs() < 1e-15);
        let h1 = eval_test_function(&AnalyticTestFunction::Hermite(1), 1.0);
        assert!((h1.re - 2f64.sqrt() * pi_quarter() * (-0.5f64).exp()).abs() < 1e-15);
        let g = eval_test_function(&AnalyticTestFunction::GaussianPacket { a: 1.0, b: 0.0, x0: 0.0 }, 2.0);
        assert!((g.re - (-4f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn hermite_polynomial_form_matches_recurrence() {
        for n in 0..8 {
            let p = PolyGaussian::hermite(n);
            for t in [-3.0, -0.7, 0.0, 1.1, 4.0] {
                assert!((p.eval(t).re - hermite_fn(n, t)).abs() < 1e-12, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn hermite_orthonormal_on_grid() {
        let g = Grid2D::new(12.0, 256).unwrap();
        let nodes = g.nodes();
        for m in 0..6 {
            for n in 0..6 {
                let ip: f64 = nodes.iter().map(|&t| hermite_fn(m, t) * hermite_fn(n, t)).sum::<f64>() * g.spacing();
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((ip - want).abs() < 1e-10);
            }
            assert!(hermite_fn(m, 12.0).abs() < 1e-20 && hermite_fn(m, -12.0).abs() < 1e-20);
        }
    }

    #[test]
    fn derivative_and_multiplication() {
        // D h_0 = i t h_0, and t h_0 = h_1/√2
        let d = PolyGaussian::hermite(0).apply_d();
        let t = 0.8;
        assert!((d.eval(t) - I * t * hermite_fn(0, t)).norm() < 1e-15);
        let m = PolyGaussian::hermite(0).mul_t();
        assert!((m.eval(t).re - hermite_fn(1, t) / 2f64.sqrt()).abs() < 1e-15);
        // packet with a frequency: D e^{ibt - t²} = (b + 2it) e^{...}
        let p = PolyGaussian::new(vec![Complex64::new(1.0, 0.0)], 1.0, 3.0, 0.0).unwrap();
        let v = p.apply_d().eval(t);
        assert!((v - Complex64::new(3.0, 2.0 * t) * p.eval(t)).norm() < 1e-14);
    }

    #[test]
    fn operator_on_hermite() {
        // 4x² + D²/4 on h_0 gives (1/4 + 15x²/4) h_0
        let doc: SpecDocument = serde_json::from_str(
            r#"{"p":"1/2","coeffs":[{"j":2,"k":0,"re":"4","im":"0"},{"j":0,"k":2,"re":"1/4","im":"0"}]}"#,
        )
        .unwrap();
        let (spec, _) = doc.into_spec().unwrap();
        assert_eq!(*spec.p(), rat(1, 2));
        let out = PolyGaussian::hermite(0).apply_operator(&spec);
        for t in [-2.0, 0.0, 0.5, 3.0] {
            let want = (0.25 + 3.75 * t * t) * hermite_fn(0, t);
            assert!((out.eval(t).re - want).abs() < 1e-14);
        }
    }

    #[test]
    fn frame_windows_are_normalized() {
        let f = CoherentFrame::new(Grid2D::new(12.0, 256).unwrap());
        for (y, eta) in [(0.0, 0.0), (2.5, -3.0), (-4.0, 7.5)] {
            assert!((f.window_norm(y, eta) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(AnalyticTestFunction::parse("hermite:3").unwrap(), AnalyticTestFunction::Hermite(3));
        assert!(AnalyticTestFunction::parse("packet:0,1,2").is_err());
        let (u, v) = parse_test_pair("hermite:0,1").unwrap();
        assert_eq!((u, v), (AnalyticTestFunction::Hermite(0), AnalyticTestFunction::Hermite(1)));
        assert!(parse_test_pair("hermite:0").is_err());
    }
}
