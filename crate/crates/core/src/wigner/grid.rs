use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform grid `x_j = −L + j·2L/N` on both axes, with dual nodes
/// `y_k = kπ/L`, `k = −N/2..N/2−1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    l: f64,
    n: usize,
}

impl Grid2D {
    pub fn new(l: f64, n: usize) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidArgument(format!("half-width must be positive, got {l}")));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("N must be a power of two >= 2, got {n}")));
        }
        Ok(Self { l, n })
    }

    pub fn half_width(&self) -> f64 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    pub fn dual_spacing(&self) -> f64 {
        PI / self.l
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.l + j as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.node(j)).collect()
    }

    /// Signed frequency index of storage position `k`.
    pub fn dual_index(&self, k: usize) -> i64 {
        k as i64 - (self.n / 2) as i64
    }

    pub fn dual_node(&self, k: usize) -> f64 {
        self.dual_index(k) as f64 * self.dual_spacing()
    }

    pub fn dual_nodes(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.dual_node(k)).collect()
    }

    pub fn axis(&self, kind: AxisKind) -> Axis {
        match kind {
            AxisKind::Spatial => Axis::new(self.nodes(), self.spacing()),
            AxisKind::Dual => Axis::new(self.dual_nodes(), self.dual_spacing()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisKind {
    Spatial,
    Dual,
}

/// Coordinates of one axis and the wavenumbers of its periodic extension
/// in FFT order. The Nyquist wavenumber is zeroed.
#[derive(Clone, Debug)]
pub struct Axis {
    pub coords: Vec<f64>,
    pub spacing: f64,
    pub wavenumbers: Vec<f64>,
}

impl Axis {
    pub fn new(coords: Vec<f64>, spacing: f64) -> Self {
        let n = coords.len();
        let unit = 2.0 * PI / (n as f64 * spacing);
        let wavenumbers = (0..n)
            .map(|m| {
                if 2 * m == n {
                    0.0
                } else if 2 * m < n {
                    m as f64 * unit
                } else {
                    (m as f64 - n as f64) * unit
                }
            })
            .collect();
        Self { coords, spacing, wavenumbers }
    }
}

/// Forward/inverse FFT pair of one length.
#[derive(Clone)]
pub(crate) struct FftPair {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self { n, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) }
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.fwd.process(buf);
    }

    /// Unnormalized inverse.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.inv.process(buf);
    }

    /// `buf ← D^power buf` with `D = −i d/dt`, i.e. multiplier `κ^power`.
    pub fn apply_d(&self, buf: &mut [Complex64], wavenumbers: &[f64], power: u32) {
        if power == 0 {
            return;
        }
        self.forward(buf);
        let norm = 1.0 / self.n as f64;
        for (v, &k) in buf.iter_mut().zip(wavenumbers) {
            *v *= k.powi(power as i32) * norm;
        }
        self.inverse(buf);
    }
}

/// Quadrature of `∫ g(t) e^{−itη} dt` from samples on the spatial nodes
/// to all dual nodes (storage order). With `t_j = −L + jΔ` and
/// `η_k = kπ/L` the kernel is `(−1)^k e^{−2πijk/N}`.
pub(crate) fn dual_transform(pair: &FftPair, g: &mut [Complex64], spacing: f64) -> Vec<Complex64> {
    let n = g.len();
    pair.forward(g);
    (0..n)
        .map(|s| {
            let k = s as i64 - (n / 2) as i64;
            let sign = if k.rem_euclid(2) == 0 { spacing } else { -spacing };
            g[k.rem_euclid(n as i64) as usize] * sign
        })
        .collect()
}

/// Exact inverse of [`dual_transform`].
pub(crate) fn inverse_dual_transform(pair: &FftPair, values: &[Complex64], spacing: f64) -> Vec<Complex64> {
    let n = values.len();
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (s, &v) in values.iter().enumerate() {
        let k = s as i64 - (n / 2) as i64;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        buf[k.rem_euclid(n as i64) as usize] = v * sign;
    }
    pair.inverse(&mut buf);
    let norm = 1.0 / (n as f64 * spacing);
    buf.iter_mut().for_each(|v| *v *= norm);
    buf
}

/// `N × N` complex samples, row-major with the first index along `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction2D {
    pub grid: Grid2D,
    pub axis_y: AxisKind,
    pub data: Vec<Complex64>,
}

impl GridFunction2D {
    pub fn zeros(grid: Grid2D, axis_y: AxisKind) -> Self {
        Self { grid, axis_y, data: vec![Complex64::new(0.0, 0.0); grid.n * grid.n] }
    }

    pub fn from_data(grid: Grid2D, axis_y: AxisKind, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != grid.n * grid.n {
            return Err(Error::InvalidArgument(format!("expected {} samples, got {}", grid.n * grid.n, data.len())));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("samples must be finite".into()));
        }
        Ok(Self { grid, axis_y, data })
    }

    /// Samples `f(x_i, y_k)` on the grid.
    pub fn from_fn(grid: Grid2D, axis_y: AxisKind, f: impl Fn(f64, f64) -> Complex64 + Sync) -> Self {
        let xs = grid.nodes();
        let ys = grid.axis(axis_y).coords;
        let mut out = Self::zeros(grid, axis_y);
        out.data.par_chunks_mut(grid.n).enumerate().for_each(|(i, row)| {
            for (k, v) in row.iter_mut().enumerate() {
                *v = f(xs[i], ys[k]);
            }
        });
        out
    }

    pub fn at(&self, i: usize, k: usize) -> Complex64 {
        self.data[i * self.grid.n + k]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.grid.n..(i + 1) * self.grid.n]
    }

    pub fn x_axis(&self) -> Axis {
        self.grid.axis(AxisKind::Spatial)
    }

    pub fn y_axis(&self) -> Axis {
        self.grid.axis(self.axis_y)
    }

    pub fn sup_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Spacing-weighted discrete L² norm.
    pub fn l2_norm(&self) -> f64 {
        let w = self.grid.spacing() * self.y_axis().spacing;
        (self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn transposed(&self) -> Vec<Complex64> {
        let n = self.grid.n;
        let mut t = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                t[k * n + i] = self.data[i * n + k];
            }
        }
        t
    }

    pub(crate) fn set_transposed(&mut self, t: &[Complex64]) {
        let n = self.grid.n;
        for i in 0..n {
            for k in 0..n {
                self.data[i * n + k] = t[k * n + i];
            }
        }
    }

    pub fn combine(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self { grid: self.grid, axis_y: self.axis_y, data }
    }
}

/// `‖a − b‖_sup / max(‖a‖_sup, ‖b‖_sup)`; zero when both vanish.
pub fn relative_sup(a: &GridFunction2D, b: &GridFunction2D) -> f64 {
    let scale = a.sup_norm().max(b.sup_norm());
    if scale == 0.0 {
        0.0
    } else {
        a.sup_distance(b) / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_invariants() {
        let g = Grid2D::new(12.0, 256).unwrap();
        assert!((g.spacing() * 256.0 - 24.0).abs() < 1e-12);
        assert_eq!(g.node(0), -12.0);
        assert_eq!(g.dual_index(0), -128);
        assert!((g.dual_node(129) - PI / 12.0).abs() < 1e-15);
        assert!(Grid2D::new(12.0, 100).is_err());
        assert!(Grid2D::new(0.0, 64).is_err());
    }

    #[test]
    fn spectral_derivative_of_gaussian() {
        let g = Grid2D::new(12.0, 256).unwrap();
        let ax = g.axis(AxisKind::Spatial);
        let mut f: Vec<Complex64> = ax.coords.iter().map(|&x| Complex64::new((-x * x).exp(), 0.0)).collect();
        FftPair::new(256).apply_d(&mut f, &ax.wavenumbers, 1);
        // D e^{-x²} = 2ix e^{-x²}
        for (v, &x) in f.iter().zip(&ax.coords) {
            assert!((v - Complex64::new(0.0, 2.0 * x * (-x * x).exp())).norm() < 1e-12);
        }
    }

    #[test]
    fn dual_transform_round_trip() {
        let g = Grid2D::new(12.0, 64).unwrap();
        let pair = FftPair::new(64);
        let f: Vec<Complex64> = g.nodes().iter().map(|&t| Complex64::new((-t * t / 2.0).exp(), t.sin())).collect();
        let mut buf = f.clone();
        let hat = dual_transform(&pair, &mut buf, g.spacing());
        // η = 0 gives the plain integral
        let direct: Complex64 = f.iter().sum::<Complex64>() * g.spacing();
        assert!((hat[32] - direct).norm() < 1e-12);
        let back = inverse_dual_transform(&pair, &hat, g.spacing());
        for (a, b) in back.iter().zip(&f) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn dual_axis_wavenumbers() {
        let g = Grid2D::new(12.0, 8).unwrap();
        let ax = g.axis(AxisKind::Dual);
        assert!((ax.wavenumbers[1] - g.spacing()).abs() < 1e-12);
        assert_eq!(ax.wavenumbers[4], 0.0);
    }
}
