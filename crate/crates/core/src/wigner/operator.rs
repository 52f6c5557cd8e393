//! Spectral application of `A = Σ c x^j D^k` on the line and of
//! `B = Σ c (x − qD_y)^j (y + pD_x)^k` on a grid function.

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{Axis, AxisKind, FftPair, Grid2D, GridFunction2D};
use crate::algebra::rational::rat_to_f64;
use crate::error::{Error, Result};
use crate::symbol::OperatorSpec;

/// Periodic differentiation assumes samples vanish at the window edges.
pub const WRAP_TOLERANCE: f64 = 1e-12;

/// Result of an operator application with the measured edge magnitude
/// (relative to the sup-norm of the input).
#[derive(Clone, Debug)]
pub struct Applied<T> {
    pub value: T,
    pub wraparound: f64,
    pub warning: Option<String>,
}

fn wrap_warning(wraparound: f64) -> Option<String> {
    (wraparound > WRAP_TOLERANCE).then(|| {
        format!(
            "input does not decay at the grid edge: relative magnitude {wraparound:.3e} exceeds {WRAP_TOLERANCE:.0e}"
        )
    })
}

fn edge_magnitude_1d(f: &[Complex64]) -> f64 {
    let sup = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if sup == 0.0 {
        return 0.0;
    }
    f[0].norm().max(f[f.len() - 1].norm()) / sup
}

fn edge_magnitude_2d(f: &GridFunction2D) -> f64 {
    let n = f.grid.len();
    let sup = f.sup_norm();
    if sup == 0.0 {
        return 0.0;
    }
    let mut edge = 0.0f64;
    for i in 0..n {
        for k in [0, n - 1] {
            edge = edge.max(f.at(i, k).norm()).max(f.at(k, i).norm());
        }
    }
    edge / sup
}

/// `A u` for samples of `u` on the spatial nodes of `grid`.
pub fn apply_operator_1d(spec: &OperatorSpec, samples: &[Complex64], grid: Grid2D) -> Result<Applied<Vec<Complex64>>> {
    let n = grid.len();
    if samples.len() != n {
        return Err(Error::InvalidArgument(format!("expected {n} samples, got {}", samples.len())));
    }
    let axis = grid.axis(AxisKind::Spatial);
    let pair = FftPair::new(n);
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (&(j, k), c) in spec.coeffs() {
        let mut t = samples.to_vec();
        pair.apply_d(&mut t, &axis.wavenumbers, k);
        let c = c.to_complex();
        for ((o, v), &x) in out.iter_mut().zip(&t).zip(&axis.coords) {
            *o += c * v * x.powi(j as i32);
        }
    }
    let wraparound = edge_magnitude_1d(samples);
    Ok(Applied { value: out, wraparound, warning: wrap_warning(wraparound) })
}

struct Plane {
    n: usize,
    pair: FftPair,
    x: Axis,
    y: Axis,
}

impl Plane {
    fn d_y(&self, data: &mut [Complex64]) {
        data.par_chunks_mut(self.n).for_each(|row| self.pair.apply_d(row, &self.y.wavenumbers, 1));
    }

    fn d_x(&self, f: &mut GridFunction2D) {
        let mut t = f.transposed();
        t.par_chunks_mut(self.n).for_each(|col| self.pair.apply_d(col, &self.x.wavenumbers, 1));
        f.set_transposed(&t);
    }

    /// `(y + pD_x) F`
    fn y_factor(&self, f: &GridFunction2D, p: f64) -> GridFunction2D {
        let mut d = f.clone();
        self.d_x(&mut d);
        let mut out = f.clone();
        out.data.par_chunks_mut(self.n).zip(d.data.par_chunks(self.n)).for_each(|(row, drow)| {
            for ((o, dv), &y) in row.iter_mut().zip(drow).zip(&self.y.coords) {
                *o = *o * y + dv * p;
            }
        });
        out
    }

    /// `(x − qD_y) F`
    fn x_factor(&self, f: &GridFunction2D, q: f64) -> GridFunction2D {
        let mut out = f.clone();
        let mut d = f.data.clone();
        self.d_y(&mut d);
        out.data.par_chunks_mut(self.n).zip(d.par_chunks(self.n)).enumerate().for_each(|(i, (row, drow))| {
            let x = self.x.coords[i];
            for (o, dv) in row.iter_mut().zip(drow) {
                *o = *o * x - dv * q;
            }
        });
        out
    }
}

/// Multiplication and `D` along each axis of a grid function.
pub struct PlaneOps {
    plane: Plane,
}

impl PlaneOps {
    pub fn for_function(f: &GridFunction2D) -> Self {
        let n = f.grid.len();
        Self { plane: Plane { n, pair: FftPair::new(n), x: f.x_axis(), y: f.y_axis() } }
    }

    pub fn d1(&self, f: &GridFunction2D) -> GridFunction2D {
        let mut out = f.clone();
        self.plane.d_x(&mut out);
        out
    }

    pub fn d2(&self, f: &GridFunction2D) -> GridFunction2D {
        let mut out = f.clone();
        self.plane.d_y(&mut out.data);
        out
    }

    pub fn m1(&self, f: &GridFunction2D) -> GridFunction2D {
        self.plane.x_factor(f, 0.0)
    }

    pub fn m2(&self, f: &GridFunction2D) -> GridFunction2D {
        self.plane.y_factor(f, 0.0)
    }
}

/// `B F` on the product grid of `F` (either `y` axis).
pub fn apply_operator_2d(spec: &OperatorSpec, f: &GridFunction2D) -> Applied<GridFunction2D> {
    let n = f.grid.len();
    let plane = Plane { n, pair: FftPair::new(n), x: f.x_axis(), y: f.y_axis() };
    let p = rat_to_f64(spec.p());
    let q = 1.0 - p;
    let max_k = spec.coeffs().map(|((_, k), _)| *k).max().unwrap_or(0);
    // (y + pD_x)^k F for every k needed
    let mut y_powers = vec![f.clone()];
    for _ in 0..max_k {
        let next = plane.y_factor(y_powers.last().expect("non-empty"), p);
        y_powers.push(next);
    }
    let mut out = GridFunction2D::zeros(f.grid, f.axis_y);
    for (&(j, k), c) in spec.coeffs() {
        let mut term = y_powers[k as usize].clone();
        for _ in 0..j {
            term = plane.x_factor(&term, q);
        }
        let c = c.to_complex();
        out.data.iter_mut().zip(&term.data).for_each(|(o, t)| *o += c * t);
    }
    let wraparound = edge_magnitude_2d(f);
    Applied { value: out, wraparound, warning: wrap_warning(wraparound) }
}
