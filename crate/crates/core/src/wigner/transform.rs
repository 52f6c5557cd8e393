//! `Wig_p[f](x, y) = (2π)^{−1/2} ∫ e^{−izy} f(x + qz, x − pz) dz`, `q = 1 − p`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::functions::{eval_test_function, AnalyticTestFunction};
use super::grid::{dual_transform, inverse_dual_transform, AxisKind, FftPair, Grid2D, GridFunction2D};
use crate::error::{Error, Result};

/// Largest admissible `|g(±L)| / sup|g|` for the integrand
/// `g(z) = f(x + qz, x − pz)` at the ends of the `z` window.
pub const DECAY_TOLERANCE: f64 = 1e-9;

/// Forward transform of `u ⊗ v`, evaluated analytically at the quadrature
/// nodes. Output rows are `x` nodes, columns the dual `y` nodes.
pub fn wig_forward(u: &AnalyticTestFunction, v: &AnalyticTestFunction, p: f64, grid: Grid2D) -> Result<GridFunction2D> {
    wig_forward_fn(|s, t| eval_test_function(u, s) * eval_test_function(v, t), p, grid)
}

/// Forward transform of an arbitrary function `f(s, t)`.
pub fn wig_forward_fn(f: impl Fn(f64, f64) -> Complex64 + Sync, p: f64, grid: Grid2D) -> Result<GridFunction2D> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument("p must be finite".into()));
    }
    let q = 1.0 - p;
    let n = grid.len();
    let xs = grid.nodes();
    let l = grid.half_width();
    let pair = FftPair::new(n);
    let weight = 1.0 / (2.0 * PI).sqrt();
    let mut out = GridFunction2D::zeros(grid, AxisKind::Dual);
    // (sup |g|, boundary |g|) per row, reduced in row order below
    let stats: Vec<(f64, f64)> = out
        .data
        .par_chunks_mut(n)
        .enumerate()
        .map(|(i, row)| {
            let x = xs[i];
            let mut g: Vec<Complex64> = xs.iter().map(|&z| f(x + q * z, x - p * z)).collect();
            let sup = g.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let edge = g[0].norm().max(f(x + q * l, x - p * l).norm());
            let hat = dual_transform(&pair, &mut g, grid.spacing());
            for (o, h) in row.iter_mut().zip(hat) {
                *o = h * weight;
            }
            (sup, edge)
        })
        .collect();
    let sup = stats.iter().map(|s| s.0).fold(0.0, f64::max);
    let edge = stats.iter().map(|s| s.1).fold(0.0, f64::max);
    if sup > 0.0 && edge > DECAY_TOLERANCE * sup {
        return Err(Error::BoundaryDecay { magnitude: edge / sup, tolerance: DECAY_TOLERANCE });
    }
    Ok(out)
}

/// Inverse transform back to samples of `f` on the spatial grid.
///
/// An inverse DFT in `y` gives `G(x, z) = f(x + qz, x − pz)`; then
/// `f(s, t) = G(ps + qt, s − t)`. The difference `s − t` always lands on
/// a `z` node. When `ps + qt` is not an `x` node, the trigonometric
/// interpolant of `G(·, z)` is evaluated directly.
pub fn wig_inverse(big_f: &GridFunction2D, p: f64) -> Result<GridFunction2D> {
    if big_f.axis_y != AxisKind::Dual {
        return Err(Error::InvalidArgument("inverse transform expects a dual y axis".into()));
    }
    let grid = big_f.grid;
    let n = grid.len();
    let h = grid.spacing();
    let q = 1.0 - p;
    let pair = FftPair::new(n);
    let scale = (2.0 * PI).sqrt();
    // g_rows[x][z]
    let g_rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut g = inverse_dual_transform(&pair, big_f.row(i), h);
            g.iter_mut().for_each(|v| *v *= scale);
            g
        })
        .collect();
    // trigonometric coefficients of each z column along x
    let columns: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut c: Vec<Complex64> = (0..n).map(|m| g_rows[m][j]).collect();
            pair.forward(&mut c);
            let norm = 1.0 / n as f64;
            c.iter_mut().for_each(|v| *v *= norm);
            c
        })
        .collect();
    let unit = PI / grid.half_width();
    let x0 = grid.node(0);
    let mut out = GridFunction2D::zeros(grid, AxisKind::Spatial);
    out.data.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let s = grid.node(i);
        for (l, o) in row.iter_mut().enumerate() {
            let j = i as i64 - l as i64 + (n / 2) as i64;
            if j < 0 || j >= n as i64 {
                continue;
            }
            let j = j as usize;
            let x = p * s + q * grid.node(l);
            let pos = (x - x0) / h;
            let near = pos.round();
            *o = if (pos - near).abs() < 1e-9 && near >= 0.0 && near < n as f64 {
                g_rows[near as usize][j]
            } else {
                trig_eval(&columns[j], unit * (x - x0))
            };
        }
    });
    Ok(out)
}

/// `Σ c_m e^{imθ}` over signed `m`; the Nyquist term enters as a cosine.
fn trig_eval(c: &[Complex64], theta: f64) -> Complex64 {
    let n = c.len();
    let half = n / 2;
    let w = Complex64::from_polar(1.0, theta);
    let mut acc = c[0];
    let mut wp = Complex64::new(1.0, 0.0);
    for m in 1..half {
        wp *= w;
        acc += c[m] * wp + c[n - m] * wp.conj();
    }
    acc + c[half] * (theta * half as f64).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::functions::hermite_fn;

    fn grid() -> Grid2D {
        Grid2D::new(12.0, 256).unwrap()
    }

    #[test]
    fn gaussian_closed_form_half() {
        let h0 = AnalyticTestFunction::Hermite(0);
        let w = wig_forward(&h0, &h0, 0.5, grid()).unwrap();
        let want = GridFunction2D::from_fn(grid(), AxisKind::Dual, |x, y| {
            Complex64::new((2.0 / PI).sqrt() * (-x * x - y * y).exp(), 0.0)
        });
        assert!(w.sup_distance(&want) < 1e-8);
    }

    #[test]
    fn gaussian_closed_form_one() {
        let h0 = AnalyticTestFunction::Hermite(0);
        let w = wig_forward(&h0, &h0, 1.0, grid()).unwrap();
        let want = GridFunction2D::from_fn(grid(), AxisKind::Dual, |x, y| {
            Complex64::from_polar(hermite_fn(0, x) * hermite_fn(0, y), -x * y)
        });
        assert!(w.sup_distance(&want) < 1e-8);
    }

    #[test]
    fn zero_function() {
        let z = AnalyticTestFunction::zero();
        let w = wig_forward(&z, &AnalyticTestFunction::Hermite(0), 0.5, grid()).unwrap();
        assert_eq!(w.sup_norm(), 0.0);
        assert_eq!(wig_inverse(&w, 0.5).unwrap().sup_norm(), 0.0);
    }

    #[test]
    fn boundary_violation() {
        let wide = AnalyticTestFunction::GaussianPacket { a: 0.01, b: 0.0, x0: 0.0 };
        let e = wig_forward(&wide, &wide, 0.5, grid()).unwrap_err();
        assert!(matches!(e, Error::BoundaryDecay { .. }));
    }

    #[test]
    fn round_trips() {
        let (u, v) = (AnalyticTestFunction::Hermite(0), AnalyticTestFunction::Hermite(1));
        let want = GridFunction2D::from_fn(grid(), AxisKind::Spatial, |s, t| {
            Complex64::new(hermite_fn(0, s) * hermite_fn(1, t), 0.0)
        });
        for (p, tol) in [(0.5, 1e-6), (1.0, 1e-8), (0.0, 1e-8), (1.0 / 3.0, 1e-6)] {
            let back = wig_inverse(&wig_forward(&u, &v, p, grid()).unwrap(), p).unwrap();
            let err = back.sup_distance(&want);
            assert!(err < tol, "p={p}: {err:e}");
        }
    }
}
