//! Python bindings: polynomials, operator specs, the certification
//! pipeline and the numeric transform checks.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wigreg_core::algebra::{parse_rational, MultiPoly};
use wigreg_core::classify::{verify_certificate as verify_cert, Certificate};
use wigreg_core::pipeline::{attach_residuals, certify as certify_spec, exit_code, summary};
use wigreg_core::symbol::{self, SpecDocument};
use wigreg_core::wigner::{self, AnalyticTestFunction, CheckMode, Grid2D};

/// Node coordinates along `x` and `y`, then the rows of values.
type Sampled = (Vec<f64>, Vec<f64>, Vec<Vec<Complex64>>);

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Polynomial in `x, y, xi, eta` with Gaussian-rational coefficients.
#[pyclass(name = "Poly", module = "wigreg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Poly(MultiPoly);

#[pymethods]
impl Poly {
    #[new]
    fn new(expr: &str) -> PyResult<Self> {
        expr.parse().map(Poly).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Poly).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(err)
    }

    fn degree(&self) -> Option<u32> {
        self.0.degree()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at the phase-space point `(x, xi)`.
    fn eval(&self, x: f64, xi: f64) -> Complex64 {
        self.0.eval_phase(x, xi)
    }

    fn __add__(&self, other: &Poly) -> Poly {
        Poly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Poly) -> Poly {
        Poly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Poly) -> Poly {
        Poly(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Poly {
        Poly(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Poly {
        Poly(self.0.pow(e))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// `A = Σ c_{j,k} x^j D^k` together with the parameter `p`.
#[pyclass(name = "OperatorSpec", module = "wigreg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpec(symbol::OperatorSpec);

#[pymethods]
impl PySpec {
    /// Parses the JSON spec document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(err)?;
        doc.into_spec().map(|(s, _)| PySpec(s)).map_err(err)
    }

    /// Reads the coefficients off a symbol `a(x, xi)`.
    #[staticmethod]
    fn from_symbol(a: &Poly, p: &str) -> PyResult<Self> {
        let p = parse_rational(p).map_err(err)?;
        symbol::OperatorSpec::from_symbol(&a.0, p).map(PySpec).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&SpecDocument::from_spec(&self.0, None)).map_err(err)
    }

    #[getter]
    fn p(&self) -> String {
        self.0.p().to_string()
    }

    fn order(&self) -> u32 {
        self.0.order()
    }

    fn with_p(&self, p: &str) -> PyResult<Self> {
        Ok(PySpec(self.0.with_p(parse_rational(p).map_err(err)?)))
    }

    fn symbol_a(&self) -> Poly {
        Poly(self.0.symbol_a())
    }

    fn symbol_b(&self) -> Poly {
        Poly(symbol::build_b_symbol(&self.0))
    }

    fn a_tilde(&self) -> Poly {
        Poly(symbol::a_tilde(&self.0))
    }

    fn degeneracy_holds(&self) -> bool {
        symbol::verify_degeneracy(&self.0).holds
    }

    fn __repr__(&self) -> String {
        format!("OperatorSpec(a='{}', p={})", self.0.symbol_a(), self.0.p())
    }
}

#[pyfunction]
fn weyl_wick(a: &Poly) -> Poly {
    Poly(symbol::weyl_wick(&a.0))
}

#[pyfunction]
fn weyl_wick_inverse(a: &Poly) -> Poly {
    Poly(symbol::weyl_wick_inverse(&a.0))
}

/// Runs the pipeline and returns `(exit_code, report_json, summary)`.
/// With `residuals=True` the intertwining check on `h0 ⊗ h0` is attached.
#[pyfunction]
#[pyo3(signature = (spec, residuals = false))]
fn certify(spec: &PySpec, residuals: bool) -> PyResult<(i32, String, String)> {
    let mut report = certify_spec(&spec.0);
    if residuals {
        let grid = Grid2D::new(12.0, 256).map_err(err)?;
        attach_residuals(&mut report, &spec.0, grid).map_err(err)?;
    }
    let json = serde_json::to_string_pretty(&report).map_err(err)?;
    Ok((exit_code(&report), json, summary(&report)))
}

/// Re-checks a certificate (JSON) against a symbol; raises on failure.
#[pyfunction]
fn verify_certificate(certificate: &str, a: &Poly) -> PyResult<()> {
    let cert: Certificate = serde_json::from_str(certificate).map_err(err)?;
    verify_cert(&cert, &a.0).map_err(PyValueError::new_err)
}

/// `Wig_p[h_m ⊗ h_n]` on the grid; returns `(x_nodes, y_nodes, rows)`.
#[pyfunction]
#[pyo3(signature = (m, n, p, half_width = 12.0, points = 256))]
fn wig_forward(m: u32, n: u32, p: f64, half_width: f64, points: usize) -> PyResult<Sampled> {
    let grid = Grid2D::new(half_width, points).map_err(err)?;
    let w = wigner::wig_forward(&AnalyticTestFunction::Hermite(m), &AnalyticTestFunction::Hermite(n), p, grid)
        .map_err(err)?;
    let rows = (0..grid.len()).map(|i| w.row(i).to_vec()).collect();
    Ok((w.x_axis().coords, w.y_axis().coords, rows))
}

/// Relative sup-norm residuals of the intertwining check on `h_m ⊗ h_n`
/// as `{name: value}`; `mode` is `"full"` or `"generators"`.
#[pyfunction]
#[pyo3(signature = (spec, m, n, mode = "full", half_width = 12.0, points = 256))]
fn intertwine_residual(
    spec: &PySpec,
    m: u32,
    n: u32,
    mode: &str,
    half_width: f64,
    points: usize,
) -> PyResult<Vec<(String, f64)>> {
    let mode = match mode {
        "full" => CheckMode::Full,
        "generators" => CheckMode::Generators,
        other => return Err(err(format!("unknown mode {other:?}"))),
    };
    let grid = Grid2D::new(half_width, points).map_err(err)?;
    let r = wigner::intertwine_residual(
        &spec.0,
        &AnalyticTestFunction::Hermite(m),
        &AnalyticTestFunction::Hermite(n),
        grid,
        mode,
    )
    .map_err(err)?;
    Ok(r.residuals.into_iter().map(|r| (r.name, r.relative_sup)).collect())
}

#[pymodule]
fn wigreg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(weyl_wick, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_wick_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(wig_forward, m)?)?;
    m.add_function(wrap_pyfunction!(intertwine_residual, m)?)?;
    Ok(())
}
