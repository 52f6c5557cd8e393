//! Discretized Wigner-type transform and the numeric checks built on it.

pub mod check;
pub mod functions;
pub mod grid;
pub mod io;
pub mod operator;
pub mod transform;

pub use check::{intertwine_residual, wick_energy_compare, CheckMode, IntertwineReport, Residual, WickEnergy};
pub use functions::{
    eval_test_function, hermite_fn, parse_test_pair, AnalyticTestFunction, CoherentFrame, PolyGaussian,
};
pub use grid::{relative_sup, Axis, AxisKind, Grid2D, GridFunction2D};
pub use io::{read_csv, read_raw, write_csv, write_raw, GridManifest};
pub use operator::{apply_operator_1d, apply_operator_2d, Applied, PlaneOps};
pub use transform::{wig_forward, wig_forward_fn, wig_inverse, DECAY_TOLERANCE};
