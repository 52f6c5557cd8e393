//! Orchestration: spec parsing, the certification chain, generators of
//! regular operators and report output.

pub mod generate;
pub mod report;

pub use generate::{
    generate_from_positive_symbol, generate_quasi_homogeneous, quasi_homogeneous_target, Generated, QuasiHomogeneous,
};
pub use report::{
    attach_residuals, certify, certify_with, emit_report, exit_code, parse_spec, summary, Attempt, CertifyOptions,
    NamedSymbol, Report, Symbols,
};
