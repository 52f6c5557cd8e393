//! Symbols of the planar operator `B`, its degenerate restriction `ã`, the
//! Weyl–Wick transform and linear changes of variables.

pub mod calculus;
pub mod spec;
pub mod wick;

pub use calculus::{a_tilde, build_b_symbol, symbol_compose, t_conjugate, verify_degeneracy, Degeneracy};
pub use spec::{LinearChange, OperatorSpec, SpecDocument};
pub use wick::{weyl_wick, weyl_wick_inverse};
