//! Regularity certificates for planar operators
//! `B = Σ c_{j,k} (x − qD_y)^j (y + pD_x)^k`, `q = 1 − p`.
//!
//! A Wigner-type transform `Wig_p` intertwines `B` with `A ⊗ I`, where
//! `A = Σ c_{j,k} x^j D^k` acts on the line. When the symbol of `A` is
//! hypo-elliptic, `B` is regular exactly when `A` is one-to-one. This crate
//! computes the symbols involved with exact arithmetic ([`algebra`],
//! [`symbol`]), produces re-checkable certificates for both hypotheses
//! ([`classify`]), checks the intertwining numerically ([`wigner`]) and
//! ties everything together into reports ([`pipeline`]).

pub mod algebra;
pub mod classify;
pub mod error;
pub mod pipeline;
pub mod symbol;
pub mod wigner;

pub use error::{Error, Result};
