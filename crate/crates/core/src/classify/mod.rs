//! Certificates for the two hypotheses of the reduction: hypo-ellipticity
//! of `a(x, ξ)` and injectivity of `A = a(x, D)`.

pub mod certificate;
pub mod family;
pub mod first_order;
pub mod hypo;
pub mod injectivity;
pub mod verdict;
pub mod verify;

pub use certificate::{Certificate, PhasePoint, QuadraticCoeffs, Side};
pub use family::{family_symbol, recognize_family, FamilyParams, NewtonPolygon};
pub use first_order::{first_order_certify, hypo_certify_first_order, recognize_first_order, FirstOrderShape};
pub use hypo::{hypo_certify_newton, hypo_certify_quadratic, hypo_falsify, Falsification};
pub use injectivity::{injectivity_quadratic, injectivity_quadratic_with, injectivity_sos, injectivity_wick, WickGrid};
pub use verdict::{Grade, RegularityVerdict, Status};
pub use verify::verify_certificate;
