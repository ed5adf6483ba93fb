//! Polynomial geometry in P^3 over Q: the twisted cubic, the Klein four-group
//! action, invariant lines, and the pullback quartic of the secant argument.

pub mod action;
pub mod curve;
pub mod lines;
pub mod mpoly;
pub mod points;
pub mod quadrics;
pub mod secant;

pub use action::{character, common_fixed_points, transform_poly, FixedLocus, LinearAction};
pub use curve::{contains_param_curve, ParamCurve};
pub use lines::{line_containment_conditions, ParamLine};
pub use mpoly::{MPoly, Monomial};
pub use secant::{pi_r_quartic, pullback_under_quadric_map, solve_conic_through_line, verify_secant_lemma, SecantCertificate};
