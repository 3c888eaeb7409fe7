//! Exact arithmetic: rationals, multivariate polynomials, polynomials in the
//! deformation variable `t`, and the t-adic elimination behind Jantzen layers.

pub mod linalg;
pub mod modp;
pub mod poly;
pub mod rational;
pub mod smith;
pub mod tpoly;

pub use linalg::{det_bareiss, det_interpolated, det_poly, det_rational, nullspace, rank};
pub use poly::{Mono, MultiPoly};
pub use rational::{frac, int, ExtRational, Rational};
pub use smith::{coranks_from_valuations, smith_t_valuations};
pub use tpoly::{deform, deform_truncated, deformed_valuation, t_valuation, TPoly, TValuation};

/// Evaluate `p` at a name-keyed assignment.
pub fn poly_eval(
    p: &MultiPoly,
    assignment: &alloc::collections::BTreeMap<alloc::string::String, Rational>,
) -> crate::error::Result<Rational> {
    p.eval(assignment)
}
