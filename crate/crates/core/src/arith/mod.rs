//! Exact arithmetic over Q: sparse polynomials, gcd, rational functions,
//! rational roots and the expression grammar.

mod expr;
mod gcd;
mod poly;
mod ratfunc;
mod roots;

pub use expr::{parse_poly, parse_ratfunc, poly_to_string, ratfunc_to_string, DEFAULT_NAMES};
pub(crate) use gcd::content_in;
pub use gcd::{gcd, gcd_many, squarefree_univariate};
pub use poly::{rat, ratio, Monomial, Poly, Rational, Var, NVARS};
pub use ratfunc::RatFunc;
pub use roots::{rational_roots, rational_roots_poly, RootSplit};

use crate::error::{Error, Result};

/// Order at the origin in `x`, `y`; the parameter `a` counts as a scalar.
pub fn order_at_origin(p: &Poly) -> Result<u32> {
    p.order_at_origin().ok_or(Error::OrderOfZero)
}

pub fn lowest_form(p: &Poly) -> Result<Poly> {
    p.lowest_form().ok_or(Error::ZeroPolynomial)
}

/// Largest `m` with `h^m` dividing `p`.
pub fn factor_multiplicity(p: &Poly, h: &Poly) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut m = 0;
    let mut rest = p.clone();
    while let Some(q) = rest.div_exact(h) {
        rest = q;
        m += 1;
    }
    Ok(m)
}
