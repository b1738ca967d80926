//! Exact computations on the tree of quadratic transforms of
//! `Q[x,y]` localized at the origin: points as blow-up paths, positions of
//! rational functions, proximity, valuation descriptors, families of points,
//! Zariski closures and membership in intersection rings.

pub mod arith;
pub mod demo;
pub mod dot;
pub mod error;
pub mod family;
pub mod json;
pub mod oracle;
pub mod position;
pub mod proximity;
pub mod topology;
pub mod tree;
pub mod valuation;

pub use arith::{Poly, RatFunc, Rational, Var};
pub use error::{Error, Result};
