//! Zero / pole / unit / undetermined at a point, and resolution of
//! indeterminacy into the minimal points where a function is determined.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::arith::{content_in, rational_roots_poly, Poly, RatFunc, Rational, Var};
use crate::error::{Error, Result};
use crate::tree::{candidate_children, classify, Cls, Point};

pub const DEFAULT_DEPTH_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    Zero,
    Pole,
    Unit,
    Undetermined,
}

impl Position {
    pub fn name(self) -> &'static str {
        match self {
            Position::Zero => "zero",
            Position::Pole => "pole",
            Position::Unit => "unit",
            Position::Undetermined => "undetermined",
        }
    }

    /// Position of the reciprocal.
    pub fn flip(self) -> Position {
        match self {
            Position::Zero => Position::Pole,
            Position::Pole => Position::Zero,
            p => p,
        }
    }

    pub fn in_ring(self) -> bool {
        matches!(self, Position::Zero | Position::Unit)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<Cls> for Position {
    fn from(c: Cls) -> Self {
        match c {
            Cls::Zero => Position::Zero,
            Cls::Pole => Position::Pole,
            Cls::Unit => Position::Unit,
            Cls::Undetermined => Position::Undetermined,
        }
    }
}

/// Position of an expression already written in some point's parameters.
pub fn position_of_expressed(e: &RatFunc) -> Position {
    classify(e).into()
}

pub fn position(alpha: &Point, f: &RatFunc) -> Result<Position> {
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    if f.contains_var(Var::A) {
        return Err(Error::Parametric);
    }
    Ok(position_of_expressed(&alpha.express(f)))
}

/// What happens to a parametric element at one value of `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialized {
    At(Position),
    /// The element becomes zero.
    Vanishes,
    /// The denominator becomes zero.
    Undefined,
}

impl fmt::Display for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialized::At(p) => write!(f, "{p}"),
            Specialized::Vanishes => f.write_str("vanishes"),
            Specialized::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricPosition {
    pub generic: Position,
    /// Values of `a` whose position differs from the generic one, ascending.
    pub exceptions: Vec<(Rational, Specialized)>,
}

/// Specializes `f` at `a = a0` and classifies it at `alpha`.
pub fn specialize_at(alpha: &Point, f: &RatFunc, a0: &Rational) -> Specialized {
    let num = f.num().eval_var(Var::A, a0);
    let den = f.den().eval_var(Var::A, a0);
    if den.is_zero() {
        return Specialized::Undefined;
    }
    if num.is_zero() {
        return Specialized::Vanishes;
    }
    let g = RatFunc::new(num, den).expect("nonzero denominator");
    Specialized::At(position_of_expressed(&alpha.express(&g)))
}

/// Content of `p` with respect to `x` and `y`.
pub(crate) fn xy_content(p: &Poly) -> Poly {
    content_in(&content_in(p, Var::X), Var::Y)
}

/// Rational values of `v` where `p`'s constant term or `xy`-content
/// vanishes; `p` must not involve parameters other than `v`.
pub(crate) fn special_values(p: &Poly, v: Var, out: &mut BTreeSet<Rational>) {
    for c in [p.at_origin(), xy_content(p)] {
        if !c.is_constant() && c.vars() == vec![v] {
            out.extend(rational_roots_poly(&c, v).roots);
        }
    }
}

/// Generic position over all rational `a`, with the finitely many exceptions
/// found among the roots of the constant terms and contents in `a`.
pub fn position_parametric(alpha: &Point, f: &RatFunc) -> Result<ParametricPosition> {
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    let e = alpha.express(f);
    let generic = position_of_expressed(&e);
    let mut values = BTreeSet::new();
    for p in [e.num(), e.den(), f.num(), f.den()] {
        special_values(p, Var::A, &mut values);
    }
    let exceptions = values
        .into_iter()
        .filter_map(|a0| {
            let s = specialize_at(alpha, f, &a0);
            (s != Specialized::At(generic)).then_some((a0, s))
        })
        .collect();
    Ok(ParametricPosition {
        generic,
        exceptions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub zeros: BTreeSet<Point>,
    pub poles: BTreeSet<Point>,
    pub depth_used: usize,
    /// Points where a direction without a rational coordinate was dropped.
    pub diagnostics: Vec<String>,
}

/// Breadth-first resolution of indeterminacy from the root.
pub fn resolve(f: &RatFunc, depth_cap: usize) -> Result<Resolution> {
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    if f.contains_var(Var::A) {
        return Err(Error::Parametric);
    }
    let mut res = Resolution {
        zeros: BTreeSet::new(),
        poles: BTreeSet::new(),
        depth_used: 0,
        diagnostics: Vec::new(),
    };
    let mut queue = VecDeque::from([Point::root()]);
    let mut open = Vec::new();
    while let Some(alpha) = queue.pop_front() {
        let e = alpha.express(f);
        res.depth_used = res.depth_used.max(alpha.level());
        match classify(&e) {
            Cls::Zero => {
                res.zeros.insert(alpha);
            }
            Cls::Pole => {
                res.poles.insert(alpha);
            }
            Cls::Unit => {}
            Cls::Undetermined => {
                if e.order_at_origin()? != 0 {
                    return Err(Error::InfiniteResolution(alpha.to_string()));
                }
                if alpha.level() >= depth_cap {
                    open.push(alpha.to_string());
                    continue;
                }
                let (steps, irrational) = candidate_children(&e);
                if irrational > 0 {
                    res.diagnostics.push(format!(
                        "{alpha}: dropped {irrational} direction(s) without rational coordinate"
                    ));
                }
                for s in steps {
                    queue.push_back(alpha.child(&s));
                }
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::DepthExceeded {
            cap: depth_cap,
            open,
        });
    }
    Ok(res)
}
