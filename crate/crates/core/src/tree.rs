//! Points of the quadratic tree as paths of chart choices.
//!
//! A point with regular parameters `(p, q)` has children indexed by
//! `Q ∪ {∞}`. Step `b` moves to `(p, q/p - b)`, step `∞` to `(q, p/q)`;
//! in both cases the first new parameter cuts out the exceptional line.
//! Each point caches its parameters as rational functions of `x`, `y`, and
//! the inverse substitution expressing `x`, `y` as polynomials in `(p, q)`.
//! Polynomials "at a point" use the slots `x`, `y` for `p`, `q`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{
    poly_to_string, ratfunc_to_string, rational_roots_poly, Monomial, Poly, RatFunc, Rational, Var,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Finite(Rational),
    Infinity,
}

impl Step {
    pub fn int(n: i64) -> Step {
        Step::Finite(Rational::from_integer(BigInt::from(n)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Step::Infinity)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Step::Finite(b) if b.is_zero())
    }
}

impl From<Rational> for Step {
    fn from(r: Rational) -> Self {
        Step::Finite(r)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Finite(b) => write!(f, "{b}"),
            Step::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Step> {
        let t = s.trim();
        if matches!(t, "inf" | "∞" | "infinity") {
            return Ok(Step::Infinity);
        }
        parse_rational(t)
            .map(Step::Finite)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                expected: "rational number or inf".into(),
                found: t.to_string(),
            })
    }
}

/// Parses `n` or `n/d` with optional sign.
pub fn parse_rational(t: &str) -> Option<Rational> {
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn path_to_string(path: &[Step]) -> String {
    let parts: Vec<String> = path.iter().map(Step::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Parses a path literal such as `[0, inf, -1/2]`.
pub fn parse_path(text: &str) -> Result<Vec<Step>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            pos: 0,
            expected: "path literal in brackets".into(),
            found: t.to_string(),
        })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(str::parse).collect()
}

/// Name of a regular parameter: a letter and a counter, printed `x`, `y1`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamName {
    pub letter: char,
    pub index: u32,
}

impl ParamName {
    fn bumped(self) -> ParamName {
        ParamName {
            letter: self.letter,
            index: self.index + 1,
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}{}", self.letter, self.index)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Equal,
    Below,
    Above,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residue {
    PositiveOrder,
    /// A rational function in `t`.
    Value(RatFunc),
}

#[derive(Clone)]
pub struct Point {
    path: Vec<Step>,
    params: [RatFunc; 2],
    inverse: [Poly; 2],
    names: [ParamName; 2],
}

impl Point {
    pub fn root() -> Point {
        Point {
            path: Vec::new(),
            params: [RatFunc::var(Var::X), RatFunc::var(Var::Y)],
            inverse: [Poly::x(), Poly::y()],
            names: [
                ParamName {
                    letter: 'x',
                    index: 0,
                },
                ParamName {
                    letter: 'y',
                    index: 0,
                },
            ],
        }
    }

    pub fn from_path(path: &[Step]) -> Point {
        path.iter().fold(Point::root(), |p, s| p.child(s))
    }

    pub fn parse(text: &str) -> Result<Point> {
        Ok(Point::from_path(&parse_path(text)?))
    }

    pub fn child(&self, s: &Step) -> Point {
        let [p, q] = &self.params;
        let [pn, qn] = self.names;
        let (params, map, names) = match s {
            Step::Finite(b) => {
                let nq = q.checked_div(p).expect("parameters are nonzero")
                    - RatFunc::constant(b.clone());
                let big_q = &Poly::y() + &Poly::constant(b.clone());
                (
                    [p.clone(), nq],
                    (Poly::x(), &Poly::x() * &big_q),
                    [pn, qn.bumped()],
                )
            }
            Step::Infinity => {
                let nq = p.checked_div(q).expect("parameters are nonzero");
                (
                    [q.clone(), nq],
                    (&Poly::x() * &Poly::y(), Poly::x()),
                    [qn, pn.bumped()],
                )
            }
        };
        let inverse = [
            self.inverse[0].compose_xy(&map.0, &map.1),
            self.inverse[1].compose_xy(&map.0, &map.1),
        ];
        let mut path = self.path.clone();
        path.push(s.clone());
        Point {
            path,
            params,
            inverse,
            names,
        }
    }

    pub fn path(&self) -> &[Step] {
        &self.path
    }

    pub fn level(&self) -> usize {
        self.path.len()
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }

    pub fn parent(&self) -> Option<Point> {
        if self.path.is_empty() {
            None
        } else {
            Some(Point::from_path(&self.path[..self.path.len() - 1]))
        }
    }

    pub fn prefix(&self, level: usize) -> Point {
        Point::from_path(&self.path[..level])
    }

    /// Regular parameters `(p, q)` as rational functions of `x`, `y`.
    pub fn params(&self) -> &[RatFunc; 2] {
        &self.params
    }

    /// `x` and `y` as polynomials in the parameter slots.
    pub fn inverse(&self) -> &[Poly; 2] {
        &self.inverse
    }

    pub fn param_names(&self) -> [String; 2] {
        [self.names[0].to_string(), self.names[1].to_string()]
    }

    /// Printing names for the slots `x`, `y`, `a`, `t` at this point.
    pub fn slot_names(&self) -> [String; 4] {
        let [p, q] = self.param_names();
        [p, q, "a".to_string(), "t".to_string()]
    }

    pub fn show_poly(&self, p: &Poly) -> String {
        let n = self.slot_names();
        poly_to_string(p, &[&n[0], &n[1], &n[2], &n[3]])
    }

    pub fn show(&self, f: &RatFunc) -> String {
        let n = self.slot_names();
        ratfunc_to_string(f, &[&n[0], &n[1], &n[2], &n[3]])
    }

    /// `f` rewritten in this point's parameters, reduced.
    pub fn express(&self, f: &RatFunc) -> RatFunc {
        f.compose_xy(&self.inverse[0], &self.inverse[1])
            .expect("substitution keeps the denominator nonzero")
    }

    pub fn express_poly(&self, h: &Poly) -> Poly {
        h.compose_xy(&self.inverse[0], &self.inverse[1])
    }

    pub fn compare(&self, other: &Point) -> Comparison {
        let n = self.level().min(other.level());
        if self.path[..n] != other.path[..n] {
            return Comparison::Incomparable;
        }
        match self.level().cmp(&other.level()) {
            Ordering::Equal => Comparison::Equal,
            Ordering::Less => Comparison::Below,
            Ordering::Greater => Comparison::Above,
        }
    }

    /// True when `self` is contained in `other` (prefix or equal).
    pub fn is_prefix_of(&self, other: &Point) -> bool {
        matches!(self.compare(other), Comparison::Equal | Comparison::Below)
    }

    /// Order valuation of this point applied to `f`.
    pub fn ord(&self, f: &RatFunc) -> Result<i64> {
        if f.is_zero() {
            return Err(Error::OrderOfZero);
        }
        self.express(f).order_at_origin()
    }

    pub fn residue(&self, f: &RatFunc) -> Result<Residue> {
        if f.is_zero() {
            return Err(Error::OrderOfZero);
        }
        let g = self.express(f);
        let order = g.order_at_origin()?;
        if order < 0 {
            return Err(Error::NotInValuationRing { order });
        }
        if order > 0 {
            return Ok(Residue::PositiveOrder);
        }
        let on_line = |p: &Poly| {
            p.lowest_form()
                .expect("nonzero")
                .compose_xy(&Poly::one(), &Poly::var(Var::T))
        };
        let value = RatFunc::new(on_line(g.num()), on_line(g.den()))?;
        Ok(Residue::Value(value))
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.path == other.path
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.path.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.path.cmp(&other.path)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&path_to_string(&self.path))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{}", path_to_string(&self.path))
    }
}

/// Rewrites an expression given in some point's parameters into the
/// parameters of its child along `s`.
pub fn apply_step(f: &RatFunc, s: &Step) -> RatFunc {
    let (px, py) = step_map(s);
    f.compose_xy(&px, &py)
        .expect("step substitution is dominant")
}

pub fn apply_step_poly(h: &Poly, s: &Step) -> Poly {
    let (px, py) = step_map(s);
    h.compose_xy(&px, &py)
}

/// The finite step with symbolic value `t`.
pub fn apply_generic_step(f: &RatFunc) -> RatFunc {
    let big_q = &Poly::y() + &Poly::var(Var::T);
    f.compose_xy(&Poly::x(), &(&Poly::x() * &big_q))
        .expect("step substitution is dominant")
}

pub fn apply_generic_step_poly(h: &Poly) -> Poly {
    let big_q = &Poly::y() + &Poly::var(Var::T);
    h.compose_xy(&Poly::x(), &(&Poly::x() * &big_q))
}

fn step_map(s: &Step) -> (Poly, Poly) {
    match s {
        Step::Finite(b) => (
            Poly::x(),
            &Poly::x() * &(&Poly::y() + &Poly::constant(b.clone())),
        ),
        Step::Infinity => (&Poly::x() * &Poly::y(), Poly::x()),
    }
}

/// Finite steps `b` where `h(1, t)` vanishes, with `∞` when `p` divides `h`.
/// `h` is a form in the slots `x`, `y`. Also returns the degree of the part
/// of `h(1, t)` without rational roots.
pub fn directions(form: &Poly) -> (Vec<Step>, usize) {
    let on_line = form.compose_xy(&Poly::one(), &Poly::var(Var::T));
    let split = rational_roots_poly(&on_line, Var::T);
    let mut steps: Vec<Step> = split.roots.into_iter().map(Step::Finite).collect();
    if form.terms().all(|(m, _)| m.exp(Var::X) > 0) {
        steps.push(Step::Infinity);
    }
    (steps, split.residual_degree)
}

/// The point whose maximal ideal is generated by `p1` and `p2`, found by
/// breadth-first descent from the root.
pub fn locate(p1: &RatFunc, p2: &RatFunc, depth_cap: usize) -> Result<Point> {
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::NotFound("parameters must be nonzero".into()));
    }
    if p1.contains_var(Var::A) || p2.contains_var(Var::A) {
        return Err(Error::Parametric);
    }
    let mut hits: Vec<Point> = Vec::new();
    let mut queue = VecDeque::from([Point::root()]);
    let mut overflow = Vec::new();
    while let Some(pt) = queue.pop_front() {
        let e1 = pt.express(p1);
        let e2 = pt.express(p2);
        let c1 = classify(&e1);
        let c2 = classify(&e2);
        use Cls::*;
        match (c1, c2) {
            (Unit | Pole, _) | (_, Unit | Pole) => continue,
            (Zero, Zero) => {
                if independent_linear_parts(&e1, &e2) {
                    hits.push(pt);
                }
                continue;
            }
            _ => {}
        }
        let mut cands: Option<BTreeSet<Step>> = None;
        for (e, c) in [(&e1, c1), (&e2, c2)] {
            if c != Undetermined {
                continue;
            }
            let order = e.order_at_origin()?;
            if order > 0 {
                continue;
            }
            let set = candidate_children(e).0.into_iter().collect();
            cands = Some(match cands {
                None => set,
                Some(prev) => prev.intersection(&set).cloned().collect(),
            });
        }
        let Some(cands) = cands else {
            return Err(Error::Ambiguous(format!(
                "both elements have positive order without being regular at {pt}"
            )));
        };
        if pt.level() >= depth_cap {
            if !cands.is_empty() {
                overflow.push(pt.to_string());
            }
            continue;
        }
        for s in cands {
            queue.push_back(pt.child(&s));
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 if !overflow.is_empty() => Err(Error::DepthExceeded {
            cap: depth_cap,
            open: overflow,
        }),
        0 => Err(Error::NotFound(
            "the elements are not regular parameters of any point".into(),
        )),
        _ => Err(Error::Ambiguous(format!(
            "several points fit: {}",
            hits.iter()
                .map(Point::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Cls {
    Zero,
    Pole,
    Unit,
    Undetermined,
}

/// Reads the position from the constant terms of a reduced expression.
pub(crate) fn classify(e: &RatFunc) -> Cls {
    let f0 = e.num().at_origin().is_zero();
    let g0 = e.den().at_origin().is_zero();
    match (f0, g0) {
        (false, false) => Cls::Unit,
        (true, false) => Cls::Zero,
        (false, true) => Cls::Pole,
        (true, true) => Cls::Undetermined,
    }
}

/// Children at which numerator or denominator keeps vanishing, plus the
/// degree of any direction without a rational coordinate.
pub(crate) fn candidate_children(e: &RatFunc) -> (Vec<Step>, usize) {
    let mut out: BTreeSet<Step> = BTreeSet::new();
    let mut irrational = 0;
    for p in [e.num(), e.den()] {
        if let Some(form) = p.lowest_form() {
            let (steps, rest) = directions(&form);
            out.extend(steps);
            irrational += rest;
        }
    }
    (out.into_iter().collect(), irrational)
}

fn independent_linear_parts(e1: &RatFunc, e2: &RatFunc) -> bool {
    let lin = |e: &RatFunc| {
        let l = e.num().linear_part();
        let c = e.den().constant_coeff();
        (
            l.coeff(&Monomial::var(Var::X, 1)) / &c,
            l.coeff(&Monomial::var(Var::Y, 1)) / &c,
        )
    };
    let (a, b) = lin(e1);
    let (c, d) = lin(e2);
    !(a * d - b * c).is_zero()
}
