//! Valuation overrings of `D` beyond the tree points: prime divisors of the
//! first kind (curves) and second kind (order valuations of points), and
//! minimal valuations given by an infinite branch of the tree.
//!
//! Minimal valuations are represented by an eventually periodic path or by
//! the branch of a curve through the origin, expanded lazily.

use std::fmt;
use std::sync::Mutex;

use crate::arith::{gcd, Poly, RatFunc, Var};
use crate::error::{Error, Result};
use crate::proximity::{
    check_curve, first_kind_contains, is_square_free, second_kind_contains, strict_step,
};
use crate::tree::{directions, path_to_string, Point, Step};

/// Levels a curve branch is expanded before a comparison gives up.
pub const COMPARE_CAP: usize = 64;

#[derive(Clone, Debug)]
pub enum Valuation {
    FirstKind(Poly),
    SecondKind(Point),
    /// The branch `prefix · period^ω`, stored with a primitive period and
    /// the shortest prefix.
    Periodic {
        prefix: Vec<Step>,
        period: Vec<Step>,
    },
    CurveBranch(CurveBranch),
}

impl Valuation {
    pub fn first_kind(h: Poly) -> Result<Valuation> {
        check_curve(&h)?;
        if !is_square_free(&h) {
            return Err(Error::NotSquareFree);
        }
        Ok(Valuation::FirstKind(h))
    }

    pub fn second_kind(alpha: Point) -> Valuation {
        Valuation::SecondKind(alpha)
    }

    /// The monomial valuation `v(x) = a`, `v(y) = b`. With integer weights
    /// the expansion always terminates, so this is the order valuation of
    /// the terminal point.
    pub fn monomial(a: u64, b: u64) -> Result<Valuation> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidDescriptor(
                "monomial weights must be positive".into(),
            ));
        }
        Ok(Valuation::SecondKind(monomial_path(a, b).1))
    }

    pub fn periodic(prefix: Vec<Step>, period: Vec<Step>) -> Result<Valuation> {
        if period.is_empty() {
            return Err(Error::InvalidDescriptor("empty period".into()));
        }
        let (prefix, period) = canonical_periodic(prefix, period);
        Ok(Valuation::Periodic { prefix, period })
    }

    pub fn curve(h: Poly) -> Result<Valuation> {
        Ok(Valuation::CurveBranch(CurveBranch::new(h)?))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Valuation::FirstKind(_) => "first",
            Valuation::SecondKind(_) => "second",
            Valuation::Periodic { .. } => "minimal",
            Valuation::CurveBranch(_) => "curve",
        }
    }

    pub fn is_minimal(&self) -> bool {
        matches!(self, Valuation::Periodic { .. } | Valuation::CurveBranch(_))
    }

    /// Step taken at `level` (0-based) by the branch this valuation follows.
    /// `None` past the end of a second-kind path.
    pub fn step_at(&self, level: usize) -> Result<Option<Step>> {
        match self {
            Valuation::FirstKind(_) => Err(Error::NonDominating),
            Valuation::SecondKind(a) => Ok(a.path().get(level).cloned()),
            Valuation::Periodic { prefix, period } => Ok(Some(if level < prefix.len() {
                prefix[level].clone()
            } else {
                period[(level - prefix.len()) % period.len()].clone()
            })),
            Valuation::CurveBranch(c) => c.step_at(level).map(Some),
        }
    }

    /// The first `n` steps of a minimal valuation's path (or fewer for a
    /// second-kind valuation).
    pub fn path_prefix(&self, n: usize) -> Result<Vec<Step>> {
        let mut out = Vec::with_capacity(n);
        for l in 0..n {
            match self.step_at(l)? {
                Some(s) => out.push(s),
                None => break,
            }
        }
        Ok(out)
    }

    /// The point of the branch at `level`.
    pub fn point_at(&self, level: usize) -> Result<Point> {
        let path = self.path_prefix(level)?;
        if path.len() < level {
            return Err(Error::InvalidDescriptor(format!(
                "{self} has no point at level {level}"
            )));
        }
        Ok(Point::from_path(&path))
    }

    /// Is `beta` a subring of this valuation ring?
    pub fn contains_point(&self, beta: &Point) -> Result<bool> {
        match self {
            Valuation::SecondKind(a) => Ok(second_kind_contains(a, beta)),
            Valuation::FirstKind(h) => first_kind_contains(h, beta),
            _ => self.on_path(beta),
        }
    }

    /// Does this valuation ring dominate `beta`?
    pub fn dominates_point(&self, beta: &Point) -> Result<bool> {
        match self {
            Valuation::FirstKind(_) => Err(Error::NonDominating),
            Valuation::SecondKind(a) => Ok(beta.is_prefix_of(a)),
            _ => self.on_path(beta),
        }
    }

    fn on_path(&self, beta: &Point) -> Result<bool> {
        Ok(self.path_prefix(beta.level())? == beta.path())
    }

    /// For a minimal valuation, the form `(prefix, period)` when it is known
    /// to be eventually periodic within `cap` levels.
    pub fn periodic_form(&self, cap: usize) -> Result<Option<(Vec<Step>, Vec<Step>)>> {
        match self {
            Valuation::Periodic { prefix, period } => Ok(Some((prefix.clone(), period.clone()))),
            Valuation::CurveBranch(c) => {
                c.expand(cap)?;
                Ok(c.zero_tail_from()
                    .map(|k| canonical_periodic(c.steps(k).expect("expanded"), vec![Step::int(0)])))
            }
            _ => Ok(None),
        }
    }

    /// Whether two descriptors denote the same valuation ring.
    pub fn equivalent(&self, other: &Valuation) -> Result<bool> {
        use Valuation::*;
        match (self, other) {
            (FirstKind(g), FirstKind(h)) => Ok(g.monic() == h.monic()),
            (SecondKind(a), SecondKind(b)) => Ok(a == b),
            (Periodic { .. }, Periodic { .. }) => Ok(self.same_structure(other)),
            (CurveBranch(c), CurveBranch(d)) => {
                // each curve has a single branch at the origin, so they agree
                // exactly when they share a factor through the origin
                let g = gcd(c.h(), d.h())?;
                Ok(g.at_origin().is_zero() && !g.is_constant())
            }
            (CurveBranch(c), Periodic { .. }) | (Periodic { .. }, CurveBranch(c)) => {
                let per = if matches!(self, Periodic { .. }) {
                    self
                } else {
                    other
                };
                for l in 0..COMPARE_CAP {
                    if c.step_at(l)? != per.step_at(l)?.expect("infinite path") {
                        return Ok(false);
                    }
                }
                let curve = Valuation::CurveBranch(c.clone());
                match curve.periodic_form(COMPARE_CAP)? {
                    Some((prefix, period)) => {
                        let Periodic {
                            prefix: p,
                            period: q,
                        } = per
                        else {
                            unreachable!()
                        };
                        Ok(&prefix == p && &period == q)
                    }
                    None => Err(Error::Undecided {
                        cap: COMPARE_CAP,
                        what: format!("whether {c} follows {per}"),
                    }),
                }
            }
            _ => Ok(false),
        }
    }

    fn same_structure(&self, other: &Valuation) -> bool {
        match (self, other) {
            (
                Valuation::Periodic {
                    prefix: a,
                    period: b,
                },
                Valuation::Periodic {
                    prefix: c,
                    period: d,
                },
            ) => a == c && b == d,
            _ => false,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::FirstKind(h) => write!(f, "first({h})"),
            Valuation::SecondKind(a) => write!(f, "ord{a}"),
            Valuation::Periodic { prefix, period } => {
                write!(
                    f,
                    "minimal{}{}^w",
                    path_to_string(prefix),
                    path_to_string(period)
                )
            }
            Valuation::CurveBranch(c) => write!(f, "{c}"),
        }
    }
}

/// Smallest period and shortest prefix describing the same infinite path.
pub fn canonical_periodic(mut prefix: Vec<Step>, mut period: Vec<Step>) -> (Vec<Step>, Vec<Step>) {
    let n = period.len();
    if let Some(d) =
        (1..=n).find(|d| n.is_multiple_of(*d) && (0..n).all(|i| period[i] == period[i % d]))
    {
        period.truncate(d);
    }
    while let Some(last) = prefix.last() {
        if *last != period[period.len() - 1] {
            break;
        }
        let s = prefix.pop().unwrap();
        period.pop();
        period.insert(0, s);
    }
    (prefix, period)
}

/// Euclidean expansion of the monomial valuation `v(x) = a`, `v(y) = b`.
pub fn monomial_path(a: u64, b: u64) -> (Vec<Step>, Point) {
    assert!(a > 0 && b > 0, "monomial weights must be positive");
    let (mut a, mut b) = (a, b);
    let mut path = Vec::new();
    while a != b {
        if a < b {
            path.push(Step::int(0));
            b -= a;
        } else {
            path.push(Step::Infinity);
            (a, b) = (b, a - b);
        }
    }
    let p = Point::from_path(&path);
    (path, p)
}

/// Value of the monomial valuation with weights `wx`, `wy` on `f`.
pub fn monomial_value(f: &RatFunc, wx: i64, wy: i64) -> Result<i64> {
    let v = |p: &Poly| {
        p.terms()
            .map(|(m, _)| wx * m.exp(Var::X) as i64 + wy * m.exp(Var::Y) as i64)
            .min()
    };
    let n = v(f.num()).ok_or(Error::OrderOfZero)?;
    Ok(n - v(f.den()).expect("nonzero denominator"))
}

/// Value of the monomial valuation in the coordinates `u = x + c*y`, `y`,
/// with weights `wu`, `wy`.
pub fn shifted_monomial_value(f: &RatFunc, c: &crate::Rational, wu: i64, wy: i64) -> Result<i64> {
    let x = &Poly::x() - &Poly::y().scale(c);
    let g = f.compose_xy(&x, &Poly::y())?;
    monomial_value(&g, wu, wy)
}

/// Next step of the branch of the curve whose strict transform at `alpha` is `s`.
pub(crate) fn branch_step_of(s: &Poly, alpha: &str) -> Result<Step> {
    if !s.at_origin().is_zero() {
        return Err(Error::OffBranch(alpha.to_string()));
    }
    let form = s.lowest_form().expect("nonzero transform");
    let (steps, residual) = directions(&form);
    match (steps.len(), residual) {
        (1, 0) => Ok(steps.into_iter().next().unwrap()),
        (0, _) => Err(Error::NoCandidate {
            point: alpha.to_string(),
            reason: "tangent directions are not rational".into(),
        }),
        _ => {
            let mut names: Vec<String> = steps.iter().map(Step::to_string).collect();
            if residual > 0 {
                names.push("irrational".into());
            }
            Err(Error::MultipleCandidates {
                point: alpha.to_string(),
                steps: names,
            })
        }
    }
}

/// The step at `alpha` along which the curve `h = 0` continues.
pub fn branch_step(h: &Poly, alpha: &Point) -> Result<Step> {
    let s = crate::proximity::strict_transform(h, alpha)?;
    branch_step_of(&s, &alpha.to_string())
}

/// The branch of a curve through the origin, expanded on demand.
pub struct CurveBranch {
    h: Poly,
    cache: Mutex<BranchCache>,
}

#[derive(Clone)]
struct BranchCache {
    steps: Vec<Step>,
    transform: Poly,
    zero_tail_from: Option<usize>,
    failure: Option<Error>,
}

/// The transform is the second parameter times a unit: the branch is the
/// line `q = 0` from here on.
fn is_second_axis(s: &Poly) -> bool {
    match s.div_exact(&Poly::y()) {
        Some(w) => !w.at_origin().is_zero(),
        None => false,
    }
}

impl CurveBranch {
    pub fn new(h: Poly) -> Result<CurveBranch> {
        check_curve(&h)?;
        if !is_square_free(&h) {
            return Err(Error::NotSquareFree);
        }
        let zero_tail_from = is_second_axis(&h).then_some(0);
        Ok(CurveBranch {
            cache: Mutex::new(BranchCache {
                steps: Vec::new(),
                transform: h.clone(),
                zero_tail_from,
                failure: None,
            }),
            h,
        })
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    fn expand(&self, n: usize) -> Result<()> {
        let mut c = self.cache.lock().expect("branch cache poisoned");
        while c.steps.len() < n {
            if c.zero_tail_from.is_some() {
                c.steps.push(Step::int(0));
                continue;
            }
            if let Some(e) = &c.failure {
                return Err(e.clone());
            }
            match branch_step_of(&c.transform, &path_to_string(&c.steps)) {
                Ok(s) => {
                    c.transform = strict_step(&c.transform, &s);
                    c.steps.push(s);
                    if is_second_axis(&c.transform) {
                        c.zero_tail_from = Some(c.steps.len());
                    }
                }
                Err(e) => {
                    c.failure = Some(e.clone());
                    return Err(e);
                }
            }
        }
        Ok(())
    }

    pub fn step_at(&self, level: usize) -> Result<Step> {
        self.expand(level + 1)?;
        Ok(self.cache.lock().expect("branch cache poisoned").steps[level].clone())
    }

    pub fn steps(&self, n: usize) -> Result<Vec<Step>> {
        self.expand(n)?;
        Ok(self.cache.lock().expect("branch cache poisoned").steps[..n].to_vec())
    }

    /// Level from which every step is `0`, once the expansion has seen it.
    pub fn zero_tail_from(&self) -> Option<usize> {
        self.cache
            .lock()
            .expect("branch cache poisoned")
            .zero_tail_from
    }
}

impl Clone for CurveBranch {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("branch cache poisoned").clone();
        CurveBranch {
            h: self.h.clone(),
            cache: Mutex::new(cache),
        }
    }
}

impl fmt::Debug for CurveBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveBranch({})", self.h)
    }
}

impl fmt::Display for CurveBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "branch({})", self.h)
    }
}
