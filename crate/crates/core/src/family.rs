//! Finite descriptions of (possibly infinite) sets of tree points.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::tree::{path_to_string, Point, Step};
use crate::valuation::{Valuation, COMPARE_CAP};

/// How a fiber coordinate `t` relates to an external parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberLabel {
    /// `a = -1/t`, with `t = ∞` giving `a = 0` and `t = 0` no value of `a`.
    NegInverse,
}

impl FiberLabel {
    pub fn param_of(self, t: &Step) -> Option<Rational> {
        match (self, t) {
            (FiberLabel::NegInverse, Step::Infinity) => Some(Rational::zero()),
            (FiberLabel::NegInverse, Step::Finite(b)) if b.is_zero() => None,
            (FiberLabel::NegInverse, Step::Finite(b)) => Some(-b.recip()),
        }
    }

    pub fn step_of(self, a: &Rational) -> Step {
        match self {
            FiberLabel::NegInverse if a.is_zero() => Step::Infinity,
            FiberLabel::NegInverse => Step::Finite(-a.recip()),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    Singleton(Point),
    /// `{ base·⟨t⟩·tail : t ∉ excluded }`.
    Fiber {
        base: Point,
        excluded: BTreeSet<Step>,
        tail: Vec<Step>,
        label: Option<FiberLabel>,
    },
    /// Points of a minimal valuation's branch at levels `>= from`.
    Chain {
        valuation: Valuation,
        from: usize,
    },
    /// `{ α_i·⟨s_i + offset⟩ : i >= 1 }` along a minimal valuation's branch
    /// `α_0 ⊂ α_1 ⊂ ...` with steps `s_i`; `∞ + offset` means `offset`.
    Siblings {
        valuation: Valuation,
        offset: Rational,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(usize),
    Infinite,
}

impl Family {
    pub fn fiber(base: Point, excluded: impl IntoIterator<Item = Step>, tail: Vec<Step>) -> Family {
        Family::Fiber {
            base,
            excluded: excluded.into_iter().collect(),
            tail,
            label: None,
        }
    }

    pub fn chain(valuation: Valuation, from: usize) -> Result<Family> {
        require_minimal(&valuation)?;
        Ok(Family::Chain { valuation, from })
    }

    pub fn siblings(valuation: Valuation, offset: Rational) -> Result<Family> {
        require_minimal(&valuation)?;
        if offset.is_zero() {
            return Err(Error::InvalidDescriptor(
                "sibling offset must be nonzero".into(),
            ));
        }
        Ok(Family::Siblings { valuation, offset })
    }

    pub fn with_label(self, l: FiberLabel) -> Family {
        match self {
            Family::Fiber {
                base,
                excluded,
                tail,
                ..
            } => Family::Fiber {
                base,
                excluded,
                tail,
                label: Some(l),
            },
            other => other,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Singleton(_) => "singleton",
            Family::Fiber { .. } => "fiber",
            Family::Chain { .. } => "chain",
            Family::Siblings { .. } => "siblings",
        }
    }

    pub fn member(&self, beta: &Point) -> Result<bool> {
        match self {
            Family::Singleton(a) => Ok(a == beta),
            Family::Fiber { .. } => Ok(self
                .pattern()
                .is_some_and(|p| p.len() == beta.level() && p.matches_prefix(beta.path()))),
            Family::Chain { valuation, from } => {
                Ok(beta.level() >= *from && on_branch(valuation, beta.path())?)
            }
            Family::Siblings { valuation, offset } => {
                let l = beta.level();
                if l < 2 {
                    return Ok(false);
                }
                let path = beta.path();
                let s = valuation
                    .step_at(l - 1)?
                    .expect("minimal branch is infinite");
                Ok(
                    path[l - 1] == sibling_step(&s, offset)
                        && on_branch(valuation, &path[..l - 1])?,
                )
            }
        }
    }

    /// Is `beta` at or below some member?
    pub fn downset_member(&self, beta: &Point) -> Result<bool> {
        match self {
            Family::Singleton(a) => Ok(beta.is_prefix_of(a)),
            Family::Fiber { .. } => {
                let p = self.pattern().expect("fiber has a pattern");
                Ok(beta.level() <= p.len() && p.matches_prefix(beta.path()))
            }
            Family::Chain { valuation, .. } => on_branch(valuation, beta.path()),
            Family::Siblings { valuation, .. } => {
                Ok(on_branch(valuation, beta.path())? || self.member(beta)?)
            }
        }
    }

    /// Steps `s` such that `alpha·⟨s⟩` is in the downset, or `None` when
    /// there are infinitely many.
    pub fn q1_steps(&self, alpha: &Point) -> Result<Option<BTreeSet<Step>>> {
        let mut out = BTreeSet::new();
        let l = alpha.level();
        match self {
            Family::Singleton(g) => {
                if alpha.is_prefix_of(g) && l < g.level() {
                    out.insert(g.path()[l].clone());
                }
            }
            Family::Fiber { base, .. } => {
                if alpha == base {
                    return Ok(None);
                }
                let p = self.pattern().expect("fiber has a pattern");
                if l < p.len() && p.matches_prefix(alpha.path()) {
                    if l < base.level() {
                        out.insert(base.path()[l].clone());
                    } else {
                        out.extend(p.0[l].fixed().cloned());
                    }
                }
            }
            Family::Chain { valuation, .. } => {
                if on_branch(valuation, alpha.path())? {
                    out.insert(valuation.step_at(l)?.expect("infinite branch"));
                }
            }
            Family::Siblings { valuation, offset } => {
                if on_branch(valuation, alpha.path())? {
                    let s = valuation.step_at(l)?.expect("infinite branch");
                    if l >= 1 {
                        out.insert(sibling_step(&s, offset));
                    }
                    out.insert(s);
                }
            }
        }
        Ok(Some(out))
    }

    fn pattern(&self) -> Option<Pattern> {
        match self {
            Family::Singleton(a) => {
                Some(Pattern(a.path().iter().cloned().map(Slot::Fixed).collect()))
            }
            Family::Fiber {
                base,
                excluded,
                tail,
                ..
            } => {
                let mut v: Vec<Slot> = base.path().iter().cloned().map(Slot::Fixed).collect();
                v.push(Slot::Wild(excluded.clone()));
                v.extend(tail.iter().cloned().map(Slot::Fixed));
                Some(Pattern(v))
            }
            _ => None,
        }
    }

    /// Members up to `max_level`, with fiber coordinates drawn from
    /// `alphabet` plus `∞`.
    pub fn enumerate(&self, max_level: usize, alphabet: &[Step]) -> Result<Vec<Point>> {
        let mut out = Vec::new();
        match self {
            Family::Singleton(a) => {
                if a.level() <= max_level {
                    out.push(a.clone());
                }
            }
            Family::Fiber {
                base,
                excluded,
                tail,
                ..
            } => {
                if base.level() + 1 + tail.len() <= max_level {
                    let mut steps: BTreeSet<Step> = alphabet.iter().cloned().collect();
                    steps.insert(Step::Infinity);
                    for s in steps.into_iter().filter(|s| !excluded.contains(s)) {
                        let mut p = base.child(&s);
                        for t in tail {
                            p = p.child(t);
                        }
                        out.push(p);
                    }
                }
            }
            Family::Chain { valuation, from } => {
                let path = valuation.path_prefix(max_level)?;
                for l in *from..=max_level {
                    out.push(Point::from_path(&path[..l]));
                }
            }
            Family::Siblings { valuation, offset } => {
                let path = valuation.path_prefix(max_level)?;
                for i in 1..max_level {
                    let mut p = path[..i].to_vec();
                    p.push(sibling_step(&path[i], offset));
                    out.push(Point::from_path(&p));
                }
            }
        }
        Ok(out)
    }
}

fn require_minimal(v: &Valuation) -> Result<()> {
    if v.is_minimal() {
        Ok(())
    } else {
        Err(Error::InvalidDescriptor(format!(
            "{v} is not a minimal valuation"
        )))
    }
}

pub fn sibling_step(s: &Step, offset: &Rational) -> Step {
    match s {
        Step::Finite(b) => Step::Finite(b + offset),
        Step::Infinity => Step::Finite(offset.clone()),
    }
}

/// Does `path` follow the branch of `v`?
pub fn on_branch(v: &Valuation, path: &[Step]) -> Result<bool> {
    for (l, s) in path.iter().enumerate() {
        if v.step_at(l)?.as_ref() != Some(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Slot {
    Fixed(Step),
    Wild(BTreeSet<Step>),
}

impl Slot {
    fn fixed(&self) -> Option<&Step> {
        match self {
            Slot::Fixed(s) => Some(s),
            Slot::Wild(_) => None,
        }
    }

    fn admits(&self, s: &Step) -> bool {
        match self {
            Slot::Fixed(f) => f == s,
            Slot::Wild(e) => !e.contains(s),
        }
    }

    fn unifies(&self, other: &Slot) -> bool {
        match (self, other) {
            (Slot::Fixed(s), o) | (o, Slot::Fixed(s)) => o.admits(s),
            // complements of finite sets always meet
            (Slot::Wild(_), Slot::Wild(_)) => true,
        }
    }
}

/// A path with at most one wildcard position.
#[derive(Clone, Debug)]
struct Pattern(Vec<Slot>);

impl Pattern {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn matches_prefix(&self, path: &[Step]) -> bool {
        path.len() <= self.len() && path.iter().zip(&self.0).all(|(s, slot)| slot.admits(s))
    }

    /// Concrete paths covering every way the wildcard can relate to the
    /// given distinguished steps at its position.
    fn representatives(
        &self,
        special: impl Fn(usize) -> Result<Vec<Step>>,
    ) -> Result<Vec<Vec<Step>>> {
        let Some(w) = self.0.iter().position(|s| matches!(s, Slot::Wild(_))) else {
            return Ok(vec![self
                .0
                .iter()
                .map(|s| s.fixed().unwrap().clone())
                .collect()]);
        };
        let Slot::Wild(excl) = &self.0[w] else {
            unreachable!()
        };
        let mut choices: BTreeSet<Step> = special(w)?.into_iter().collect();
        let taken: BTreeSet<Step> = choices.union(excl).cloned().collect();
        let mut n = 0i64;
        while taken.contains(&Step::int(n)) {
            n += 1;
        }
        choices.insert(Step::int(n));
        Ok(choices
            .into_iter()
            .filter(|c| !excl.contains(c))
            .map(|c| {
                self.0
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        if i == w {
                            c.clone()
                        } else {
                            s.fixed().unwrap().clone()
                        }
                    })
                    .collect()
            })
            .collect())
    }
}

/// Can a member of `p` be a proper prefix of a member of `q`?
fn pattern_below(p: &Pattern, q: &Pattern) -> bool {
    p.len() < q.len() && p.0.iter().zip(&q.0).all(|(a, b)| a.unifies(b))
}

/// Number of leading steps of `path` that follow `v`.
fn agreement(v: &Valuation, path: &[Step]) -> Result<usize> {
    for (l, s) in path.iter().enumerate() {
        if v.step_at(l)?.as_ref() != Some(s) {
            return Ok(l);
        }
    }
    Ok(path.len())
}

fn comparable_with_chain(path: &[Step], v: &Valuation, from: usize) -> Result<bool> {
    let k = agreement(v, path)?;
    Ok(k == path.len() || k >= from)
}

fn comparable_with_siblings(path: &[Step], v: &Valuation, offset: &Rational) -> Result<bool> {
    let k = agreement(v, path)?;
    if k == path.len() {
        return Ok(true);
    }
    let s = v.step_at(k)?.expect("infinite branch");
    Ok(k >= 1 && path.len() > k + 1 && path[k] == sibling_step(&s, offset))
}

/// First level where two minimal branches differ, `None` if they coincide.
fn divergence(v: &Valuation, w: &Valuation) -> Result<Option<usize>> {
    if v.equivalent(w)? {
        return Ok(None);
    }
    let cap = 64 * COMPARE_CAP;
    for l in 0..cap {
        if v.step_at(l)? != w.step_at(l)? {
            return Ok(Some(l));
        }
    }
    Err(Error::Undecided {
        cap,
        what: format!("where {v} and {w} diverge"),
    })
}

/// Can a member of `a` be a proper prefix of a member of `b`, or vice versa?
fn parts_comparable(a: &Family, b: &Family) -> Result<bool> {
    use Family::*;
    match (a, b) {
        (Singleton(_) | Fiber { .. }, Singleton(_) | Fiber { .. }) => {
            let (p, q) = (a.pattern().unwrap(), b.pattern().unwrap());
            Ok(pattern_below(&p, &q) || pattern_below(&q, &p))
        }
        (Chain { valuation: v, from }, Singleton(_) | Fiber { .. })
        | (Singleton(_) | Fiber { .. }, Chain { valuation: v, from }) => {
            let p = if matches!(a, Chain { .. }) { b } else { a }
                .pattern()
                .unwrap();
            for r in p.representatives(|w| Ok(vec![v.step_at(w)?.expect("infinite branch")]))? {
                if comparable_with_chain(&r, v, *from)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        (
            Siblings {
                valuation: v,
                offset,
            },
            Singleton(_) | Fiber { .. },
        )
        | (
            Singleton(_) | Fiber { .. },
            Siblings {
                valuation: v,
                offset,
            },
        ) => {
            let p = if matches!(a, Siblings { .. }) { b } else { a }
                .pattern()
                .unwrap();
            let special = |w: usize| {
                let s = v.step_at(w)?.expect("infinite branch");
                Ok(vec![sibling_step(&s, offset), s])
            };
            for r in p.representatives(special)? {
                if comparable_with_siblings(&r, v, offset)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        (
            Chain {
                valuation: v,
                from: f,
            },
            Chain {
                valuation: w,
                from: g,
            },
        ) => {
            let m = (*f).min(*g);
            Ok(on_branch(w, &v.path_prefix(m)?)?)
        }
        (
            Chain { valuation: v, from },
            Siblings {
                valuation: w,
                offset,
            },
        )
        | (
            Siblings {
                valuation: w,
                offset,
            },
            Chain { valuation: v, from },
        ) => {
            if on_branch(w, &v.path_prefix(*from)?)? {
                return Ok(true);
            }
            let k = agreement(w, &v.path_prefix(*from)?)?;
            let vs = v.step_at(k)?.expect("infinite branch");
            let ws = w.step_at(k)?.expect("infinite branch");
            Ok(k >= 1 && vs == sibling_step(&ws, offset))
        }
        (
            Siblings {
                valuation: v,
                offset: o,
            },
            Siblings {
                valuation: w,
                offset: p,
            },
        ) => {
            let Some(k) = divergence(v, w)? else {
                return Ok(false);
            };
            if k == 0 {
                return Ok(false);
            }
            let vs = v.step_at(k)?.expect("infinite branch");
            let ws = w.step_at(k)?.expect("infinite branch");
            Ok(ws == sibling_step(&vs, o) || vs == sibling_step(&ws, p))
        }
    }
}

fn self_comparable(a: &Family) -> bool {
    // fibers and singletons have members of a single level; sibling
    // members all leave the branch
    matches!(a, Family::Chain { .. })
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Singleton(a) => write!(f, "singleton{a}"),
            Family::Fiber {
                base,
                excluded,
                tail,
                ..
            } => {
                let ex: Vec<String> = excluded.iter().map(Step::to_string).collect();
                write!(
                    f,
                    "fiber({base}, excluding {{{}}}, tail {})",
                    ex.join(", "),
                    path_to_string(tail)
                )
            }
            Family::Chain { valuation, from } => write!(f, "chain({valuation}, from {from})"),
            Family::Siblings { valuation, offset } => {
                write!(f, "siblings({valuation}, offset {offset})")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilySet {
    pub parts: Vec<Family>,
}

impl FamilySet {
    pub fn new(parts: Vec<Family>) -> FamilySet {
        FamilySet { parts }
    }

    pub fn member(&self, beta: &Point) -> Result<bool> {
        for p in &self.parts {
            if p.member(beta)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn downset_member(&self, beta: &Point) -> Result<bool> {
        for p in &self.parts {
            if p.downset_member(beta)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Number of children of `alpha` that lie in the downset.
    pub fn q1_downset_count(&self, alpha: &Point) -> Result<Count> {
        let mut all = BTreeSet::new();
        for p in &self.parts {
            match p.q1_steps(alpha)? {
                None => return Ok(Count::Infinite),
                Some(s) => all.extend(s),
            }
        }
        Ok(Count::Finite(all.len()))
    }

    /// Number of children of `alpha` that are members; the literal count
    /// next to [`FamilySet::q1_downset_count`].
    pub fn q1_member_count(&self, alpha: &Point) -> Result<Count> {
        let mut all = BTreeSet::new();
        for p in &self.parts {
            if let Family::Fiber { base, tail, .. } = p {
                if base == alpha && tail.is_empty() {
                    return Ok(Count::Infinite);
                }
            }
            if let Some(steps) = p.q1_steps(alpha)? {
                for s in steps {
                    if p.member(&alpha.child(&s))? {
                        all.insert(s);
                    }
                }
            }
        }
        Ok(Count::Finite(all.len()))
    }

    /// No member is a proper prefix of another.
    pub fn pairwise_incomparable(&self) -> Result<bool> {
        for (i, a) in self.parts.iter().enumerate() {
            if self_comparable(a) {
                return Ok(false);
            }
            for b in &self.parts[i + 1..] {
                if parts_comparable(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn enumerate(&self, max_level: usize, alphabet: &[Step]) -> Result<BTreeSet<Point>> {
        let mut out = BTreeSet::new();
        for p in &self.parts {
            out.extend(p.enumerate(max_level, alphabet)?);
        }
        Ok(out)
    }
}

impl fmt::Display for FamilySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(Family::to_string).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
