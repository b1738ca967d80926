//! Patch limits, Zariski closures, irreducible components and Noetherian
//! certificates for family sets.
//!
//! The closure of `S` in the tree is the downset of `S` together with the
//! downsets of its limit valuations. A limit of the second kind `ord_α`
//! appears exactly when infinitely many children of `α` lie below members of
//! `S`; a minimal limit appears when `S` has members arbitrarily deep along
//! its branch.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::family::{on_branch, Count, Family, FamilySet};
use crate::proximity::{ray_shape, second_kind_contains};
use crate::tree::{Point, Step};
use crate::valuation::{Valuation, COMPARE_CAP};

pub fn patch_limit_points(s: &FamilySet) -> Result<Vec<Valuation>> {
    let mut out: Vec<Valuation> = Vec::new();
    let mut candidates = BTreeSet::new();
    for part in &s.parts {
        if let Family::Fiber { base, .. } = part {
            for l in 0..=base.level() {
                candidates.insert(base.prefix(l));
            }
        }
    }
    for alpha in candidates {
        if s.q1_downset_count(&alpha)? == Count::Infinite {
            push_distinct(&mut out, Valuation::SecondKind(alpha))?;
        }
    }
    for part in &s.parts {
        if let Family::Chain { valuation, .. } | Family::Siblings { valuation, .. } = part {
            push_distinct(&mut out, valuation.clone())?;
        }
    }
    Ok(out)
}

fn push_distinct(out: &mut Vec<Valuation>, v: Valuation) -> Result<()> {
    for w in out.iter() {
        if w.equivalent(&v)? {
            return Ok(());
        }
    }
    out.push(v);
    Ok(())
}

/// A closed subset of the tree: the downset of `residual` together with the
/// downsets of finitely many points and valuations.
#[derive(Clone, Debug, Default)]
pub struct ClosedSet {
    pub residual: FamilySet,
    pub points: BTreeSet<Point>,
    /// Second-kind valuations; each contributes its prefixes and `P(α)`.
    pub divisors: Vec<Valuation>,
    /// Minimal valuations; each contributes the points of its branch.
    pub minimals: Vec<Valuation>,
}

impl ClosedSet {
    pub fn from_points(points: impl IntoIterator<Item = Point>) -> ClosedSet {
        ClosedSet {
            points: points.into_iter().collect(),
            ..ClosedSet::default()
        }
    }

    pub fn contains(&self, beta: &Point) -> Result<bool> {
        if self.residual.downset_member(beta)? {
            return Ok(true);
        }
        if self.points.iter().any(|p| beta.is_prefix_of(p)) {
            return Ok(true);
        }
        for d in &self.divisors {
            if let Valuation::SecondKind(a) = d {
                if second_kind_contains(a, beta) {
                    return Ok(true);
                }
            }
        }
        for m in &self.minimals {
            if on_branch(m, beta.path())? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

pub fn zariski_closure(s: &FamilySet) -> Result<ClosedSet> {
    let (minimals, divisors) = patch_limit_points(s)?
        .into_iter()
        .partition(Valuation::is_minimal);
    Ok(ClosedSet {
        residual: s.clone(),
        points: BTreeSet::new(),
        divisors,
        minimals,
    })
}

pub fn closure_member(c: &ClosedSet, beta: &Point) -> Result<bool> {
    c.contains(beta)
}

/// Something whose downset is an irreducible closed set.
#[derive(Clone, Debug)]
pub enum Generator {
    Point(Point),
    Valuation(Valuation),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Point(p) => write!(f, "{p}"),
            Generator::Valuation(v) => write!(f, "{v}"),
        }
    }
}

fn is_ray_tail(tail: &[Step]) -> bool {
    // the empty tail or ∞ followed by zeros: the shapes of P(base) below a child
    let mut with_child = vec![Step::int(0)];
    with_child.extend_from_slice(tail);
    ray_shape(&with_child).is_some()
}

fn part_generator(part: &Family) -> Result<Generator> {
    match part {
        Family::Singleton(a) => Ok(Generator::Point(a.clone())),
        Family::Fiber { base, tail, .. } if is_ray_tail(tail) => {
            Ok(Generator::Valuation(Valuation::SecondKind(base.clone())))
        }
        Family::Chain { valuation, .. } => Ok(Generator::Valuation(valuation.clone())),
        other => Err(Error::InfiniteComponents(other.to_string())),
    }
}

/// `↓g ⊆ ↓h` inside the tree.
fn generator_le(g: &Generator, h: &Generator) -> Result<bool> {
    use Generator as G;
    use Valuation::*;
    Ok(match (g, h) {
        (G::Point(p), G::Point(q)) => p.is_prefix_of(q),
        (G::Point(p), G::Valuation(SecondKind(a))) => second_kind_contains(a, p),
        (G::Point(p), G::Valuation(v)) if v.is_minimal() => on_branch(v, p.path())?,
        (G::Valuation(SecondKind(a)), G::Valuation(SecondKind(b))) => a == b,
        (G::Valuation(v), G::Valuation(SecondKind(a))) if v.is_minimal() => {
            // branches inside ord_α run α·s·∞·0·0·...
            match v.periodic_form(a.level() + 2 + COMPARE_CAP)? {
                Some((prefix, period)) => {
                    prefix.len() == a.level() + 2
                        && prefix.starts_with(a.path())
                        && prefix.last() == Some(&Step::Infinity)
                        && period == [Step::int(0)]
                }
                None => false,
            }
        }
        (G::Valuation(v), G::Valuation(w)) if v.is_minimal() && w.is_minimal() => {
            v.equivalent(w)?
        }
        _ => false,
    })
}

/// Generators whose downsets cover the closed set, before reduction.
fn all_generators(c: &ClosedSet) -> Result<Vec<Generator>> {
    let mut gens: Vec<Generator> = Vec::new();
    gens.extend(c.points.iter().cloned().map(Generator::Point));
    gens.extend(c.divisors.iter().cloned().map(Generator::Valuation));
    gens.extend(c.minimals.iter().cloned().map(Generator::Valuation));
    for part in &c.residual.parts {
        gens.push(part_generator(part)?);
    }
    Ok(gens)
}

/// The maximal generators, or an error naming a part with infinitely many
/// components.
pub fn irreducible_components(c: &ClosedSet) -> Result<Vec<Generator>> {
    let gens = all_generators(c)?;
    let mut keep = Vec::new();
    'outer: for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if i == j || !generator_le(g, h)? {
                continue;
            }
            // strictly below, or equal to an earlier copy
            if !generator_le(h, g)? || j < i {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    Ok(keep)
}

/// The single generator of an irreducible closed set.
pub fn is_irreducible(c: &ClosedSet) -> Result<Option<Generator>> {
    match irreducible_components(c) {
        Ok(mut v) if v.len() == 1 => Ok(v.pop()),
        Ok(_) | Err(Error::InfiniteComponents(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct NoetherianCertificate {
    pub verdict: bool,
    /// Valuations whose downsets cover every member (when the verdict is true).
    pub covering: Vec<Valuation>,
    /// A part that no finite covering can absorb (when the verdict is false).
    pub witness: Option<Family>,
}

pub fn is_noetherian(s: &FamilySet) -> Result<NoetherianCertificate> {
    let mut covering: Vec<Valuation> = Vec::new();
    let mut singletons = Vec::new();
    for part in &s.parts {
        match part {
            Family::Singleton(a) => singletons.push(a.clone()),
            Family::Fiber { base, tail, .. } if is_ray_tail(tail) => {
                push_distinct(&mut covering, Valuation::SecondKind(base.clone()))?;
            }
            Family::Chain { valuation, .. } => push_distinct(&mut covering, valuation.clone())?,
            other => {
                return Ok(NoetherianCertificate {
                    verdict: false,
                    covering: Vec::new(),
                    witness: Some(other.clone()),
                })
            }
        }
    }
    for a in singletons {
        let mut covered = false;
        for v in &covering {
            if v.contains_point(&a)? {
                covered = true;
                break;
            }
        }
        if !covered {
            push_distinct(&mut covering, Valuation::SecondKind(a))?;
        }
    }
    Ok(NoetherianCertificate {
        verdict: true,
        covering,
        witness: None,
    })
}
