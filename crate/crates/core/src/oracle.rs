//! Membership oracles for intersections of tree points, irredundance
//! certificates, and monomial semigroup membership.
//!
//! An intersection ring exists here only through its membership test: an
//! element lies in a point's ring iff its reduced denominator is a unit at
//! the origin of that point (the ring is a localization of a UFD).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::arith::{
    content_in, poly_to_string, rat, rational_roots_poly, Poly, RatFunc, Rational, Var,
};
use crate::error::{Error, Result};
use crate::family::{sibling_step, Family, FamilySet};
use crate::position::{
    position, position_of_expressed, position_parametric, special_values, xy_content, Position,
    Specialized,
};
use crate::proximity::{
    check_curve, first_kind_contains, strict_generic_step, strict_step, strict_transform,
};
use crate::tree::{apply_generic_step, apply_step, Point, Step};
use crate::valuation::{Valuation, COMPARE_CAP};

/// Depth to which sibling families are checked before the answer is flagged.
pub const DEFAULT_CHAIN_DEPTH: usize = 12;

pub fn in_point(f: &RatFunc, alpha: &Point) -> Result<bool> {
    Ok(position(alpha, f)?.in_ring())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// Member for every value of `a` except these, each with its failing outcome.
    YesExcept(Vec<(Rational, Specialized)>),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::YesExcept(v) => {
                let vals: Vec<String> = v.iter().map(|(a, s)| format!("a = {a}: {s}")).collect();
                write!(f, "yes except {}", vals.join(", "))
            }
        }
    }
}

/// Where a part's behavior departs from its generic one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locus {
    /// One member, generic `a`.
    Member,
    /// One value of `a`, generic member.
    Param(Rational),
    /// One member at one value of `a`.
    Pair(Rational),
    /// Members `base·⟨t⟩·tail` with `c(a, t) = 0`.
    Curve(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exception {
    pub locus: Locus,
    pub outcome: Specialized,
    /// A member on the locus.
    pub witness: Point,
    pub note: String,
}

impl Exception {
    fn fails(&self) -> bool {
        matches!(self.outcome, Specialized::At(p) if !p.in_ring())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartReport {
    pub kind: &'static str,
    /// Generic position; `None` when the part has no single generic member.
    pub generic: Option<Position>,
    /// A member realizing the generic position (or the failure for siblings).
    pub representative: Option<Point>,
    pub exceptions: Vec<Exception>,
    pub flags: Vec<String>,
}

impl PartReport {
    fn generic_fails(&self) -> bool {
        self.generic.is_some_and(|p| !p.in_ring())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipAnswer {
    pub verdict: Verdict,
    pub witness: Option<Point>,
    pub parts: Vec<PartReport>,
    pub flags: Vec<String>,
}

pub fn in_family(f: &RatFunc, s: &FamilySet) -> Result<MembershipAnswer> {
    in_family_with_depth(f, s, DEFAULT_CHAIN_DEPTH)
}

pub fn in_family_with_depth(f: &RatFunc, s: &FamilySet, depth: usize) -> Result<MembershipAnswer> {
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    let parts = s
        .parts
        .iter()
        .map(|p| part_report(f, p, depth))
        .collect::<Result<Vec<_>>>()?;

    let mut witness = None;
    let mut excepted: Vec<(Rational, Specialized)> = Vec::new();
    for r in &parts {
        if r.generic_fails() {
            witness = witness.or_else(|| r.representative.clone());
        }
        for e in r.exceptions.iter().filter(|e| e.fails()) {
            match &e.locus {
                Locus::Member | Locus::Curve(_) => {
                    witness = witness.or_else(|| Some(e.witness.clone()))
                }
                Locus::Param(a) | Locus::Pair(a) => {
                    if !excepted.iter().any(|(b, _)| b == a) {
                        excepted.push((a.clone(), e.outcome.clone()));
                    }
                }
            }
        }
        if r.generic.is_none() && r.representative.is_some() && witness.is_none() {
            // siblings report their first failing member as representative
            witness = r.representative.clone();
        }
    }
    excepted.sort_by(|x, y| x.0.cmp(&y.0));
    let verdict = if witness.is_some() {
        Verdict::No
    } else if excepted.is_empty() {
        Verdict::Yes
    } else {
        Verdict::YesExcept(excepted)
    };
    let flags = parts
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.flags.iter().map(move |fl| format!("part {i}: {fl}")))
        .collect();
    Ok(MembershipAnswer {
        verdict,
        witness,
        parts,
        flags,
    })
}

fn part_report(f: &RatFunc, part: &Family, depth: usize) -> Result<PartReport> {
    match part {
        Family::Singleton(alpha) => point_report("singleton", f, alpha),
        // the rings increase along the chain, so the first one is the intersection
        Family::Chain { valuation, from } => point_report("chain", f, &valuation.point_at(*from)?),
        Family::Fiber { .. } => fiber_profile(f, part).map(FiberProfile::into_report),
        Family::Siblings { valuation, offset } => siblings_report(f, valuation, offset, depth),
    }
}

fn point_report(kind: &'static str, f: &RatFunc, alpha: &Point) -> Result<PartReport> {
    let p = position_parametric(alpha, f)?;
    let exceptions = p
        .exceptions
        .into_iter()
        .map(|(a, outcome)| Exception {
            note: format!("a = {a}"),
            locus: Locus::Param(a),
            outcome,
            witness: alpha.clone(),
        })
        .collect();
    Ok(PartReport {
        kind,
        generic: Some(p.generic),
        representative: Some(alpha.clone()),
        exceptions,
        flags: Vec::new(),
    })
}

/// Walks the sibling members `β_i` of a branch `α_0 ⊂ α_1 ⊂ ...`. Once `f`
/// lies in `α_i` it lies in every later member, since `α_i ⊆ α_j ⊆ β_j`.
fn siblings_report(
    f: &RatFunc,
    v: &Valuation,
    offset: &Rational,
    depth: usize,
) -> Result<PartReport> {
    let mut report = PartReport {
        kind: "siblings",
        generic: None,
        representative: None,
        exceptions: Vec::new(),
        flags: Vec::new(),
    };
    let mut special = BTreeSet::new();
    let walk = |g: &RatFunc, special: &mut BTreeSet<Rational>| -> Result<(Option<Point>, bool)> {
        for i in 1..=depth {
            let alpha = v.point_at(i)?;
            let pa = position_parametric(&alpha, g)?;
            special.extend(pa.exceptions.iter().map(|(a, _)| a.clone()));
            if pa.generic.in_ring() {
                return Ok((None, true));
            }
            let s = v.step_at(i)?.expect("minimal branches are infinite");
            let beta = alpha.child(&sibling_step(&s, offset));
            let pb = position_parametric(&beta, g)?;
            special.extend(pb.exceptions.iter().map(|(a, _)| a.clone()));
            if !pb.generic.in_ring() {
                return Ok((Some(beta), true));
            }
        }
        Ok((None, false))
    };
    let (fail, settled) = walk(f, &mut special)?;
    if !settled {
        report.flags.push(format!("verified to depth {depth}"));
    }
    report.representative = fail;
    for a0 in special {
        let Ok(g) = f.eval_var(Var::A, &a0) else {
            continue;
        };
        if g.is_zero() {
            continue;
        }
        let (fail, _) = walk(&g, &mut BTreeSet::new())?;
        if let Some(beta) = fail {
            report.exceptions.push(Exception {
                locus: Locus::Param(a0.clone()),
                outcome: Specialized::At(position(&beta, &g)?),
                witness: beta,
                note: format!("a = {a0}"),
            });
        }
    }
    Ok(report)
}

/// Position of an element over a whole fiber, symbolic in the fiber
/// coordinate `t` and in `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberProfile {
    pub generic: Position,
    /// A member at a value of `t` outside every exceptional locus.
    pub representative: Point,
    pub exceptions: Vec<Exception>,
    /// Loci that could not be parametrized.
    pub flags: Vec<String>,
}

impl FiberProfile {
    fn into_report(self) -> PartReport {
        PartReport {
            kind: "fiber",
            generic: Some(self.generic),
            representative: Some(self.representative),
            exceptions: self.exceptions,
            flags: self.flags,
        }
    }

    pub fn position_at(&self, member: &Point) -> Position {
        self.exceptions
            .iter()
            .find(|e| e.locus == Locus::Member && &e.witness == member)
            .and_then(|e| match e.outcome {
                Specialized::At(p) => Some(p),
                _ => None,
            })
            .unwrap_or(self.generic)
    }
}

fn member_at(base: &Point, t: &Step, tail: &[Step]) -> Point {
    tail.iter().fold(base.child(t), |p, s| p.child(s))
}

/// Evaluates parameters and classifies; the reduced form is recomputed so
/// that factors appearing only after specialization cancel.
fn specialize(e: &RatFunc, vals: &[(Var, &Rational)]) -> Specialized {
    let mut num = e.num().clone();
    let mut den = e.den().clone();
    for (v, x) in vals {
        num = num.eval_var(*v, x);
        den = den.eval_var(*v, x);
    }
    if den.is_zero() {
        return Specialized::Undefined;
    }
    if num.is_zero() {
        return Specialized::Vanishes;
    }
    Specialized::At(position_of_expressed(
        &RatFunc::new(num, den).expect("nonzero denominator"),
    ))
}

fn roots_in(p: &Poly, v: Var, flags: &mut Vec<String>, what: &str) -> Vec<Rational> {
    if p.is_constant() {
        return Vec::new();
    }
    let split = rational_roots_poly(p, v);
    if split.residual_degree > 0 {
        flags.push(format!(
            "{what}: factor of degree {} without rational roots",
            split.residual_degree
        ));
    }
    split.roots
}

fn show(p: &Poly, tname: &str) -> String {
    poly_to_string(p, &["x", "y", "a", tname])
}

pub fn fiber_profile(f: &RatFunc, fiber: &Family) -> Result<FiberProfile> {
    let Family::Fiber {
        base,
        excluded,
        tail,
        label,
    } = fiber
    else {
        return Err(Error::InvalidDescriptor(format!("{fiber} is not a fiber")));
    };
    if f.is_zero() {
        return Err(Error::OrderOfZero);
    }
    let allowed = |t: &Rational| !excluded.contains(&Step::Finite(t.clone()));
    let describe_t = |t: &Rational| match label.and_then(|l| l.param_of(&Step::Finite(t.clone()))) {
        Some(b) => format!("t = {t} (b = {b})"),
        None => format!("t = {t}"),
    };

    let mut e = apply_generic_step(&base.express(f));
    for s in tail {
        e = apply_step(&e, s);
    }
    let generic = position_of_expressed(&e);
    let mut flags = Vec::new();
    let mut exceptions = Vec::new();

    let mut t_vals = BTreeSet::new();
    let mut a_vals = BTreeSet::new();
    let mut curves: Vec<Poly> = Vec::new();
    for p in [e.num(), e.den()] {
        for c in [p.at_origin(), xy_content(p)] {
            if c.is_constant() {
                continue;
            }
            let ct = content_in(&c, Var::A);
            let ca = content_in(&c, Var::T);
            t_vals.extend(roots_in(&ct, Var::T, &mut flags, "fiber coordinate"));
            a_vals.extend(roots_in(&ca, Var::A, &mut flags, "parameter"));
            let rest = c.div_exact(&(&ct * &ca)).expect("contents divide").monic();
            if !rest.is_constant() && !curves.contains(&rest) {
                curves.push(rest);
            }
        }
    }
    special_values(f.num(), Var::A, &mut a_vals);
    special_values(f.den(), Var::A, &mut a_vals);

    let sample_t = (1i64..)
        .map(rat)
        .find(|t| allowed(t) && !t_vals.contains(t))
        .expect("excluded sets are finite");
    let representative = member_at(base, &Step::Finite(sample_t), tail);

    // single members, generic in a
    for t0 in t_vals.iter().filter(|t| allowed(t)) {
        let m = member_at(base, &Step::Finite(t0.clone()), tail);
        let et = specialize_var(&e, Var::T, t0);
        let member_generic = match &et {
            Some(et) => Specialized::At(position_of_expressed(et)),
            None => Specialized::Undefined,
        };
        if member_generic != Specialized::At(generic) {
            exceptions.push(Exception {
                locus: Locus::Member,
                outcome: member_generic.clone(),
                witness: m.clone(),
                note: describe_t(t0),
            });
        }
        if let Some(et) = et {
            let mut vals = a_vals.clone();
            special_values(et.num(), Var::A, &mut vals);
            special_values(et.den(), Var::A, &mut vals);
            for a0 in vals {
                let s = specialize(&e, &[(Var::T, t0), (Var::A, &a0)]);
                if s != member_generic {
                    exceptions.push(Exception {
                        note: format!("{}, a = {a0}", describe_t(t0)),
                        locus: Locus::Pair(a0),
                        outcome: s,
                        witness: m.clone(),
                    });
                }
            }
        }
    }

    // single values of a, generic member
    for a0 in &a_vals {
        let line = specialize(&e, &[(Var::A, a0)]);
        if line != Specialized::At(generic) {
            exceptions.push(Exception {
                locus: Locus::Param(a0.clone()),
                outcome: line.clone(),
                witness: representative.clone(),
                note: format!("a = {a0}"),
            });
        }
        if let Some(ea) = specialize_var(&e, Var::A, a0) {
            let mut vals = BTreeSet::new();
            special_values(ea.num(), Var::T, &mut vals);
            special_values(ea.den(), Var::T, &mut vals);
            for t0 in vals.iter().filter(|t| allowed(t) && !t_vals.contains(t)) {
                let s = specialize(&e, &[(Var::T, t0), (Var::A, a0)]);
                if s != line {
                    exceptions.push(Exception {
                        note: format!("{}, a = {a0}", describe_t(t0)),
                        locus: Locus::Pair(a0.clone()),
                        outcome: s,
                        witness: member_at(base, &Step::Finite(t0.clone()), tail),
                    });
                }
            }
        }
    }

    for c in curves {
        let mut note = format!("{} = 0", show(&c, "t"));
        if label.is_some() {
            // t = -1/b
            let in_b = RatFunc::from_poly(c.clone()).substitute(
                Var::T,
                &RatFunc::constant(rat(-1)).checked_div(&RatFunc::var(Var::T))?,
            )?;
            note.push_str(&format!(" (in b: {} = 0)", show(&in_b.num().monic(), "b")));
        }
        match curve_exceptions(&e, &c, base, tail, &allowed, &t_vals, &a_vals)? {
            None => flags.push(format!("unresolved locus {note}")),
            Some((outcome, witness, pairs)) => {
                if outcome != Specialized::At(generic) {
                    exceptions.push(Exception {
                        locus: Locus::Curve(c.clone()),
                        outcome: outcome.clone(),
                        witness,
                        note: note.clone(),
                    });
                }
                for (t0, a0, s) in pairs {
                    exceptions.push(Exception {
                        note: format!("{note} at {}, a = {a0}", describe_t(&t0)),
                        locus: Locus::Pair(a0),
                        outcome: s,
                        witness: member_at(base, &Step::Finite(t0), tail),
                    });
                }
            }
        }
    }

    if !excluded.contains(&Step::Infinity) {
        let m = member_at(base, &Step::Infinity, tail);
        let p = position_parametric(&m, f)?;
        let note = match label.and_then(|l| l.param_of(&Step::Infinity)) {
            Some(b) => format!("t = inf (b = {b})"),
            None => "t = inf".to_string(),
        };
        if p.generic != generic {
            exceptions.push(Exception {
                locus: Locus::Member,
                outcome: Specialized::At(p.generic),
                witness: m.clone(),
                note: note.clone(),
            });
        }
        for (a0, s) in p.exceptions {
            exceptions.push(Exception {
                note: format!("{note}, a = {a0}"),
                locus: Locus::Pair(a0),
                outcome: s,
                witness: m.clone(),
            });
        }
    }

    Ok(FiberProfile {
        generic,
        representative,
        exceptions,
        flags,
    })
}

fn specialize_var(e: &RatFunc, v: Var, x: &Rational) -> Option<RatFunc> {
    e.eval_var(v, x).ok()
}

type CurveOutcome = (Specialized, Point, Vec<(Rational, Rational, Specialized)>);

/// Generic position along `c(a, t) = 0` and the isolated points on it where
/// the position changes; `None` unless `c` is linear in `a` or in `t`.
fn curve_exceptions(
    e: &RatFunc,
    c: &Poly,
    base: &Point,
    tail: &[Step],
    allowed: &dyn Fn(&Rational) -> bool,
    t_vals: &BTreeSet<Rational>,
    a_vals: &BTreeSet<Rational>,
) -> Result<Option<CurveOutcome>> {
    // solve for `solved` as a rational function of `free`
    let (solved, free) = if c.degree_in(Var::A) == 1 {
        (Var::A, Var::T)
    } else if c.degree_in(Var::T) == 1 {
        (Var::T, Var::A)
    } else {
        return Ok(None);
    };
    let co = c.coeffs_in(solved);
    let phi = RatFunc::new(co[0].scale(&rat(-1)), co[1].clone())?;
    let on_curve = e.substitute(solved, &phi)?;
    let outcome = Specialized::At(position_of_expressed(&on_curve));

    // the member and parameter value at a given value of the free variable
    let point_of = |u: &Rational| -> Option<(Rational, Rational)> {
        let w = phi.eval_var(free, u).ok()?;
        let w = w.num().constant_coeff();
        let (t0, a0) = if free == Var::T {
            (u.clone(), w)
        } else {
            (w, u.clone())
        };
        allowed(&t0).then_some((t0, a0))
    };
    let witness = (1i64..200)
        .map(rat)
        .filter(|u| !(if free == Var::T { t_vals } else { a_vals }).contains(u))
        .find_map(|u| point_of(&u))
        .map(|(t0, _)| member_at(base, &Step::Finite(t0), tail))
        .ok_or_else(|| Error::InfiniteComponents("curve without sample member".into()))?;

    let mut vals = BTreeSet::new();
    special_values(on_curve.num(), free, &mut vals);
    special_values(on_curve.den(), free, &mut vals);
    if !co[1].is_constant() {
        vals.extend(rational_roots_poly(&co[1], free).roots);
    }
    let mut pairs = Vec::new();
    for u in vals {
        let Some((t0, a0)) = point_of(&u) else {
            continue;
        };
        if t_vals.contains(&t0) || a_vals.contains(&a0) {
            // already handled on the line through this point
            continue;
        }
        let s = specialize(e, &[(Var::T, &t0), (Var::A, &a0)]);
        if s != outcome {
            pairs.push((t0, a0, s));
        }
    }
    Ok(Some((outcome, witness, pairs)))
}

/// Outcome of checking one candidate against one part of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartCheck {
    pub part: usize,
    /// For fibers: the polynomial in `t` whose roots are the members on the curve.
    pub condition: Option<Poly>,
    /// Members other than the certified one lying in the valuation ring.
    pub contained: Vec<Point>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct IrredundanceCertificate {
    pub member: Point,
    pub valuation: Valuation,
    pub uniqueness_domain: Vec<String>,
    pub checks: Vec<PartCheck>,
}

impl IrredundanceCertificate {
    pub fn curve(&self) -> &Poly {
        match &self.valuation {
            Valuation::FirstKind(h) => h,
            _ => unreachable!("certificates use first-kind valuations"),
        }
    }
}

/// Finds a first-kind valuation containing `delta` and no other member of `u`.
pub fn irredundance_certificate(
    u: &FamilySet,
    delta: &Point,
    candidates: &[Poly],
) -> Result<IrredundanceCertificate> {
    if !u.member(delta)? {
        return Err(Error::InvalidDescriptor(format!("{delta} is not a member")));
    }
    let mut obstructions = Vec::new();
    for h in candidates {
        let hs = show(h, "t");
        match certify(u, delta, h) {
            Ok(Ok(checks)) => {
                return Ok(IrredundanceCertificate {
                    member: delta.clone(),
                    valuation: Valuation::first_kind(h.clone())?,
                    uniqueness_domain: checks.iter().map(|c| c.note.clone()).collect(),
                    checks,
                })
            }
            Ok(Err(why)) => obstructions.push(format!("{hs}: {why}")),
            Err(err) => obstructions.push(format!("{hs}: {err}")),
        }
    }
    Err(Error::NoCertificate(obstructions))
}

fn certify(
    u: &FamilySet,
    delta: &Point,
    h: &Poly,
) -> Result<std::result::Result<Vec<PartCheck>, String>> {
    check_curve(h)?;
    if !first_kind_contains(h, delta)? {
        return Ok(Err(format!("does not contain {delta}")));
    }
    let mut checks = Vec::new();
    for (i, part) in u.parts.iter().enumerate() {
        let check = match part {
            Family::Singleton(alpha) => PartCheck {
                part: i,
                condition: None,
                contained: if alpha != delta && first_kind_contains(h, alpha)? {
                    vec![alpha.clone()]
                } else {
                    Vec::new()
                },
                note: format!("singleton {alpha}"),
            },
            Family::Fiber {
                base,
                excluded,
                tail,
                ..
            } => fiber_check(h, i, base, excluded, tail, delta)?,
            Family::Chain { valuation, from } => {
                // containment is inherited by smaller points of the chain
                let mut l = *from;
                if valuation.point_at(l)? == *delta {
                    l += 1;
                }
                let alpha = valuation.point_at(l)?;
                PartCheck {
                    part: i,
                    condition: None,
                    contained: if first_kind_contains(h, &alpha)? {
                        vec![alpha.clone()]
                    } else {
                        Vec::new()
                    },
                    note: format!("chain members from {alpha} on"),
                }
            }
            Family::Siblings { valuation, offset } => {
                let mut contained = Vec::new();
                let mut settled = None;
                for l in 1..=COMPARE_CAP {
                    let alpha = valuation.point_at(l)?;
                    if !first_kind_contains(h, &alpha)? {
                        settled = Some(l);
                        break;
                    }
                    let s = valuation
                        .step_at(l)?
                        .expect("minimal branches are infinite");
                    let beta = alpha.child(&sibling_step(&s, offset));
                    if beta != *delta && first_kind_contains(h, &beta)? {
                        contained.push(beta);
                    }
                }
                let Some(l) = settled else {
                    return Ok(Err(format!(
                        "contains the branch points of {valuation} to level {COMPARE_CAP}"
                    )));
                };
                PartCheck {
                    part: i,
                    condition: None,
                    contained,
                    note: format!("siblings of {valuation}, all levels (branch leaves the curve at level {l})"),
                }
            }
        };
        if let Some(c) = check.contained.first() {
            return Ok(Err(format!("also contains {c}")));
        }
        checks.push(check);
    }
    Ok(Ok(checks))
}

/// Members `base·⟨t⟩·tail` whose point lies on the strict transform of `h`:
/// the generic transform gives a condition in `t`; its roots, and the values
/// where the multiplicity could jump, are checked one by one.
fn fiber_check(
    h: &Poly,
    part: usize,
    base: &Point,
    excluded: &BTreeSet<Step>,
    tail: &[Step],
    delta: &Point,
) -> Result<PartCheck> {
    let mut note = format!("fiber over {base}");
    if !excluded.is_empty() {
        let ex: Vec<String> = excluded.iter().map(Step::to_string).collect();
        note.push_str(&format!(" minus {{{}}}", ex.join(", ")));
    }
    if !tail.is_empty() {
        let tl: Vec<String> = tail.iter().map(Step::to_string).collect();
        note.push_str(&format!(" with tail [{}]", tl.join(", ")));
    }
    let s = strict_transform(h, base)?;
    if !s.at_origin().is_zero() {
        return Ok(PartCheck {
            part,
            condition: None,
            contained: Vec::new(),
            note: format!("{note}: the curve misses the base"),
        });
    }
    let mut ignored = Vec::new();
    let mut suspects: BTreeSet<Step> = BTreeSet::from([Step::Infinity]);
    let mut cur = strict_generic_step(&s);
    for st in tail {
        for c in [
            cur.at_origin(),
            cur.lowest_form()
                .map(|l| xy_content(&l))
                .unwrap_or_else(Poly::one),
        ] {
            if !c.is_zero() {
                suspects.extend(
                    roots_in(&c, Var::T, &mut ignored, "")
                        .into_iter()
                        .map(Step::Finite),
                );
            }
        }
        cur = strict_step(&cur, st);
    }
    let cond = cur.at_origin();
    if cond.is_zero() {
        return Err(Error::InfiniteComponents(format!(
            "every member of the {note} lies on the curve"
        )));
    }
    suspects.extend(
        roots_in(&cond, Var::T, &mut ignored, "")
            .into_iter()
            .map(Step::Finite),
    );
    let mut contained = Vec::new();
    for t in suspects.iter().filter(|t| !excluded.contains(t)) {
        let m = member_at(base, t, tail);
        if m != *delta && first_kind_contains(h, &m)? {
            contained.push(m);
        }
    }
    Ok(PartCheck {
        part,
        note: format!("{note}: condition {} = 0", show(&cond, "t")),
        condition: Some(cond),
        contained,
    })
}

/// Exponents `(i, j)` of the monomial `x^i y^j`.
pub type ExponentVector = (i64, i64);

/// Is `target` a sum of generators (with repetition)?
///
/// This also decides membership of a monomial in the localization of the
/// monomial subring at the ideal of non-constant monomials: if `m = r/q`
/// with `q` having a nonzero constant term, the term `m·q(0)` of `m·q = r`
/// cannot cancel, so `m` is a monomial of `r` and lies in the semigroup.
pub fn semigroup_member(target: ExponentVector, generators: &[ExponentVector]) -> Result<bool> {
    if target == (0, 0) {
        return Ok(true);
    }
    let gens: Vec<ExponentVector> = generators
        .iter()
        .copied()
        .filter(|g| *g != (0, 0))
        .collect();
    if gens.is_empty() {
        return Ok(false);
    }
    // a weight positive on every generator bounds the search; the
    // coordinate sum is tried first
    let dot = |w: (i64, i64), v: ExponentVector| w.0 * v.0 + w.1 * v.1;
    let mut weights = vec![(1, 1)];
    weights.extend((-10..=10).flat_map(|i| (-10..=10).map(move |j| (i, j))));
    let w = weights
        .into_iter()
        .find(|w| gens.iter().all(|g| dot(*w, *g) > 0))
        .ok_or(Error::NoSeparatingWeight)?;
    let mut dead = HashSet::new();
    Ok(reach(target, &gens, &|v| dot(w, v), &mut dead))
}

fn reach(
    t: ExponentVector,
    gens: &[ExponentVector],
    weight: &dyn Fn(ExponentVector) -> i64,
    dead: &mut HashSet<ExponentVector>,
) -> bool {
    if t == (0, 0) {
        return true;
    }
    if weight(t) <= 0 || dead.contains(&t) {
        return false;
    }
    for g in gens {
        if reach((t.0 - g.0, t.1 - g.1), gens, weight, dead) {
            return true;
        }
    }
    dead.insert(t);
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, parse_ratfunc};
    use crate::family::FiberLabel;

    fn f(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn beta_family(excluded: &[Step]) -> FamilySet {
        FamilySet::new(vec![Family::fiber(
            Point::root(),
            excluded.iter().cloned(),
            vec![Step::Infinity],
        )
        .with_label(FiberLabel::NegInverse)])
    }

    #[test]
    fn point_membership() {
        assert!(in_point(&f("y^2/(x+2*y)"), &pt("[-1/2, inf]")).unwrap());
        assert!(!in_point(&f("y/x"), &pt("[inf, inf]")).unwrap());
        assert!(in_point(&f("x"), &pt("[3, inf, 0]")).unwrap());
    }

    #[test]
    fn generator_memberships() {
        let b = beta_family(&[]);
        for g in ["x", "y", "x^2/y", "y^2/(x+a*y)"] {
            let ans = in_family(&f(g), &b).unwrap();
            assert_eq!(ans.verdict, Verdict::Yes, "{g}: {ans:?}");
        }
        let ans = in_family(&f("y/x"), &b).unwrap();
        assert_eq!(ans.verdict, Verdict::No);
        assert_eq!(ans.witness, Some(pt("[inf, inf]")));

        let ans = in_family(&f("x/y"), &beta_family(&[Step::int(0)])).unwrap();
        assert_eq!(ans.verdict, Verdict::Yes);
        // D⟨0⟩⟨∞⟩ is where x/y has its pole
        let ans = in_family(&f("x/y"), &beta_family(&[])).unwrap();
        assert_eq!(ans.witness, Some(pt("[0, inf]")));
    }

    #[test]
    fn coincidence_curve_is_reported() {
        let fam = Family::fiber(Point::root(), [], vec![Step::Infinity])
            .with_label(FiberLabel::NegInverse);
        let p = fiber_profile(&f("(x+a*y)/y"), &fam).unwrap();
        assert_eq!(p.generic, Position::Unit);
        let curve = p
            .exceptions
            .iter()
            .find(|e| matches!(e.locus, Locus::Curve(_)))
            .unwrap();
        assert_eq!(curve.outcome, Specialized::At(Position::Zero));
        assert_eq!(curve.note, "a*t + 1 = 0 (in b: a - b = 0)");
        assert_eq!(p.position_at(&pt("[0, inf]")), Position::Pole);
    }

    #[test]
    fn parameter_exceptions() {
        // y/(x + a*y) at a = 0 is y/x, which has a pole at D⟨∞⟩⟨∞⟩
        let ans = in_family(&f("y/(x+a*y)"), &beta_family(&[])).unwrap();
        assert!(matches!(ans.verdict, Verdict::No), "{ans:?}");
        let ans = in_family(&f("a*y/x"), &beta_family(&[])).unwrap();
        assert_eq!(ans.verdict, Verdict::No);
        let single = FamilySet::new(vec![Family::Singleton(pt("[inf, inf]"))]);
        let ans = in_family(&f("(x + a*y)/x"), &single).unwrap();
        // generic pole: 1 + a/x1
        assert_eq!(ans.verdict, Verdict::No);
        let ans = in_family(
            &f("x/(y + a*x)"),
            &FamilySet::new(vec![Family::Singleton(pt("[0]"))]),
        )
        .unwrap();
        // x/(y + a x) at D⟨0⟩ is 1/(y1 + a): fails only at a = 0
        assert_eq!(
            ans.verdict,
            Verdict::YesExcept(vec![(rat(0), Specialized::At(Position::Pole))])
        );
    }

    #[test]
    fn siblings_membership() {
        let v = Valuation::periodic(vec![], vec![Step::int(0)]).unwrap();
        let s = FamilySet::new(vec![Family::siblings(v, rat(1)).unwrap()]);
        for g in ["x", "y", "y/x", "y/x^2"] {
            assert_eq!(in_family(&f(g), &s).unwrap().verdict, Verdict::Yes, "{g}");
        }
        let ans = in_family(&f("y/x^3"), &s).unwrap();
        assert_eq!(ans.verdict, Verdict::No);
        assert_eq!(ans.witness, Some(pt("[0, 1]")));
        // one level is not enough to see y/x^2 settle
        let ans = in_family_with_depth(&f("y/x^2"), &s, 1).unwrap();
        assert_eq!(ans.verdict, Verdict::Yes);
        assert_eq!(ans.flags, ["part 0: verified to depth 1"]);
    }

    #[test]
    fn certificates_for_both_fibers() {
        let u = FamilySet::new(vec![
            Family::fiber(Point::root(), [Step::Infinity], vec![]),
            Family::fiber(pt("[inf]"), [], vec![]),
        ]);
        for b in [0, 1, -1, 2, 7] {
            let r = Point::from_path(&[Step::int(b)]);
            let h = &Poly::y() - &Poly::x().scale(&rat(b));
            let c = irredundance_certificate(&u, &r, &[h]).unwrap();
            let cond = c.checks[0].condition.clone().unwrap();
            assert_eq!(rational_roots_poly(&cond, Var::T).roots, vec![rat(b)]);

            let s = Point::from_path(&[Step::Infinity, Step::int(b)]);
            let h = &Poly::x() - &parse_poly("y^2").unwrap().scale(&rat(b));
            assert!(irredundance_certificate(&u, &s, &[h]).is_ok());
        }
        let g = pt("[inf, inf]");
        let bad = parse_poly("y").unwrap();
        let c = irredundance_certificate(&u, &g, &[bad, parse_poly("x^2 - y^3").unwrap()]).unwrap();
        assert_eq!(c.curve(), &parse_poly("x^2 - y^3").unwrap());
        assert!(matches!(
            irredundance_certificate(&u, &g, &[parse_poly("y").unwrap()]),
            Err(Error::NoCertificate(_))
        ));
    }

    #[test]
    fn semigroup_examples() {
        let gens = [(1, 0), (0, 1), (-1, 2), (-2, 3)];
        assert!(semigroup_member((-2, 3), &gens).unwrap());
        assert!(semigroup_member((-3, 5), &gens).unwrap());
        assert!(!semigroup_member((-3, 4), &gens).unwrap());
        assert!(!semigroup_member((-1, 1), &gens).unwrap());
        assert!(semigroup_member((0, 0), &[(5, 5)]).unwrap());
        assert!(matches!(
            semigroup_member((1, 1), &[(1, 0), (-1, 0)]),
            Err(Error::NoSeparatingWeight)
        ));
    }
}
