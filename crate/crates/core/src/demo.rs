//! Worked constructions, each reported as a list of checked claims.

use serde::Serialize;

use crate::arith::{
    parse_poly, parse_ratfunc, poly_to_string, rat, ratio, Poly, RatFunc, Rational, DEFAULT_NAMES,
};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySet, FiberLabel};
use crate::oracle::{
    fiber_profile, in_family, irredundance_certificate, semigroup_member, Locus, Verdict,
};
use crate::position::{position, position_parametric, resolve, Position, Specialized};
use crate::proximity::strict_transforms;
use crate::topology::{is_noetherian, patch_limit_points};
use crate::tree::{locate, Point, Step};
use crate::valuation::{monomial_path, monomial_value, shifted_monomial_value, Valuation};

pub const DEMOS: [&str; 7] = [
    "zeros-and-poles",
    "two-ring-cover",
    "irredundant-model",
    "sibling-limit",
    "monomial-chain",
    "fiber-ring",
    "fiber-local-ring",
];

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub name: String,
    pub claims: Vec<Claim>,
}

impl DemoReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    fn check(&mut self, claim: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.claims.push(Claim {
            claim: claim.into(),
            pass,
            detail: detail.into(),
        });
    }
}

pub fn demo(name: &str) -> Result<DemoReport> {
    let mut r = DemoReport {
        name: name.to_string(),
        claims: Vec::new(),
    };
    match name {
        "zeros-and-poles" => zeros_and_poles(&mut r)?,
        "two-ring-cover" => two_ring_cover(&mut r)?,
        "irredundant-model" => irredundant_model(&mut r)?,
        "sibling-limit" => sibling_limit(&mut r)?,
        "monomial-chain" => monomial_chain(&mut r)?,
        "fiber-ring" => fiber_ring(&mut r)?,
        "fiber-local-ring" => fiber_local_ring(&mut r)?,
        _ => return Err(Error::UnknownDemo(name.to_string())),
    }
    Ok(r)
}

fn f(s: &str) -> RatFunc {
    parse_ratfunc(s).expect("demo expressions parse")
}

fn pt(s: &str) -> Point {
    Point::parse(s).expect("demo paths parse")
}

fn paths<'a>(ps: impl IntoIterator<Item = &'a Point>) -> String {
    ps.into_iter()
        .map(Point::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn zeros_and_poles(r: &mut DemoReport) -> Result<()> {
    let g = f("x*y/(y^2+x^3)");
    let res = resolve(&g, 8)?;
    let zeros = paths(&res.zeros);
    let poles = paths(&res.poles);
    r.check("zeros are [0, 0] and [inf]", zeros == "[0, 0] [inf]", zeros);
    r.check("poles are [0, inf]", poles == "[0, inf]", poles);
    for (path, form, pos) in [
        ("[]", "x*y/(x^3 + y^2)", Position::Undetermined),
        ("[0]", "y1/(y1^2 + x)", Position::Undetermined),
        ("[0, 0]", "y2/(x*y2^2 + 1)", Position::Zero),
        ("[inf]", "x1/(y*x1^3 + 1)", Position::Zero),
        ("[0, inf]", "1/(y1 + x1)", Position::Pole),
    ] {
        let p = pt(path);
        let shown = p.show(&p.express(&g));
        let got = position(&p, &g)?;
        r.check(
            format!("at {path} the function is {form}, {pos}"),
            shown == form && got == pos,
            format!("{shown}, {got}"),
        );
    }
    Ok(())
}

/// Every monomial valuation contains `y^2/x` or `x^2/y`.
fn two_ring_cover(r: &mut DemoReport) -> Result<()> {
    let (a, b) = (f("y^2/x"), f("x^2/y"));
    let mut bad = Vec::new();
    for wx in 1..=40 {
        for wy in 1..=40 {
            if monomial_value(&a, wx, wy)? < 0 && monomial_value(&b, wx, wy)? < 0 {
                bad.push(format!("({wx},{wy})"));
            }
        }
    }
    r.check(
        "each v(x)=a, v(y)=b with 1 <= a,b <= 40 has v(y^2/x) >= 0 or v(x^2/y) >= 0",
        bad.is_empty(),
        format!("1600 weights, {} failures {}", bad.len(), bad.join(" ")),
    );
    Ok(())
}

pub fn irredundant_model_family() -> FamilySet {
    FamilySet::new(vec![
        Family::fiber(Point::root(), [Step::Infinity], vec![]),
        Family::fiber(pt("[inf]"), [], vec![]),
    ])
}

fn irredundant_model(r: &mut DemoReport) -> Result<()> {
    let u = irredundant_model_family();
    for b in [0, 1, -1, 2, 7] {
        let rb = Point::from_path(&[Step::int(b)]);
        let h = &Poly::y() - &Poly::x().scale(&rat(b));
        let c = irredundance_certificate(&u, &rb, std::slice::from_ref(&h))?;
        let want = Poly::var(crate::Var::T) - Poly::constant(rat(b));
        r.check(
            format!(
                "{} certifies {rb}, competitors only at t = {b}",
                poly_to_string(&h, &DEFAULT_NAMES)
            ),
            c.checks[0].condition.as_ref() == Some(&want),
            c.uniqueness_domain.join("; "),
        );
        let sb = Point::from_path(&[Step::Infinity, Step::int(b)]);
        let h = &Poly::x() - &parse_poly("y^2")?.scale(&rat(b));
        let ok = irredundance_certificate(&u, &sb, std::slice::from_ref(&h)).is_ok();
        r.check(
            format!("{} certifies {sb}", poly_to_string(&h, &DEFAULT_NAMES)),
            ok,
            "",
        );
    }
    let gamma = pt("[inf, inf]");
    let cusp = parse_poly("x^2 - y^3")?;
    let c = irredundance_certificate(&u, &gamma, std::slice::from_ref(&cusp))?;
    let ts = strict_transforms(&cusp, &gamma)?;
    let shown: Vec<String> = ts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(l, t)| gamma.prefix(l).show_poly(t))
        .collect();
    r.check(
        "x^2 - y^3 certifies [inf, inf] with transforms x1^2 - y, x1 - y1",
        shown == ["x1^2 - y", "x1 - y1"],
        format!("{}; {}", shown.join(", "), c.uniqueness_domain.join("; ")),
    );
    Ok(())
}

fn zero_branch() -> Valuation {
    Valuation::periodic(vec![], vec![Step::int(0)]).expect("nonempty period")
}

fn sibling_limit(r: &mut DemoReport) -> Result<()> {
    let v = zero_branch();
    let s = FamilySet::new(vec![Family::siblings(v.clone(), rat(1))?]);
    let limits = patch_limit_points(&s)?;
    let only_v = limits.len() == 1 && limits[0].equivalent(&v)?;
    r.check(
        format!("{v} is the only patch limit of its siblings"),
        only_v,
        limits
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    let cert = is_noetherian(&s)?;
    r.check("the siblings are not Noetherian", !cert.verdict, "");
    for g in ["x", "y", "y/x", "y/x^2"] {
        let ans = in_family(&f(g), &s)?;
        r.check(
            format!("{g} lies in every sibling"),
            ans.verdict == Verdict::Yes,
            ans.verdict.to_string(),
        );
    }
    let ans = in_family(&f("y/x^3"), &s)?;
    r.check(
        "y/x^3 fails at [0, 1]",
        ans.verdict == Verdict::No && ans.witness == Some(pt("[0, 1]")),
        format!("{:?}", ans.witness.map(|w| w.to_string())),
    );
    Ok(())
}

/// Exponents of `x`, `y`, `y^2/x`, ..., `y^n/x^(n-1)`.
pub fn monomial_chain_generators(n: i64) -> Vec<(i64, i64)> {
    let mut g = vec![(1, 0), (0, 1)];
    g.extend((2..=n).map(|k| (1 - k, k)));
    g
}

fn monomial_chain(r: &mut DemoReport) -> Result<()> {
    let mut fails = Vec::new();
    for n in 1..=10 {
        if !semigroup_member((-n, n + 1), &monomial_chain_generators(n + 1))? {
            fails.push(format!("y(y/x)^{n}"));
        }
    }
    r.check(
        "y(y/x)^n lies in the ring for n <= 10",
        fails.is_empty(),
        fails.join(" "),
    );
    let mut fails = Vec::new();
    for n in 1..=10 {
        if semigroup_member((-1, 1), &monomial_chain_generators(n))? {
            fails.push(n.to_string());
        }
    }
    r.check(
        "y/x is not in the ring for n <= 10",
        fails.is_empty(),
        fails.join(" "),
    );
    Ok(())
}

/// `{β_a}` with `β_a = D⟨-1/a⟩⟨∞⟩` for `a ≠ 0` and `D⟨∞⟩⟨∞⟩` for `a = 0`,
/// optionally with the extra point `D⟨0⟩⟨∞⟩`.
pub fn fiber_family(with_extra: bool) -> FamilySet {
    let excluded: Vec<Step> = if with_extra {
        vec![]
    } else {
        vec![Step::int(0)]
    };
    FamilySet::new(vec![Family::fiber(
        Point::root(),
        excluded,
        vec![Step::Infinity],
    )
    .with_label(FiberLabel::NegInverse)])
}

fn first_param(a: &Rational) -> RatFunc {
    let u = &Poly::x() + &Poly::y().scale(a);
    RatFunc::new(u, Poly::y()).expect("nonzero")
}

fn second_param(a: &Rational) -> RatFunc {
    let u = &Poly::x() + &Poly::y().scale(a);
    RatFunc::new(parse_poly("y^2").expect("parses"), u).expect("nonzero")
}

fn sample_params() -> Vec<Rational> {
    vec![
        rat(-3),
        rat(-1),
        ratio(-1, 2),
        rat(0),
        ratio(1, 3),
        rat(1),
        rat(2),
        rat(5),
    ]
}

fn fiber_ring(r: &mut DemoReport) -> Result<()> {
    // the point with parameters (x + a y)/y and y^2/(x + a y)
    let label = FiberLabel::NegInverse;
    for a in sample_params() {
        let got = locate(&first_param(&a), &second_param(&a), 6)?;
        let want = Point::root()
            .child(&label.step_of(&a))
            .child(&Step::Infinity);
        r.check(
            format!("the point for a = {a} is {want}"),
            got == want,
            got.to_string(),
        );
    }
    let b = fiber_family(false);
    for g in ["x", "y", "x/y", "y^2/(x+a*y)"] {
        let ans = in_family(&f(g), &b)?;
        r.check(
            format!("{g} is in every member"),
            ans.verdict == Verdict::Yes,
            ans.verdict.to_string(),
        );
    }
    let fam = &b.parts[0];
    let prof = fiber_profile(&f("(x+a*y)/y"), fam)?;
    let on_curve = prof
        .exceptions
        .iter()
        .filter(|e| matches!(e.locus, Locus::Curve(_)))
        .map(|e| format!("{}: {}", e.note, e.outcome))
        .collect::<Vec<_>>();
    r.check(
        "(x+a*y)/y is a unit at the member for b unless b = a, where it is a zero",
        prof.generic == Position::Unit && on_curve == ["a*t + 1 = 0 (in b: a - b = 0): zero"],
        format!("generic {}; {}", prof.generic, on_curve.join("; ")),
    );
    // concrete spot checks at sampled pairs
    let mut bad = Vec::new();
    for a in sample_params() {
        for bb in sample_params() {
            let member = Point::root()
                .child(&label.step_of(&bb))
                .child(&Step::Infinity);
            let p = position(&member, &first_param(&a))?;
            let want = if a == bb {
                Position::Zero
            } else {
                Position::Unit
            };
            if p != want {
                bad.push(format!("a={a},b={bb}:{p}"));
            }
        }
    }
    r.check(
        "spot checks of (x+a*y)/y over sampled pairs",
        bad.is_empty(),
        bad.join(" "),
    );
    Ok(())
}

fn fiber_local_ring(r: &mut DemoReport) -> Result<()> {
    let c = fiber_family(true);
    for g in ["x", "y", "x^2/y", "y^2/(x+a*y)"] {
        let ans = in_family(&f(g), &c)?;
        r.check(
            format!("{g} is in every member"),
            ans.verdict == Verdict::Yes,
            ans.verdict.to_string(),
        );
    }
    let ans = in_family(&f("y/x"), &c)?;
    r.check(
        "y/x is not, with witness [inf, inf]",
        ans.verdict == Verdict::No && ans.witness == Some(pt("[inf, inf]")),
        format!("{:?}", ans.witness.map(|w| w.to_string())),
    );

    // valuations dominating the local ring: v(x^2/y) > 0 and v(y^2/x) > 0
    let val = |g: &str, wx: i64, wy: i64| monomial_value(&f(g), wx, wy);
    let mut checked = 0;
    let mut bad = Vec::new();
    for wx in 1..=20i64 {
        for wy in 1..=20i64 {
            if 2 * wx <= wy || 2 * wy <= wx {
                continue;
            }
            checked += 1;
            let v = Valuation::monomial(wx as u64, wy as u64)?;
            let ok = if wx > wy {
                // the point with parameters x/y and y^2/x
                val("x/y", wx, wy)? > 0
                    && val("y^2/x", wx, wy)? > 0
                    && v.contains_point(&pt("[inf, inf]"))?
            } else if wy > wx {
                val("y/x", wx, wy)? > 0
                    && val("x^2/y", wx, wy)? > 0
                    && v.contains_point(&pt("[0, inf]"))?
            } else {
                // the order valuation of the root
                v.contains_point(&Point::root())?
            };
            if !ok {
                bad.push(format!("({wx},{wy})"));
            }
        }
    }
    r.check(
        "monomial valuations with 1 <= v(x), v(y) <= 20 contain the ring of their case",
        bad.is_empty(),
        format!("{checked} valuations; failures {}", bad.join(" ")),
    );

    // v(y) = m, v(x + a y) = n with m < n < 2m
    let mut checked = 0;
    let mut bad = Vec::new();
    for a in sample_params().into_iter().filter(|a| *a != rat(0)) {
        for m in 1..=8i64 {
            for n in m + 1..2 * m {
                checked += 1;
                let sv = |g: &RatFunc| shifted_monomial_value(g, &a, n, m);
                let vx = sv(&f("x"))?;
                let ok_values = vx == m && sv(&first_param(&a))? > 0 && sv(&second_param(&a))? > 0;
                // in the parameters (x, y/x + 1/a) of D⟨-1/a⟩ the weights are (m, n - m)
                let (tail, _) = monomial_path(m as u64, (n - m) as u64);
                let mut path = vec![Step::Finite(-a.recip())];
                path.extend(tail);
                let tau = Point::from_path(&path);
                let beta = pt("[]")
                    .child(&Step::Finite(-a.recip()))
                    .child(&Step::Infinity);
                let ratio_ok = tau.ord(&f("x"))? * n
                    == tau.ord(&(&Poly::x() + &Poly::y().scale(&a)).into())? * m;
                let contained = Valuation::second_kind(tau).contains_point(&beta)?;
                if !(ok_values && ratio_ok && contained) {
                    bad.push(format!("a={a},m={m},n={n}"));
                }
            }
        }
    }
    r.check(
        "valuations with v(x + a y) > v(y) contain the member for a",
        bad.is_empty(),
        format!("{checked} valuations; failures {}", bad.join(" ")),
    );
    let p = position_parametric(&pt("[0, inf]"), &f("y^2/(x+a*y)"))?;
    r.check(
        "y^2/(x+a*y) is a zero at [0, inf] for every a",
        p.generic == Position::Zero
            && p.exceptions
                .iter()
                .all(|(_, s)| *s == Specialized::At(Position::Zero)),
        format!("{:?}", p.exceptions),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_passes() {
        for name in DEMOS {
            let r = demo(name).unwrap();
            for c in &r.claims {
                assert!(c.pass, "{name}: {} ({})", c.claim, c.detail);
            }
            assert!(!r.claims.is_empty());
        }
        assert!(matches!(demo("nope"), Err(Error::UnknownDemo(_))));
    }
}
