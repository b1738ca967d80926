mod common;

use common::*;
use quadtree::arith::{rat, ratio, Poly};
use quadtree::family::{Family, FamilySet, FiberLabel};
use quadtree::oracle::{in_family, in_point, irredundance_certificate, semigroup_member, Verdict};
use quadtree::position::{position, Position};
use quadtree::tree::{apply_step_poly, Point, Step};
use quadtree::Var;
use rand::Rng;

/// Strict transform by the textbook recursion: transform, then divide out
/// the exceptional factor to the multiplicity of the previous center.
fn naive_strict(h: &Poly, beta: &Point) -> Poly {
    let mut cur = h.clone();
    for s in beta.path() {
        let m = cur.order_at_origin().unwrap();
        let total = apply_step_poly(&cur, s);
        cur = total.div_exact(&Poly::x().pow(m)).unwrap();
    }
    cur
}

fn on_curve(h: &Poly, beta: &Point) -> bool {
    naive_strict(h, beta).at_origin().is_zero()
}

fn two_fibers() -> FamilySet {
    FamilySet::new(vec![
        Family::fiber(Point::root(), [Step::Infinity], vec![]),
        Family::fiber(pt("[inf]"), [], vec![]),
    ])
}

fn competitors(rng: &mut rand_chacha::ChaCha8Rng, b: i64) -> Vec<Point> {
    let mut out = vec![
        Point::from_path(&[Step::int(b - 1)]),
        Point::from_path(&[Step::int(b + 1)]),
        Point::from_path(&[Step::Infinity, Step::int(b - 1)]),
        Point::from_path(&[Step::Infinity, Step::int(b + 1)]),
        pt("[inf, inf]"),
        pt("[inf, 0]"),
    ];
    while out.len() < 25 {
        let s = Step::Finite(ratio(rng.gen_range(-50..50), rng.gen_range(1..7)));
        let cand = if rng.gen_bool(0.5) {
            Point::from_path(&[s])
        } else {
            Point::from_path(&[Step::Infinity, s])
        };
        out.push(cand);
    }
    out
}

#[test]
fn certificates_recheck_at_competitors() {
    let u = two_fibers();
    let mut rng = rng();
    for b in [0, 1, -1, 2, 7] {
        let r = Point::from_path(&[Step::int(b)]);
        let s = Point::from_path(&[Step::Infinity, Step::int(b)]);
        let lines = [
            (r, &Poly::y() - &Poly::x().scale(&rat(b))),
            (s, &Poly::x() - &Poly::y().pow(2).scale(&rat(b))),
        ];
        for (member, h) in lines {
            let cert = irredundance_certificate(&u, &member, &[h]).unwrap();
            let h = cert.curve().clone();
            assert!(on_curve(&h, &member), "{h} at {member}");
            for c in competitors(&mut rng, b) {
                if c == member {
                    continue;
                }
                assert!(u.member(&c).unwrap());
                assert!(!on_curve(&h, &c), "{h}: competitor {c}");
            }
        }
    }
    let gamma = pt("[inf, inf]");
    let cert = irredundance_certificate(&u, &gamma, &[p("x^2 - y^3")]).unwrap();
    assert!(on_curve(cert.curve(), &gamma));
    for c in competitors(&mut rng, 3) {
        if c != gamma {
            assert!(!on_curve(cert.curve(), &c), "competitor {c}");
        }
    }
}

#[test]
fn semigroup_agrees_with_brute_force() {
    let mut rng = rng();
    for _ in 0..25 {
        let mut gens = vec![(1, 0), (0, 1)];
        for _ in 0..rng.gen_range(1..=2) {
            let n = rng.gen_range(1..=3);
            gens.push((-n, n + rng.gen_range(1..=2)));
        }
        for i in -3..=3 {
            for j in -3..=3 {
                let want = brute_semigroup((i, j), &gens, 8);
                assert_eq!(
                    semigroup_member((i, j), &gens).unwrap(),
                    want,
                    "({i}, {j}) over {gens:?}"
                );
            }
        }
    }
}

fn beta(a: i64) -> Point {
    Point::from_path(&[FiberLabel::NegInverse.step_of(&rat(a)), Step::Infinity])
}

#[test]
fn first_parameter_is_a_unit_away_from_its_own_point() {
    for a in -4..=4 {
        let g = f(&format!("(x + {a}*y)/y"));
        for b in -4..=4 {
            let want = if a == b {
                Position::Zero
            } else {
                Position::Unit
            };
            assert_eq!(position(&beta(b), &g).unwrap(), want, "a={a} b={b}");
        }
    }
}

#[test]
fn generators_lie_in_every_fiber_member() {
    let fam = FamilySet::new(vec![Family::fiber(Point::root(), [], vec![Step::Infinity])]);
    let mut gens: Vec<String> = vec![
        "x".into(),
        "y".into(),
        "x^2/y".into(),
        "y^2/(x + a*y)".into(),
    ];
    for a in [-3, -1, 0, 1, 2, 5] {
        gens.push(format!("y^2/(x + {a}*y)"));
    }
    let mut rng = rng();
    for g in &gens {
        let g = f(g);
        assert_eq!(in_family(&g, &fam).unwrap().verdict, Verdict::Yes, "{g}");
        if g.contains_var(Var::A) {
            continue;
        }
        // sampled members, including the one at infinity
        let mut ts = vec![Step::Infinity, Step::int(0)];
        ts.extend(
            (0..10).map(|_| Step::Finite(ratio(rng.gen_range(-30..30), rng.gen_range(1..5)))),
        );
        for t in ts {
            let m = Point::from_path(&[t, Step::Infinity]);
            assert!(in_point(&g, &m).unwrap(), "{g} at {m}");
        }
    }
    let ans = in_family(&f("y/x"), &fam).unwrap();
    assert_eq!(ans.verdict, Verdict::No);
    let w = ans.witness.unwrap();
    assert!(fam.member(&w).unwrap());
    assert!(!in_point(&f("y/x"), &w).unwrap());
}

#[test]
fn yes_answers_hold_on_samples() {
    let fams = [
        FamilySet::new(vec![Family::fiber(Point::root(), [], vec![Step::Infinity])]),
        FamilySet::new(vec![Family::fiber(Point::root(), [Step::int(0)], vec![])]),
        FamilySet::new(vec![Family::fiber(pt("[1]"), [], steps(&[2]))]),
    ];
    let elements = [
        "x/y",
        "y/x",
        "(x + y)/y",
        "x^2/(y - x)",
        "y^3/(x^2 + y^2)",
        "(x - y)/(x + 2*y)",
    ];
    for fam in &fams {
        let Family::Fiber {
            base,
            excluded,
            tail,
            ..
        } = &fam.parts[0]
        else {
            unreachable!()
        };
        for e in elements {
            let g = f(e);
            let ans = in_family(&g, fam).unwrap();
            let mut members = Vec::new();
            for t in (-6..=6).map(Step::int).chain([Step::Infinity]) {
                if excluded.contains(&t) {
                    continue;
                }
                let mut m = base.child(&t);
                for s in tail {
                    m = m.child(s);
                }
                members.push(m);
            }
            let all_in = members.iter().all(|m| in_point(&g, m).unwrap());
            match ans.verdict {
                Verdict::Yes => assert!(all_in, "{e} over {fam}"),
                Verdict::No => {
                    let w = ans.witness.clone().unwrap();
                    assert!(!in_point(&g, &w).unwrap(), "{e} over {fam}: witness {w}");
                }
                Verdict::YesExcept(_) => panic!("no parameter in {e}"),
            }
        }
    }
}
