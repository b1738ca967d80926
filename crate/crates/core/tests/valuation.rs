mod common;

use std::collections::BTreeMap;

use common::*;
use num_integer::Integer;
use quadtree::proximity::strict_transform;
use quadtree::tree::{Point, Step};
use quadtree::valuation::{monomial_path, monomial_value, Valuation};
use quadtree::{Error, RatFunc, Var};
use rand::Rng;

#[test]
fn monomial_paths_realize_their_weights() {
    let mut rng = rng();
    let mut pairs = 0;
    while pairs < 30 {
        let a: u64 = rng.gen_range(1..=50);
        let b: u64 = rng.gen_range(1..=50);
        if a.gcd(&b) != 1 {
            continue;
        }
        pairs += 1;
        let (_, tau) = monomial_path(a, b);
        assert_eq!(tau.ord(&f("x")).unwrap(), a as i64, "({a}, {b})");
        assert_eq!(tau.ord(&f("y")).unwrap(), b as i64, "({a}, {b})");
        for _ in 0..10 {
            let g = random_poly(&mut rng, 6, 4, 50);
            if g.is_zero() {
                continue;
            }
            // generic coefficients: the minimizing terms do not cancel unless two
            // monomials share the minimum, and then ord can only exceed it
            let want = monomial_value(&RatFunc::from(g.clone()), a as i64, b as i64).unwrap();
            let got = tau.ord(&RatFunc::from(g.clone())).unwrap();
            let minimizers = g
                .terms()
                .filter(|(m, _)| {
                    a as i64 * m.exp(Var::X) as i64 + b as i64 * m.exp(Var::Y) as i64 == want
                })
                .count();
            if minimizers == 1 {
                assert_eq!(got, want, "({a}, {b}) on {g}");
            } else {
                assert!(got >= want);
            }
        }
    }
}

#[test]
fn curve_branches_stay_on_their_curve() {
    for h in [
        "x^2 - y^3",
        "(y - x)^2 - x^5",
        "y^2 - x^5 - x^4*y",
        "y - x^2",
    ] {
        let h = p(h);
        let v = Valuation::curve(h.clone()).unwrap();
        let path = v.path_prefix(10).unwrap();
        assert_eq!(path.len(), 10);
        for l in 0..=10 {
            let alpha = Point::from_path(&path[..l]);
            let s = strict_transform(&h, &alpha).unwrap();
            assert!(s.at_origin().is_zero(), "{h} leaves its branch at {alpha}");
        }
    }
}

#[test]
fn node_has_two_tangents() {
    let v = Valuation::curve(p("y^2 - x^3 - x^2")).unwrap();
    match v.path_prefix(3) {
        Err(Error::MultipleCandidates { point, steps }) => {
            assert_eq!(point, "[]");
            assert_eq!(steps.len(), 2);
        }
        other => panic!("expected two tangents, got {other:?}"),
    }
    // after blowing up, the two branches separate and each is smooth
    let s = strict_transform(&p("y^2 - x^3 - x^2"), &pt("[1]")).unwrap();
    assert!(s.at_origin().is_zero());
    assert_eq!(s.order_at_origin(), Some(1));
}

fn valuations() -> Vec<Valuation> {
    vec![
        Valuation::second_kind(pt("[0, inf]")),
        Valuation::second_kind(Point::root()),
        Valuation::monomial(3, 5).unwrap(),
        Valuation::periodic(vec![], vec![Step::int(0)]).unwrap(),
        Valuation::periodic(steps(&[1]), vec![Step::int(1), Step::Infinity]).unwrap(),
        Valuation::curve(p("x^2 - y^3")).unwrap(),
        Valuation::first_kind(p("y - x^2")).unwrap(),
    ]
}

#[test]
fn containment_is_closed_under_prefixes() {
    let points = all_points(4, &steps(&[-1, 0, 1]));
    for v in valuations() {
        let mut inside = 0;
        for beta in &points {
            if !v.contains_point(beta).unwrap() {
                continue;
            }
            inside += 1;
            for l in 0..beta.level() {
                assert!(v.contains_point(&beta.prefix(l)).unwrap(), "{v}: {beta}");
            }
        }
        assert!(inside > 0, "{v}");
    }
}

#[test]
fn second_kind_contains_every_child() {
    for a in [Point::root(), pt("[0, inf]"), pt("[2]")] {
        let v = Valuation::second_kind(a.clone());
        for s in steps(&[-7, -1, 0, 1, 3, 100]) {
            assert!(v.contains_point(&a.child(&s)).unwrap(), "{a} {s}");
        }
    }
}

#[test]
fn minimal_valuations_hold_one_point_per_level() {
    let points = all_points(5, &steps(&[-1, 0, 1]));
    for v in valuations().into_iter().filter(Valuation::is_minimal) {
        let mut per_level: BTreeMap<usize, usize> = BTreeMap::new();
        for beta in &points {
            if v.contains_point(beta).unwrap() {
                *per_level.entry(beta.level()).or_default() += 1;
            }
        }
        assert!(per_level.values().all(|&n| n == 1), "{v}: {per_level:?}");
        assert_eq!(per_level.len(), 6);
    }
    let sk = Valuation::second_kind(Point::root());
    let level1 = points
        .iter()
        .filter(|b| b.level() == 1 && sk.contains_point(b).unwrap())
        .count();
    assert_eq!(level1, 4);
}

#[test]
fn monomial_descriptor_equals_second_kind() {
    let v = Valuation::monomial(2, 3).unwrap();
    assert!(v
        .equivalent(&Valuation::second_kind(pt("[0, inf]")))
        .unwrap());
    assert!(Valuation::monomial(0, 3).is_err());
}
