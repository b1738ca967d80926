mod common;

use common::*;
use quadtree::oracle::in_point;
use quadtree::position::Specialized;
use quadtree::position::{position, position_parametric, resolve, Position, DEFAULT_DEPTH_CAP};
use quadtree::tree::Point;
use quadtree::{RatFunc, Var};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CURATED: &[&str] = &[
    "x*y/(y^2+x^3)",
    "y/x",
    "(y - x^2)/(y + x^2)",
    "(x^2 - y^3)/(x*y)",
    "y^2/(x + 2*y)",
    "(y - x)^2/(x^3 + y^3)",
    "(x + y)/(x - y)",
    "x^2/y",
    "(y^2 - x^3 - x^2)/(y - 3*x)",
];

// order zero at the root, so finitely many distinguished points
const RESOLVABLE: &[&str] = &[
    "x*y/(y^2+x^3)",
    "y/x",
    "(y - x^2)/(y + x^2)",
    "(x^2 - y^3)/(x*y)",
    "(x + y)/(x - y)",
    "(y^2 - x^3)/(x^2 + 2*x*y - y^3)",
    "(2*y - x)*(y + x)/(x^2 - 3*y^3)",
];

fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let n = random_poly(rng, 4, 3, 4);
        let d = random_poly(rng, 4, 3, 4);
        if !n.is_zero() && !d.is_zero() {
            return RatFunc::new(n, d).unwrap();
        }
    }
}

fn random_descendant(rng: &mut ChaCha8Rng, a: &Point, depth: usize) -> Point {
    let alphabet = steps(&[-3, -2, -1, 0, 1, 2, 3]);
    let len = rng.gen_range(1..=depth);
    let mut b = a.clone();
    for s in random_path(rng, len, &alphabet) {
        b = b.child(&s);
    }
    b
}

#[test]
fn reciprocal_flips_position() {
    let mut rng = rng();
    let points = all_points(2, &steps(&[-1, 0, 1]));
    for _ in 0..40 {
        let g = random_ratfunc(&mut rng);
        let inv = RatFunc::one().checked_div(&g).unwrap();
        for a in &points {
            let pos = position(a, &g).unwrap();
            assert_eq!(position(a, &inv).unwrap(), pos.flip(), "{g} at {a}");
        }
    }
}

#[test]
fn determined_positions_persist_to_descendants() {
    let mut rng = rng();
    let points = all_points(2, &steps(&[-1, 0, 1]));
    let mut checked = 0;
    for s in CURATED {
        let g = f(s);
        for a in &points {
            let pos = position(a, &g).unwrap();
            if pos == Position::Undetermined {
                continue;
            }
            for _ in 0..4 {
                let b = random_descendant(&mut rng, a, 4);
                assert_eq!(position(&b, &g).unwrap(), pos, "{g}: {a} then {b}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn in_point_persists_upward() {
    let mut rng = rng();
    for _ in 0..60 {
        let g = random_ratfunc(&mut rng);
        let a = random_descendant(&mut rng, &Point::root(), 3);
        if in_point(&g, &a).unwrap() {
            let b = random_descendant(&mut rng, &a, 4);
            assert!(in_point(&g, &b).unwrap(), "{g}: {a} then {b}");
        }
    }
}

#[test]
fn resolution_is_sound() {
    for s in RESOLVABLE {
        let g = f(s);
        let r = resolve(&g, DEFAULT_DEPTH_CAP).unwrap();
        for (set, want) in [(&r.zeros, Position::Zero), (&r.poles, Position::Pole)] {
            for rho in set {
                assert_eq!(position(rho, &g).unwrap(), want, "{s} at {rho}");
                let parent = rho.parent().expect("root is never distinguished");
                assert_eq!(position(&parent, &g).unwrap(), Position::Undetermined);
            }
        }
        assert!(r.zeros.is_disjoint(&r.poles));
    }
    assert!(resolve(&f("x^2/y"), 8).is_err());
}

#[test]
fn resolution_is_complete_on_small_points() {
    let alphabet = steps(&[-3, -2, -1, 0, 1, 2, 3]);
    let points = all_points(3, &alphabet);
    for s in RESOLVABLE {
        let g = f(s);
        let r = resolve(&g, DEFAULT_DEPTH_CAP).unwrap();
        for rho in &points {
            let Some(parent) = rho.parent() else { continue };
            let pos = position(rho, &g).unwrap();
            if position(&parent, &g).unwrap() != Position::Undetermined {
                continue;
            }
            match pos {
                Position::Zero => assert!(r.zeros.contains(rho), "{s}: missing zero {rho}"),
                Position::Pole => assert!(r.poles.contains(rho), "{s}: missing pole {rho}"),
                _ => {}
            }
        }
    }
}

#[test]
fn resolution_of_example_function() {
    let r = resolve(&f("x*y/(y^2+x^3)"), DEFAULT_DEPTH_CAP).unwrap();
    let zeros: Vec<_> = r.zeros.iter().map(|p| p.to_string()).collect();
    let poles: Vec<_> = r.poles.iter().map(|p| p.to_string()).collect();
    assert_eq!(zeros.len(), 2);
    assert!(zeros.contains(&"[0, 0]".to_string()) && zeros.contains(&"[inf]".to_string()));
    assert_eq!(poles, vec!["[0, inf]".to_string()]);
}

#[test]
fn parametric_position_agrees_with_substitution() {
    let cases = [
        ("[-1/2]", "y^2/(x + a*y)"),
        ("[0]", "y/x - a"),
        ("[]", "x + a*y"),
        ("[1, inf]", "(x + a*y)/y"),
        ("[inf]", "x^2/(y + a*x)"),
    ];
    for (point, s) in cases {
        let a = pt(point);
        let g = f(s);
        let pp = position_parametric(&a, &g).unwrap();
        for v in -4..=4 {
            let v = quadtree::arith::rat(v);
            let (n, d) = (g.num().eval_var(Var::A, &v), g.den().eval_var(Var::A, &v));
            let want = if d.is_zero() {
                Specialized::Undefined
            } else if n.is_zero() {
                Specialized::Vanishes
            } else {
                Specialized::At(position(&a, &RatFunc::new(n, d).unwrap()).unwrap())
            };
            match pp.exceptions.iter().find(|(e, _)| *e == v) {
                Some((_, sp)) => assert_eq!(sp, &want, "{s} at {a}, a={v}"),
                None => assert_eq!(Specialized::At(pp.generic), want, "{s} at {a}, a={v}"),
            }
        }
    }
}
