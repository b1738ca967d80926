mod common;

use common::*;
use num_traits::Zero;
use quadtree::arith::Poly;
use quadtree::position::{position_of_expressed, Position};
use quadtree::tree::{locate, Comparison, Point, Residue, Step};
use quadtree::{RatFunc, Var};

fn alphabet() -> Vec<Step> {
    let mut a = steps(&[-3, -2, -1, 0, 1, 2, 3]);
    a.push("1/2".parse().unwrap());
    a.push("-2/3".parse().unwrap());
    a
}

fn random_point(rng: &mut rand_chacha::ChaCha8Rng, max_len: usize) -> Point {
    use rand::Rng;
    let len = rng.gen_range(0..=max_len);
    Point::from_path(&random_path(rng, len, &alphabet()))
}

/// Value of `f` at a rational point, if defined.
fn eval(f: &RatFunc, x0: &Poly, y0: &Poly) -> Option<Poly> {
    let v = f.compose_xy(x0, y0).ok()?;
    assert!(v.den().is_constant());
    Some(v.num().scale(&v.den().constant_coeff().recip()))
}

#[test]
fn inverse_substitution_recovers_x_and_y() {
    // exact evaluation at sample points: x(p(s), q(s)) = s_x, y(p(s), q(s)) = s_y
    let samples = [(3, 5), (-2, 7), (11, -4)].map(|(u, v)| (Poly::int(u), Poly::int(v)));
    let mut rng = rng();
    let mut checked = 0;
    for _ in 0..60 {
        let a = random_point(&mut rng, 8);
        let [x, y] = a.inverse();
        let [p, q] = a.params();
        for (x0, y0) in &samples {
            let (Some(p0), Some(q0)) = (eval(p, x0, y0), eval(q, x0, y0)) else {
                continue;
            };
            assert_eq!(&x.compose_xy(&p0, &q0), x0, "{a}");
            assert_eq!(&y.compose_xy(&p0, &q0), y0, "{a}");
            checked += 1;
        }
    }
    assert!(checked > 150);
}

#[test]
fn ord_is_a_valuation() {
    let mut rng = rng();
    let mut sums = 0;
    for _ in 0..40 {
        let a = random_point(&mut rng, 5);
        let g = random_poly(&mut rng, 5, 4, 5);
        let h = random_poly(&mut rng, 5, 4, 5);
        if g.is_zero() || h.is_zero() {
            continue;
        }
        let (g, h) = (RatFunc::from(g), RatFunc::from(h));
        let og = a.ord(&g).unwrap();
        let oh = a.ord(&h).unwrap();
        assert_eq!(a.ord(&(&g * &h)).unwrap(), og + oh, "{a}");
        let quotient = g.checked_div(&h).unwrap();
        assert_eq!(a.ord(&quotient).unwrap(), og - oh);
        let s = &g + &h;
        if !s.is_zero() {
            assert!(a.ord(&s).unwrap() >= og.min(oh));
            sums += 1;
        }
    }
    assert!(sums > 20);
}

#[test]
fn compare_is_consistent_with_express() {
    let mut rng = rng();
    for _ in 0..40 {
        let b = random_point(&mut rng, 6);
        for l in 0..=b.level() {
            let a = b.prefix(l);
            assert_eq!(
                a.compare(&b),
                if l == b.level() {
                    Comparison::Equal
                } else {
                    Comparison::Below
                }
            );
            for param in a.params() {
                let e = b.express(param);
                // a polynomial in b's parameters, so certainly in b's ring
                assert!(position_of_expressed(&e).in_ring(), "{a} below {b}");
            }
        }
    }
    let a = pt("[0, 1]");
    let b = pt("[0, 2, 3]");
    assert_eq!(a.compare(&b), Comparison::Incomparable);
    assert_eq!(b.compare(&a), Comparison::Incomparable);
}

#[test]
fn exceptional_divisor_is_first_new_parameter() {
    let mut rng = rng();
    for _ in 0..30 {
        let a = random_point(&mut rng, 5);
        for s in alphabet() {
            let c = a.child(&s);
            let p = Poly::x();
            // the expressions of a's parameters at c, as polynomials in c's slots
            let exprs: Vec<Poly> = a
                .params()
                .iter()
                .map(|q| {
                    let e = c.express(q);
                    assert!(e.den().is_constant());
                    e.num().clone()
                })
                .collect();
            // each lies in (p) ...
            for e in &exprs {
                assert!(e.div_exact(&p).is_some(), "{c}");
            }
            // ... and p is in their ideal: one of them is p times a unit
            let generates = exprs.iter().any(|e| {
                let q = e.div_exact(&p).unwrap();
                !q.constant_coeff().is_zero()
            });
            assert!(generates, "{c}");
        }
    }
}

#[test]
fn residues_multiply() {
    let mut rng = rng();
    let mut checked = 0;
    for _ in 0..200 {
        let a = random_point(&mut rng, 4);
        let g = a.params()[1].clone();
        let u = &RatFunc::from(random_poly(&mut rng, 3, 3, 4)) + &RatFunc::one();
        let g = &g + &u;
        let h = &RatFunc::from(random_poly(&mut rng, 3, 3, 4)) + &RatFunc::from(Poly::int(2));
        let (Ok(rg), Ok(rh)) = (a.residue(&g), a.residue(&h)) else {
            continue;
        };
        let (Residue::Value(rg), Residue::Value(rh)) = (rg, rh) else {
            continue;
        };
        match a.residue(&(&g * &h)).unwrap() {
            Residue::Value(r) => assert_eq!(r, &rg * &rh, "{a}"),
            Residue::PositiveOrder => panic!("product of order-0 elements has order 0"),
        }
        checked += 1;
    }
    assert!(checked > 50, "{checked}");
}

#[test]
fn locate_finds_every_constructed_point() {
    let mut rng = rng();
    for _ in 0..25 {
        let a = random_point(&mut rng, 5);
        let [p1, p2] = a.params();
        assert_eq!(locate(p1, p2, 8).unwrap(), a);
    }
}

#[test]
fn residue_is_a_function_of_t_only() {
    let a = pt("[1, inf]");
    let r = a.residue(&f("(x + y)/y")).unwrap();
    match r {
        Residue::Value(r) => {
            assert!(!r.contains_var(Var::X) && !r.contains_var(Var::Y));
        }
        Residue::PositiveOrder => panic!(),
    }
    assert_eq!(
        quadtree::position::position(&Point::root(), &f("y/x")).unwrap(),
        Position::Undetermined
    );
}
