//! Test-only oracles that decide tree questions by valuation computations
//! instead of path shapes, plus small generators shared by the suites.
#![allow(dead_code)]

use quadtree::arith::{gcd, rat, Poly};
use quadtree::tree::{Point, Residue, Step};
use quadtree::{RatFunc, Var};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_2024;

pub fn rng() -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(SEED)
}

pub fn f(s: &str) -> RatFunc {
    quadtree::arith::parse_ratfunc(s).unwrap()
}

pub fn p(s: &str) -> Poly {
    quadtree::arith::parse_poly(s).unwrap()
}

pub fn pt(s: &str) -> Point {
    Point::parse(s).unwrap()
}

pub fn steps(ns: &[i64]) -> Vec<Step> {
    let mut out: Vec<Step> = ns.iter().map(|&n| Step::int(n)).collect();
    out.push(Step::Infinity);
    out
}

/// All points of level at most `max_level` over `alphabet`.
pub fn all_points(max_level: usize, alphabet: &[Step]) -> Vec<Point> {
    let mut out = vec![Point::root()];
    let mut frontier = vec![Point::root()];
    for _ in 0..max_level {
        let mut next = Vec::new();
        for a in &frontier {
            for s in alphabet {
                next.push(a.child(s));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn random_path(rng: &mut ChaCha8Rng, len: usize, alphabet: &[Step]) -> Vec<Step> {
    (0..len)
        .map(|_| alphabet.choose(rng).unwrap().clone())
        .collect()
}

pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32, terms: usize, coeff: i64) -> Poly {
    let mut out = Poly::zero();
    for _ in 0..terms {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg - i);
        let c = rng.gen_range(-coeff..=coeff);
        let m = &Poly::x().pow(i) * &Poly::y().pow(j);
        out = &out + &m.scale(&rat(c));
    }
    out
}

/// Does the nonconstant rational function `r` (in `t`) vanish at some
/// point of the projective line, over the algebraic closure?
fn zero_set(r: &RatFunc) -> Option<(Poly, bool)> {
    if r.is_zero() {
        return None;
    }
    let at_infinity = r.num().degree_in(Var::T) < r.den().degree_in(Var::T);
    Some((r.num().clone(), at_infinity))
}

/// `β ⊆ ord_α`, decided from values and residues: both parameters of `β`
/// must have nonnegative order at `α`, and the center of `ord_α` on
/// `Q[p, q]` (the image of the exceptional line under the residues of
/// `p` and `q`) must pass through the origin of `β`.
pub fn ord_contains(alpha: &Point, beta: &Point) -> bool {
    let mut finite: Option<Poly> = None;
    let mut infinity = true;
    for param in beta.params() {
        match alpha.residue(param) {
            Err(_) => return false,
            Ok(Residue::PositiveOrder) => {}
            Ok(Residue::Value(r)) => {
                let Some((num, at_inf)) = zero_set(&r) else {
                    return false;
                };
                if num.is_constant() && !at_inf {
                    return false;
                }
                finite = Some(match finite {
                    None => num,
                    Some(g) => gcd(&g, &num).unwrap(),
                });
                infinity &= at_inf;
            }
        }
    }
    match finite {
        None => true,
        Some(g) => !g.is_constant() || infinity,
    }
}

/// Brute-force semigroup membership with coefficients at most `bound`.
pub fn brute_semigroup(target: (i64, i64), gens: &[(i64, i64)], bound: i64) -> bool {
    fn go(i: usize, rest: (i64, i64), gens: &[(i64, i64)], bound: i64) -> bool {
        if i == gens.len() {
            return rest == (0, 0);
        }
        (0..=bound).any(|c| {
            go(
                i + 1,
                (rest.0 - c * gens[i].0, rest.1 - c * gens[i].1),
                gens,
                bound,
            )
        })
    }
    go(0, target, gens, bound)
}
