//! Rational roots of univariate polynomials over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Poly, Rational, Var};

/// Distinct rational roots (ascending) and the degree of the cofactor left
/// after removing every rational linear factor. A positive residual degree
/// means the polynomial also has roots outside Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<Rational>,
    pub residual_degree: usize,
}

/// Horner evaluation of a coefficient vector (index = degree).
pub fn eval(coeffs: &[Rational], at: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * at + c)
}

/// Rational roots of a univariate polynomial in `v`. Panics if another variable occurs.
pub fn rational_roots_poly(p: &Poly, v: Var) -> RootSplit {
    let coeffs = p
        .univariate(v)
        .expect("rational_roots_poly expects a univariate polynomial");
    rational_roots(&coeffs)
}

pub fn rational_roots(coeffs: &[Rational]) -> RootSplit {
    let mut c: Vec<Rational> = coeffs.to_vec();
    while matches!(c.last(), Some(x) if x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return RootSplit {
            roots: Vec::new(),
            residual_degree: 0,
        };
    }
    let mut roots = Vec::new();
    // zero roots
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    let ints = to_integer_coeffs(&c);
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let mut remaining = c.clone();
    if remaining.len() > 1 {
        let num_divs = divisors(&a0);
        let den_divs = divisors(&an);
        let mut cands: Vec<Rational> = Vec::new();
        for n in &num_divs {
            for d in &den_divs {
                let r = Rational::new(n.clone(), d.clone());
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for r in cands {
            if remaining.len() <= 1 {
                break;
            }
            if eval(&remaining, &r).is_zero() {
                roots.push(r.clone());
                while remaining.len() > 1 && eval(&remaining, &r).is_zero() {
                    remaining = synthetic_division(&remaining, &r);
                }
            }
        }
    }
    roots.sort();
    RootSplit {
        roots,
        residual_degree: remaining.len() - 1,
    }
}

fn synthetic_division(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut acc = Rational::zero();
    for k in (1..=n).rev() {
        acc = &acc * r + &c[k];
        out[k - 1] = acc.clone();
    }
    out
}

fn to_integer_coeffs(c: &[Rational]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = c
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    scaled.into_iter().map(|x| x / &g).collect()
}

/// Positive divisors by trial division.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut m = n.abs();
    if m.is_zero() {
        return vec![BigInt::one()];
    }
    let mut p = BigInt::from(2u32);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p.to_u32() == Some(2) { 1 } else { 2 };
    }
    if m > BigInt::one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
