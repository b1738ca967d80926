//! Multivariate gcd over Q.
//!
//! Recursive: split off monomial content, then treat each polynomial as
//! univariate in its highest variable with coefficients in Q[remaining].
//! The content is handled recursively and the primitive parts go through a
//! subresultant remainder sequence.

use super::poly::{Poly, Var};
use crate::error::{Error, Result};

/// Monic greatest common divisor. Errors when both inputs are zero.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    Ok(gcd_any(p, q).monic())
}

/// Monic gcd of a list of polynomials (zeros ignored); `1` for an all-zero list.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(ps: I) -> Poly {
    let mut acc = Poly::zero();
    for p in ps {
        if acc.is_one() {
            break;
        }
        acc = gcd_any(&acc, p);
        if acc.is_constant() && !acc.is_zero() {
            acc = Poly::one();
        }
    }
    if acc.is_zero() {
        Poly::one()
    } else {
        acc.monic()
    }
}

/// Some associate of the gcd; zero only when both are zero.
pub(crate) fn gcd_any(p: &Poly, q: &Poly) -> Poly {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return Poly::one();
    }
    let mp = p.min_exponents();
    let mq = q.min_exponents();
    let mono = mp.meet(&mq);
    let p1 = p.div_monomial(&mp).expect("monomial content divides");
    let q1 = q.div_monomial(&mq).expect("monomial content divides");
    let rest = gcd_no_monomial(&p1, &q1);
    rest.mul_monomial(&mono)
}

fn gcd_no_monomial(p: &Poly, q: &Poly) -> Poly {
    if p.is_constant() || q.is_constant() {
        return Poly::one();
    }
    if p.num_terms() <= q.num_terms() {
        if q.div_exact(p).is_some() {
            return p.clone();
        }
    } else if p.div_exact(q).is_some() {
        return q.clone();
    }
    let main = Var::ALL
        .iter()
        .rev()
        .copied()
        .find(|v| p.contains_var(*v) || q.contains_var(*v))
        .expect("non-constant polynomial has a variable");
    let in_p = p.contains_var(main);
    let in_q = q.contains_var(main);
    if !in_q {
        return gcd_any(&content_in(p, main), q);
    }
    if !in_p {
        return gcd_any(p, &content_in(q, main));
    }
    let cp = content_in(p, main);
    let cq = content_in(q, main);
    let pp = p.div_exact(&cp).expect("content divides");
    let pq = q.div_exact(&cq).expect("content divides");
    let c = gcd_any(&cp, &cq);
    let g = subresultant_gcd(&pp, &pq, main);
    &c * &g
}

/// Gcd of the coefficients with respect to `v`.
pub(crate) fn content_in(p: &Poly, v: Var) -> Poly {
    let coeffs = p.coeffs_in(v);
    let mut acc = Poly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        acc = gcd_any(&acc, c);
        if acc.is_constant() {
            return Poly::one();
        }
    }
    if acc.is_zero() {
        Poly::one()
    } else {
        acc.monic()
    }
}

fn degree(u: &[Poly]) -> Option<usize> {
    u.iter().rposition(|c| !c.is_zero())
}

fn trim(u: &mut Vec<Poly>) {
    while matches!(u.last(), Some(c) if c.is_zero()) {
        u.pop();
    }
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b).expect("nonzero divisor");
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        return r;
    }
    let mut e = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            r[j + shift] = &r[j + shift] - &(&lcr * bj);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(p: &Poly, q: &Poly, v: Var) -> Poly {
    let mut a = p.coeffs_in(v);
    let mut b = q.coeffs_in(v);
    trim(&mut a);
    trim(&mut b);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let da = degree(&a).unwrap();
        let db = degree(&b).unwrap();
        let d = (da - db) as u32;
        let r = prem(&a, &b);
        let Some(dr) = degree(&r) else {
            let bp = Poly::from_coeffs_in(v, &b);
            let c = content_in(&bp, v);
            return bp.div_exact(&c).expect("content divides");
        };
        if dr == 0 {
            return Poly::one();
        }
        let divisor = &g * &h.pow(d);
        a = b;
        b = r
            .iter()
            .map(|c| {
                c.div_exact(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = a[degree(&a).unwrap()].clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Resultant-free squarefree part: `p / gcd(p, dp/dv)` for a univariate `p`.
pub fn squarefree_univariate(p: &Poly, v: Var) -> Poly {
    if p.is_constant() {
        return p.clone();
    }
    let g = gcd_any(p, &p.derivative(v));
    p.div_exact(&g).expect("gcd divides").monic()
}
