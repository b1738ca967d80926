//! Sparse polynomials over Q in the variables `x`, `y`, `a`, `t`.
//!
//! `x` and `y` are the geometric variables (or, after a change of chart, the
//! two regular parameters of a point). `a` is the symbolic family parameter
//! accepted by the expression grammar and `t` is an internal variable used for
//! the coordinate along a fiber of the tree and for residues.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub const NVARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    A = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::A, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Exponent vector. Ordered graded-lexicographically with `x > y > a > t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Degree in the geometric variables only.
    pub fn xy_degree(&self) -> u32 {
        self.0[0] + self.0[1]
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(m)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a -= b;
        }
        Some(Monomial(m))
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn without(&self, v: Var) -> Monomial {
        let mut m = self.0;
        m[v.index()] = 0;
        Monomial(m)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v, 1), Rational::one())
    }

    pub fn x() -> Self {
        Poly::var(Var::X)
    }

    pub fn y() -> Self {
        Poly::var(Var::Y)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::ONE).is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|v| self.contains_var(*v))
            .collect()
    }

    /// Componentwise minimum of the exponent vectors (the monomial content).
    pub fn min_exponents(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::ONE;
        };
        it.fold(*first, |acc, m| acc.meet(m))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut out = BTreeMap::new();
        for (k, c) in &self.terms {
            out.insert(k.div(m)?, c.clone());
        }
        Some(Poly { terms: out })
    }

    /// Divides by the leading coefficient so the result is monic.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (*m, c.clone()))?;
        if d.num_terms() == 1 {
            let inv = dc.recip();
            return self.div_monomial(&dm).map(|p| p.scale(&inv));
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc * &inv;
            quot.add_term(qm, qc.clone());
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
        }
        Some(quot)
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let i = v.index();
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * rat(k as i64))
        }))
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of `v^k`,
    /// a polynomial free of `v`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            out[k].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, k as u32);
            for (cm, cc) in &c.terms {
                out.add_term(cm.mul(&m), cc.clone());
            }
        }
        out
    }

    /// Substitutes a rational value for `v`.
    pub fn eval_var(&self, v: Var, value: &Rational) -> Poly {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.without(v), c * &powers[k]);
        }
        out
    }

    /// Substitutes polynomials for `x` and `y` simultaneously; `a` and `t` are kept.
    pub fn compose_xy(&self, px: &Poly, py: &Poly) -> Poly {
        let dx = self.degree_in(Var::X) as usize;
        let dy = self.degree_in(Var::Y) as usize;
        let xs = powers(px, dx);
        let ys = powers(py, dy);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let rest = Monomial([0, 0, m.0[2], m.0[3]]);
            let prod = &xs[m.0[0] as usize] * &ys[m.0[1] as usize];
            for (pm, pc) in &prod.terms {
                out.add_term(pm.mul(&rest), pc * c);
            }
        }
        out
    }

    /// Substitutes a polynomial for a single variable.
    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        let coeffs = self.coeffs_in(v);
        let mut out = Poly::zero();
        for c in coeffs.iter().rev() {
            out = &(&out * value) + c;
        }
        out
    }

    /// Minimum of the `x`+`y` degree over the terms.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::xy_degree).min()
    }

    /// Sum of the terms of minimal `x`+`y` degree.
    pub fn lowest_form(&self) -> Option<Poly> {
        let d = self.order_at_origin()?;
        Some(Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.xy_degree() == d)
                .map(|(m, c)| (*m, c.clone())),
        ))
    }

    /// The polynomial with `x = y = 0`.
    pub fn at_origin(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.xy_degree() == 0)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Part of `x`+`y` degree exactly one.
    pub fn linear_part(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.xy_degree() == 1)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Renames variables according to `map` (index = source variable).
    pub fn rename(&self, map: [Var; NVARS]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = [0; NVARS];
            for (i, k) in m.0.iter().enumerate() {
                e[map[i].index()] += k;
            }
            (Monomial(e), c.clone())
        }))
    }

    /// Univariate coefficient vector in `v`; `None` if another variable occurs.
    pub fn univariate(&self, v: Var) -> Option<Vec<Rational>> {
        if Var::ALL.iter().any(|w| *w != v && self.contains_var(*w)) {
            return None;
        }
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(v: Var, coeffs: &[Rational]) -> Poly {
        Poly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(v, k as u32), c.clone())),
        )
    }

    /// The constant value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.constant_coeff())
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn powers(p: &Poly, n: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    for k in 1..=n {
        let next = &out[k - 1] * p;
        out.push(next);
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match out.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        out.insert(m, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Poly { terms: out }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
