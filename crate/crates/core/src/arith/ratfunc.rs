use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::gcd::gcd_any;
use super::poly::{Poly, Rational, Var};
use crate::error::{Error, Result};

/// Reduced fraction of polynomials with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = gcd_any(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn recip(&self) -> Result<Self> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(RatFunc::reduce(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Substitutes `x -> px`, `y -> py` and reduces.
    pub fn compose_xy(&self, px: &Poly, py: &Poly) -> Result<Self> {
        RatFunc::new(self.num.compose_xy(px, py), self.den.compose_xy(px, py))
    }

    /// Substitutes a rational value for `v`. Errors when the denominator vanishes.
    pub fn eval_var(&self, v: Var, value: &Rational) -> Result<Self> {
        RatFunc::new(self.num.eval_var(v, value), self.den.eval_var(v, value))
    }

    /// Substitutes a rational function for `v`.
    pub fn substitute(&self, v: Var, value: &RatFunc) -> Result<Self> {
        let dn = self.num.degree_in(v);
        let dd = self.den.degree_in(v);
        let d = dn.max(dd);
        let homog = |p: &Poly| -> Poly {
            // p(v = n/m) * m^d
            let coeffs = p.coeffs_in(v);
            let mut out = Poly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                let term = c * &value.num.pow(k as u32) * value.den.pow(d - k as u32);
                out = &out + &term;
            }
            out
        };
        RatFunc::new(homog(&self.num), homog(&self.den))
    }

    pub fn order_at_origin(&self) -> Result<i64> {
        let n = self.num.order_at_origin().ok_or(Error::OrderOfZero)?;
        let d = self.den.order_at_origin().expect("nonzero denominator");
        Ok(n as i64 - d as i64)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Panics on division by zero; use [`RatFunc::checked_div`] for a `Result`.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("zero divisor")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                (&self).$f(rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, parse_ratfunc};

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&r("y^2 + x^3") + &RatFunc::zero(), r("y^2+x^3"));
    }

    #[test]
    fn cancellation() {
        let f = &r("x*y") * &r("y/x");
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &parse_poly("y^2").unwrap());
    }

    #[test]
    fn expand_difference_of_squares() {
        assert_eq!(r("(x+a*y)*(x-a*y)"), r("x^2 - a^2*y^2"));
    }

    #[test]
    fn division_by_zero_is_error() {
        assert!(matches!(
            r("x").checked_div(&RatFunc::zero()),
            Err(Error::ZeroDivisor)
        ));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn denominator_is_monic() {
        let f = r("x/(3*y + 6*x)");
        assert!(f.den().leading_coeff() == num_traits::One::one());
        assert_eq!(f, r("(x/3)/(y+2*x)"));
    }

    #[test]
    fn reduction_is_idempotent() {
        let f = r("(x^2 - y^2)/(x^2 + 2*x*y + y^2)");
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f, r("(x-y)/(x+y)"));
    }

    #[test]
    fn substitute_rational_function() {
        let f = r("1 + a*x");
        let t = Poly::var(Var::T);
        let minus_inv_t = RatFunc::new(Poly::int(-1), t.clone()).unwrap();
        let g = f.substitute(Var::A, &minus_inv_t).unwrap();
        let expected = RatFunc::new(&t - &Poly::x(), t).unwrap();
        assert_eq!(g, expected);
    }
}
