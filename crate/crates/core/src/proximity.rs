//! Proximity, strict transforms of curves, and containment of tree points in
//! divisorial valuation rings.
//!
//! Because the exceptional divisor is always the first parameter, the points
//! proximate to `α` are exactly those whose path continues `α` by one step
//! `s`, optionally followed by `∞` and then any number of `0` steps.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arith::{gcd, Monomial, Poly, Var};
use crate::error::{Error, Result};
use crate::tree::{apply_generic_step_poly, apply_step_poly, Point, Step};

/// Shape of a proximate point relative to its anchor:
/// `⟨base_child_step⟩`, or `⟨base_child_step⟩⟨∞⟩⟨0⟩^j` with `j = extension_count - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayForm {
    pub base_child_step: Step,
    pub extension_count: usize,
}

impl RayForm {
    pub fn suffix(&self) -> Vec<Step> {
        let mut out = vec![self.base_child_step.clone()];
        if self.extension_count > 0 {
            out.push(Step::Infinity);
            out.extend(std::iter::repeat_n(Step::int(0), self.extension_count - 1));
        }
        out
    }
}

/// Ray shape of a path suffix, if it has one.
pub fn ray_shape(suffix: &[Step]) -> Option<RayForm> {
    let (first, rest) = suffix.split_first()?;
    let extension_count = match rest.split_first() {
        None => 0,
        Some((Step::Infinity, zeros)) if zeros.iter().all(Step::is_zero) => rest.len(),
        Some(_) => return None,
    };
    Some(RayForm {
        base_child_step: first.clone(),
        extension_count,
    })
}

pub fn ray_form(beta: &Point, alpha: &Point) -> Option<RayForm> {
    if !alpha.is_prefix_of(beta) {
        return None;
    }
    ray_shape(&beta.path()[alpha.level()..])
}

/// True when `beta` lies in the order valuation ring of `alpha` and is not below it.
pub fn is_proximate(beta: &Point, alpha: &Point) -> bool {
    ray_form(beta, alpha).is_some()
}

/// Members of `P(α)` up to `level_bound`, over the finite steps of
/// `alphabet` plus `∞`.
pub fn proximate_points(alpha: &Point, level_bound: usize, alphabet: &[Step]) -> BTreeSet<Point> {
    let mut steps: BTreeSet<Step> = alphabet.iter().cloned().collect();
    steps.insert(Step::Infinity);
    let mut out = BTreeSet::new();
    if level_bound <= alpha.level() {
        return out;
    }
    for s in steps {
        let mut p = alpha.child(&s);
        out.insert(p.clone());
        let mut next = Step::Infinity;
        while p.level() < level_bound {
            p = p.child(&next);
            out.insert(p.clone());
            next = Step::int(0);
        }
    }
    out
}

/// Points to which `gamma` is proximate; at most two, and the parent is always one.
pub fn proximate_ancestors(gamma: &Point) -> Vec<Point> {
    (0..gamma.level())
        .rev()
        .filter(|&l| ray_shape(&gamma.path()[l..]).is_some())
        .map(|l| gamma.prefix(l))
        .collect()
}

/// `β ⊆ ord_α`: β is below α, equal to it, or proximate to it.
pub fn second_kind_contains(alpha: &Point, beta: &Point) -> bool {
    beta.is_prefix_of(alpha) || is_proximate(beta, alpha)
}

/// One blow-up of a curve equation written in the current parameter slots:
/// substitute the step and strip the exceptional factor.
pub fn strict_step(h: &Poly, s: &Step) -> Poly {
    strip_exceptional(h, apply_step_poly(h, s))
}

/// Same with the symbolic finite step `t`.
pub fn strict_generic_step(h: &Poly) -> Poly {
    strip_exceptional(h, apply_generic_step_poly(h))
}

fn strip_exceptional(before: &Poly, total: Poly) -> Poly {
    let m = before.order_at_origin().unwrap_or(0);
    total
        .div_monomial(&Monomial::var(Var::X, m))
        .expect("the exceptional divisor divides the total transform")
}

pub(crate) fn check_curve(h: &Poly) -> Result<()> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if h.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if h.contains_var(Var::A) || h.contains_var(Var::T) {
        return Err(Error::Parametric);
    }
    if !h.constant_coeff().is_zero() {
        return Err(Error::DivisorMissesTree);
    }
    Ok(())
}

/// Strict transform at `alpha`, in `alpha`'s parameter slots.
pub fn strict_transform(h: &Poly, alpha: &Point) -> Result<Poly> {
    check_curve(h)?;
    Ok(alpha
        .path()
        .iter()
        .fold(h.clone(), |acc, s| strict_step(&acc, s)))
}

/// Strict transforms at every prefix of `alpha`, root first.
pub fn strict_transforms(h: &Poly, alpha: &Point) -> Result<Vec<Poly>> {
    check_curve(h)?;
    let mut out = vec![h.clone()];
    for s in alpha.path() {
        let next = strict_step(out.last().unwrap(), s);
        out.push(next);
    }
    Ok(out)
}

pub fn is_square_free(h: &Poly) -> bool {
    let hx = h.derivative(Var::X);
    let hy = h.derivative(Var::Y);
    let g = match gcd(&hx, &hy) {
        Ok(g) => g,
        // both partials vanish only for constants
        Err(_) => return true,
    };
    gcd(h, &g).map(|g| g.is_constant()).unwrap_or(true)
}

/// True when `delta` lies in the divisorial ring of the curve `h = 0`,
/// i.e. the strict transform passes through the origin of `delta`.
pub fn first_kind_contains(h: &Poly, delta: &Point) -> Result<bool> {
    check_curve(h)?;
    if !is_square_free(h) {
        return Err(Error::NotSquareFree);
    }
    Ok(strict_transform(h, delta)?.at_origin().is_zero())
}
