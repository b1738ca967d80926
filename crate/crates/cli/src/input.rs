//! Parsing of command-line values. Every error here is a usage error.

use std::path::Path;

use quadtree::arith::{parse_poly, parse_ratfunc, Poly, RatFunc, Var};
use quadtree::family::FamilySet;
use quadtree::json::parse_family_set;
use quadtree::oracle::ExponentVector;
use quadtree::tree::{Point, Step};

use crate::Failure;

fn usage(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{what}: {e}"))
}

pub fn element(text: &str) -> Result<RatFunc, Failure> {
    parse_ratfunc(text).map_err(|e| usage(&format!("expression {text:?}"), e))
}

/// `f`, or `f/g` when a denominator is given.
pub fn quotient(f: &str, g: Option<&str>) -> Result<RatFunc, Failure> {
    let num = element(f)?;
    match g {
        None => Ok(num),
        Some(g) => num
            .checked_div(&element(g)?)
            .map_err(|e| usage("denominator", e)),
    }
}

pub fn poly(text: &str) -> Result<Poly, Failure> {
    parse_poly(text).map_err(|e| usage(&format!("polynomial {text:?}"), e))
}

pub fn point(text: &str) -> Result<Point, Failure> {
    Point::parse(text).map_err(|e| usage(&format!("point {text:?}"), e))
}

/// Comma-separated steps; `inf` is always added.
pub fn steps(csv: &str) -> Result<Vec<Step>, Failure> {
    let mut out = Vec::new();
    for item in csv.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let s: Step = item
            .parse()
            .map_err(|e| usage(&format!("step {item:?}"), e))?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if !out.contains(&Step::Infinity) {
        out.push(Step::Infinity);
    }
    Ok(out)
}

/// A family set from a JSON file, or from stdin when the path is `-`.
pub fn family(path: &Path) -> Result<FamilySet, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| usage("stdin", e))?
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(&path.display().to_string(), e))?
    };
    parse_family_set(&text).map_err(|e| usage(&path.display().to_string(), e))
}

/// Exponent vector of a Laurent monomial such as `y^2/x`.
pub fn monomial(text: &str) -> Result<ExponentVector, Failure> {
    let r = element(text)?;
    let single = |p: &Poly| -> Option<(i64, i64)> {
        if p.num_terms() != 1 || p.contains_var(Var::A) {
            return None;
        }
        let (m, _) = p.terms().next()?;
        Some((m.exp(Var::X) as i64, m.exp(Var::Y) as i64))
    };
    match (single(r.num()), single(r.den())) {
        (Some(n), Some(d)) => Ok((n.0 - d.0, n.1 - d.1)),
        _ => Err(Failure::Usage(format!(
            "{text:?} is not a monomial in x, y"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials() {
        assert_eq!(monomial("y^2/x").unwrap(), (-1, 2));
        assert_eq!(monomial("3*x*y").unwrap(), (1, 1));
        assert_eq!(monomial("1").unwrap(), (0, 0));
        assert!(monomial("x + y").is_err());
        assert!(monomial("a*x").is_err());
    }

    #[test]
    fn step_lists() {
        let s = steps("-1, 0,1/2").unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s[3], Step::Infinity);
        assert_eq!(steps("inf,0").unwrap().len(), 2);
        assert!(steps("1,x").is_err());
    }

    #[test]
    fn quotients() {
        assert_eq!(
            quotient("x*y", Some("y^2+x^3")).unwrap(),
            element("x*y/(y^2+x^3)").unwrap()
        );
        assert!(quotient("x", Some("0")).is_err());
    }
}
