//! Graphviz export of the part of the tree spanned by a family's members.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::family::FamilySet;
use crate::proximity::proximate_ancestors;
use crate::tree::{Point, Step};

pub const DEFAULT_NODE_CAP: usize = 5000;

/// Members of `s` up to `max_level` (fiber coordinates from `alphabet` and
/// `∞`) together with all their prefixes. Members are filled; a dashed edge
/// joins a satellite point to the non-parent point it is proximate to.
pub fn export_dot(
    s: &FamilySet,
    alphabet: &[Step],
    max_level: usize,
    node_cap: usize,
) -> Result<String> {
    let members = s.enumerate(max_level, alphabet)?;
    let mut nodes: BTreeSet<Point> = BTreeSet::from([Point::root()]);
    for m in &members {
        for l in 0..=m.level() {
            nodes.insert(m.prefix(l));
        }
        if nodes.len() > node_cap {
            return Err(Error::EnumerationTooLarge(nodes.len()));
        }
    }
    let ids: BTreeMap<&Point, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut out = String::from("digraph tree {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (p, i) in &ids {
        let style = if members.contains(*p) {
            ", style=filled, fillcolor=\"lightblue\""
        } else {
            ""
        };
        writeln!(out, "  n{i} [label=\"{p}\\nlevel {}\"{style}];", p.level()).unwrap();
    }
    for (p, i) in &ids {
        if let Some(parent) = p.parent() {
            writeln!(
                out,
                "  n{} -> n{i} [label=\"{}\"];",
                ids[&parent],
                p.path().last().unwrap()
            )
            .unwrap();
        }
    }
    for (p, i) in &ids {
        for anc in proximate_ancestors(p).iter().skip(1) {
            if let Some(j) = ids.get(anc) {
                writeln!(
                    out,
                    "  n{j} -> n{i} [style=dashed, color=\"gray40\", constraint=false];"
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::family::Family;
    use crate::valuation::Valuation;

    fn count(dot: &str, pat: &str) -> usize {
        dot.lines().filter(|l| l.contains(pat)).count()
    }

    #[test]
    fn fiber_fragment() {
        let s = FamilySet::new(vec![Family::fiber(Point::root(), [], vec![Step::Infinity])]);
        let alphabet = [Step::int(-1), Step::int(0), Step::int(1)];
        let dot = export_dot(&s, &alphabet, 2, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(count(&dot, "level 0"), 1);
        assert_eq!(count(&dot, "level 1"), 4);
        assert_eq!(count(&dot, "level 2"), 4);
        assert_eq!(count(&dot, "filled"), 4);
        assert!(dot
            .lines()
            .filter(|l| l.contains("filled"))
            .all(|l| l.contains("level 2")));
        assert!(matches!(
            export_dot(&s, &alphabet, 2, 3),
            Err(Error::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn sibling_fragment() {
        let v = Valuation::periodic(vec![], vec![Step::int(0)]).unwrap();
        let s = FamilySet::new(vec![Family::siblings(v, rat(1)).unwrap()]);
        let dot = export_dot(&s, &[], 5, DEFAULT_NODE_CAP).unwrap();
        // root, four chain points, four siblings
        assert_eq!(count(&dot, "label=\"["), 9);
        assert_eq!(count(&dot, "filled"), 4);
    }

    #[test]
    fn empty_family() {
        let dot = export_dot(&FamilySet::default(), &[], 0, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(count(&dot, "label=\"["), 1);
        assert_eq!(count(&dot, "->"), 0);
    }
}
