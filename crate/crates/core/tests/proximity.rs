mod common;

use common::*;
use proptest::prelude::*;
use quadtree::arith::Poly;
use quadtree::proximity::*;
use quadtree::tree::{apply_step_poly, Point, Step};

#[test]
fn ray_rule_matches_residue_oracle_exhaustively() {
    let alphabet = steps(&[-2, -1, 0, 1, 2]);
    let mut checked = 0;
    for beta in all_points(4, &alphabet) {
        for l in 0..=beta.level() {
            let alpha = beta.prefix(l);
            assert_eq!(
                second_kind_contains(&alpha, &beta),
                ord_contains(&alpha, &beta),
                "alpha {alpha} beta {beta}"
            );
            checked += 1;
        }
    }
    assert!(checked > 1500);
}

#[test]
fn oracle_on_unrelated_pairs() {
    // points that are not below each other are never in the other's ring
    for (a, b) in [("[0]", "[1]"), ("[0, 1]", "[0, 2]"), ("[inf]", "[0, inf]")] {
        assert!(!ord_contains(&pt(a), &pt(b)));
        assert!(!second_kind_contains(&pt(a), &pt(b)));
    }
    // but a prefix is
    assert!(ord_contains(&pt("[0, inf, 3]"), &pt("[0]")));
}

#[test]
fn at_most_two_proximate_ancestors() {
    let alphabet = steps(&[-1, 0, 1]);
    for g in all_points(6, &alphabet) {
        let anc = proximate_ancestors(&g);
        assert!(anc.len() <= 2, "{g}");
        if let Some(parent) = g.parent() {
            assert_eq!(anc[0], parent);
        }
    }
}

#[test]
fn satellite_points_have_two() {
    assert_eq!(proximate_ancestors(&pt("[0, inf]")).len(), 2);
    assert_eq!(proximate_ancestors(&pt("[0, inf, 0, 0]")).len(), 2);
    assert_eq!(proximate_ancestors(&pt("[0, inf, 1]")).len(), 1);
}

fn step_strategy() -> impl Strategy<Value = Step> {
    prop_oneof![(-3i64..=3).prop_map(Step::int), Just(Step::Infinity)]
}

fn curve_strategy() -> impl Strategy<Value = Poly> {
    prop::sample::select(vec![
        "x^2 - y^3",
        "y - x^2",
        "y^2 - x^3 - x^2",
        "x - y",
        "y + x^2 - 2*x*y",
        "y^2 - x^5",
        "x^3 - y^2 + x*y^3",
    ])
    .prop_map(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strict_transform_is_multiplicative(
        h1 in curve_strategy(),
        h2 in curve_strategy(),
        path in prop::collection::vec(step_strategy(), 0..4),
    ) {
        let a = Point::from_path(&path);
        let lhs = strict_transform(&(&h1 * &h2), &a).unwrap();
        let rhs = &strict_transform(&h1, &a).unwrap() * &strict_transform(&h2, &a).unwrap();
        // associates: equal after making both monic
        prop_assert_eq!(lhs.monic(), rhs.monic());
    }

    #[test]
    fn total_transform_splits(h in curve_strategy(), path in prop::collection::vec(step_strategy(), 1..4)) {
        let mut cur = h.clone();
        for s in &path {
            let m = cur.order_at_origin().unwrap();
            let total = apply_step_poly(&cur, s);
            let strict = strict_step(&cur, s);
            prop_assert_eq!(total, &Poly::x().pow(m) * &strict);
            cur = strict;
        }
    }

    #[test]
    fn first_kind_containment_is_monotone(h in curve_strategy(), path in prop::collection::vec(step_strategy(), 1..6)) {
        let mut left = false;
        for l in 0..=path.len() {
            let a = Point::from_path(&path[..l]);
            let inside = first_kind_contains(&h, &a).unwrap();
            prop_assert!(!(left && inside), "re-entered at {}", a);
            left |= !inside;
        }
    }
}
