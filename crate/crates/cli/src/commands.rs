use std::collections::BTreeSet;
use std::fmt::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use quadtree::arith::{ratio, Var};
use quadtree::demo::{demo, DEMOS};
use quadtree::dot::export_dot;
use quadtree::family::{Family, FamilySet};
use quadtree::json::{family_to_json, point_to_json, valuation_to_json};
use quadtree::oracle::{
    in_family_with_depth, irredundance_certificate, semigroup_member, Exception, Locus,
    MembershipAnswer, PartReport,
};
use quadtree::position::{position, position_parametric, resolve};
use quadtree::proximity::{
    first_kind_contains, is_proximate, proximate_ancestors, proximate_points, strict_transforms,
};
use quadtree::topology::{
    closure_member, irreducible_components, is_noetherian, patch_limit_points, zariski_closure,
    Generator,
};
use quadtree::tree::{Point, Step};
use quadtree::valuation::Valuation;

use crate::{input, Command, Failure, Output};

type Run = Result<Output, Failure>;

fn sorted_paths<'a>(points: impl IntoIterator<Item = &'a Point>) -> Vec<String> {
    let set: BTreeSet<&Point> = points.into_iter().collect();
    set.into_iter().map(Point::to_string).collect()
}

fn paths_json<'a>(points: impl IntoIterator<Item = &'a Point>) -> Value {
    let set: BTreeSet<&Point> = points.into_iter().collect();
    Value::Array(set.into_iter().map(point_to_json).collect())
}

fn lines(items: &[String]) -> String {
    items.iter().map(|s| format!("  {s}\n")).collect()
}

pub fn run(cmd: Command) -> Run {
    match cmd {
        Command::Position { f, g, point } => cmd_position(&f, g.as_deref(), &point),
        Command::Resolve { f, g, max_depth } => cmd_resolve(&f, g.as_deref(), max_depth),
        Command::Prox {
            point,
            anchor,
            max_depth,
            steps,
        } => cmd_prox(&point, anchor.as_deref(), max_depth, &steps),
        Command::Ancestors { point } => cmd_ancestors(&point),
        Command::Strict { f, point } => cmd_strict(&f, &point),
        Command::Limits { family } => cmd_limits(&input::family(&family)?),
        Command::Closure {
            family,
            max_depth,
            steps,
        } => cmd_closure(&input::family(&family)?, max_depth, &steps),
        Command::Noetherian { family } => cmd_noetherian(&input::family(&family)?),
        Command::Components { family } => cmd_components(&input::family(&family)?),
        Command::Member {
            elt,
            point,
            family,
            max_depth,
        } => {
            let f = input::element(&elt)?;
            let s = match (point, family) {
                (Some(p), _) => FamilySet::new(vec![Family::Singleton(input::point(&p)?)]),
                (None, Some(path)) => input::family(&path)?,
                (None, None) => {
                    return Err(Failure::Usage("--point or --family is required".into()))
                }
            };
            cmd_member(&f, &s, max_depth)
        }
        Command::Irredundant {
            family,
            point,
            candidates,
            samples,
            seed,
        } => {
            let u = input::family(&family)?;
            let delta = input::point(&point)?;
            let hs = candidates
                .iter()
                .map(|c| input::poly(c))
                .collect::<Result<Vec<_>, _>>()?;
            cmd_irredundant(&u, &delta, &hs, samples, seed)
        }
        Command::Semigroup { elt, generators } => {
            let target = input::monomial(&elt)?;
            let gens = generators
                .iter()
                .map(|g| input::monomial(g))
                .collect::<Result<Vec<_>, _>>()?;
            cmd_semigroup(target, &gens)
        }
        Command::Demo { name } => cmd_demo(name.as_deref()),
        Command::Dot {
            family,
            max_depth,
            steps,
            dot,
            node_cap,
        } => {
            let s = input::family(&family)?;
            let alphabet = input::steps(&steps)?;
            let text = export_dot(&s, &alphabet, max_depth, node_cap)?;
            match dot {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Ok(Output {
                        text: format!("wrote {}", path.display()),
                        json: json!({"written": path.display().to_string()}),
                    })
                }
                None => Ok(Output {
                    json: json!({"dot": text}),
                    text,
                }),
            }
        }
    }
}

fn cmd_position(f: &str, g: Option<&str>, point: &str) -> Run {
    let f = input::quotient(f, g)?;
    let alpha = input::point(point)?;
    let expressed = alpha.show(&alpha.express(&f));
    if f.contains_var(Var::A) {
        let pp = position_parametric(&alpha, &f)?;
        let mut text = format!("{} at {alpha}: {} for generic a\n", f, pp.generic);
        for (a, s) in &pp.exceptions {
            let _ = writeln!(text, "  a = {a}: {s}");
        }
        let _ = writeln!(text, "expressed: {expressed}");
        let exceptions: Vec<Value> = pp
            .exceptions
            .iter()
            .map(|(a, s)| json!({"a": a.to_string(), "outcome": s.to_string()}))
            .collect();
        return Ok(Output {
            text,
            json: json!({
                "element": f.to_string(),
                "point": point_to_json(&alpha),
                "expressed": expressed,
                "generic": pp.generic,
                "exceptions": exceptions,
            }),
        });
    }
    let pos = position(&alpha, &f)?;
    Ok(Output {
        text: format!("{pos}\nexpressed at {alpha}: {expressed}"),
        json: json!({
            "element": f.to_string(),
            "point": point_to_json(&alpha),
            "expressed": expressed,
            "position": pos,
        }),
    })
}

fn cmd_resolve(f: &str, g: Option<&str>, depth: usize) -> Run {
    let f = input::quotient(f, g)?;
    let r = resolve(&f, depth)?;
    let zeros = sorted_paths(&r.zeros);
    let poles = sorted_paths(&r.poles);
    let mut text = format!("zeros:\n{}poles:\n{}", lines(&zeros), lines(&poles));
    for d in &r.diagnostics {
        let _ = writeln!(text, "note: {d}");
    }
    Ok(Output {
        text,
        json: json!({
            "element": f.to_string(),
            "zeros": paths_json(&r.zeros),
            "poles": paths_json(&r.poles),
            "depth_used": r.depth_used,
            "diagnostics": r.diagnostics,
        }),
    })
}

fn cmd_prox(point: &str, anchor: Option<&str>, max_depth: Option<usize>, steps: &str) -> Run {
    let beta = input::point(point)?;
    if let Some(a) = anchor {
        let alpha = input::point(a)?;
        let yes = is_proximate(&beta, &alpha);
        return Ok(Output {
            text: format!(
                "{beta} is {}proximate to {alpha}",
                if yes { "" } else { "not " }
            ),
            json: json!({"point": point_to_json(&beta), "anchor": point_to_json(&alpha), "proximate": yes}),
        });
    }
    let alphabet = input::steps(steps)?;
    let bound = max_depth.unwrap_or(beta.level() + 3);
    let pts = proximate_points(&beta, bound, &alphabet);
    Ok(Output {
        text: lines(&sorted_paths(&pts)),
        json: json!({"point": point_to_json(&beta), "max_level": bound, "proximate": paths_json(&pts)}),
    })
}

fn cmd_ancestors(point: &str) -> Run {
    let g = input::point(point)?;
    let anc = proximate_ancestors(&g);
    Ok(Output {
        text: lines(&sorted_paths(&anc)),
        json: json!({"point": point_to_json(&g), "ancestors": paths_json(&anc)}),
    })
}

fn cmd_strict(f: &str, point: &str) -> Run {
    let h = input::poly(f)?;
    let alpha = input::point(point)?;
    let ts = strict_transforms(&h, &alpha)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for (l, t) in ts.iter().enumerate() {
        let at = alpha.prefix(l);
        let shown = at.show_poly(t);
        let _ = writeln!(text, "{at}: {shown}");
        rows.push(json!({"point": point_to_json(&at), "transform": shown}));
    }
    Ok(Output {
        text,
        json: json!({"curve": h.to_string(), "transforms": rows}),
    })
}

fn cmd_limits(s: &FamilySet) -> Run {
    let lim = patch_limit_points(s)?;
    let shown: Vec<String> = lim.iter().map(Valuation::to_string).collect();
    Ok(Output {
        text: lines(&shown),
        json: json!({"limits": lim.iter().map(valuation_to_json).collect::<Vec<_>>()}),
    })
}

fn cmd_closure(s: &FamilySet, max_depth: usize, steps: &str) -> Run {
    let alphabet = input::steps(steps)?;
    let c = zariski_closure(s)?;
    let mut members = BTreeSet::new();
    let mut frontier = vec![Point::root()];
    for level in 0..=max_depth {
        let mut next = Vec::new();
        for p in frontier {
            if closure_member(&c, &p)? {
                members.insert(p.clone());
            }
            if level < max_depth {
                next.extend(alphabet.iter().map(|st| p.child(st)));
            }
        }
        frontier = next;
    }
    let divisors: Vec<String> = c.divisors.iter().map(Valuation::to_string).collect();
    let minimals: Vec<String> = c.minimals.iter().map(Valuation::to_string).collect();
    let text = format!(
        "closure of {s}\ndivisorial limits:\n{}minimal limits:\n{}points up to level {max_depth}:\n{}",
        lines(&divisors),
        lines(&minimals),
        lines(&sorted_paths(&members)),
    );
    Ok(Output {
        text,
        json: json!({
            "divisors": c.divisors.iter().map(valuation_to_json).collect::<Vec<_>>(),
            "minimals": c.minimals.iter().map(valuation_to_json).collect::<Vec<_>>(),
            "max_level": max_depth,
            "points": paths_json(&members),
        }),
    })
}

fn cmd_noetherian(s: &FamilySet) -> Run {
    let cert = is_noetherian(s)?;
    let covering: Vec<String> = cert.covering.iter().map(Valuation::to_string).collect();
    let mut text = format!("noetherian: {}\n", cert.verdict);
    if cert.verdict {
        let _ = write!(text, "covered by:\n{}", lines(&covering));
    }
    if let Some(w) = &cert.witness {
        let _ = writeln!(text, "infinite part: {w}");
    }
    Ok(Output {
        text,
        json: json!({
            "noetherian": cert.verdict,
            "covering": cert.covering.iter().map(valuation_to_json).collect::<Vec<_>>(),
            "witness": cert.witness.as_ref().map(family_to_json),
        }),
    })
}

fn generator_json(g: &Generator) -> Value {
    match g {
        Generator::Point(p) => json!({"point": point_to_json(p)}),
        Generator::Valuation(v) => json!({"valuation": valuation_to_json(v)}),
    }
}

fn cmd_components(s: &FamilySet) -> Run {
    let c = zariski_closure(s)?;
    let comps = irreducible_components(&c)?;
    let shown: Vec<String> = comps.iter().map(Generator::to_string).collect();
    Ok(Output {
        text: format!("{} component(s):\n{}", comps.len(), lines(&shown)),
        json: json!({"components": comps.iter().map(generator_json).collect::<Vec<_>>()}),
    })
}

fn locus_text(l: &Locus) -> String {
    match l {
        Locus::Member => "member".into(),
        Locus::Param(a) => format!("a = {a}"),
        Locus::Pair(a) => format!("a = {a} at one member"),
        Locus::Curve(c) => format!("curve {c}"),
    }
}

fn exception_json(e: &Exception) -> Value {
    json!({
        "locus": locus_text(&e.locus),
        "outcome": e.outcome.to_string(),
        "witness": point_to_json(&e.witness),
        "note": e.note,
    })
}

fn part_json(p: &PartReport) -> Value {
    json!({
        "kind": p.kind,
        "generic": p.generic,
        "representative": p.representative.as_ref().map(point_to_json),
        "exceptions": p.exceptions.iter().map(exception_json).collect::<Vec<_>>(),
        "flags": p.flags,
    })
}

fn answer_text(ans: &MembershipAnswer) -> String {
    let mut text = format!("{}\n", ans.verdict);
    if let Some(w) = &ans.witness {
        let _ = writeln!(text, "witness: {w}");
    }
    for (i, p) in ans.parts.iter().enumerate() {
        let generic = p
            .generic
            .map(|g| g.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(text, "part {i} ({}): generic {generic}", p.kind);
        for e in &p.exceptions {
            let _ = writeln!(
                text,
                "  {}: {} at {} {}",
                locus_text(&e.locus),
                e.outcome,
                e.witness,
                e.note
            );
        }
    }
    for flag in &ans.flags {
        let _ = writeln!(text, "flag: {flag}");
    }
    text
}

fn cmd_member(f: &quadtree::RatFunc, s: &FamilySet, depth: usize) -> Run {
    let ans = in_family_with_depth(f, s, depth)?;
    Ok(Output {
        text: answer_text(&ans),
        json: json!({
            "element": f.to_string(),
            "verdict": ans.verdict.to_string(),
            "witness": ans.witness.as_ref().map(point_to_json),
            "parts": ans.parts.iter().map(part_json).collect::<Vec<_>>(),
            "flags": ans.flags,
        }),
    })
}

/// A random member of one part of `u`, when it has one.
fn sample_member(part: &Family, rng: &mut ChaCha8Rng) -> Result<Option<Point>, Failure> {
    Ok(match part {
        Family::Singleton(p) => Some(p.clone()),
        Family::Fiber {
            base,
            excluded,
            tail,
            ..
        } => {
            let t = if rng.gen_bool(0.1) {
                Step::Infinity
            } else {
                Step::Finite(ratio(rng.gen_range(-40..=40), rng.gen_range(1..=6)))
            };
            if excluded.contains(&t) {
                None
            } else {
                Some(tail.iter().fold(base.child(&t), |p, s| p.child(s)))
            }
        }
        Family::Chain { .. } | Family::Siblings { .. } => {
            part.enumerate(8, &[])?.choose(rng).cloned()
        }
    })
}

fn cmd_irredundant(
    u: &FamilySet,
    delta: &Point,
    candidates: &[quadtree::Poly],
    samples: usize,
    seed: u64,
) -> Run {
    let cert = irredundance_certificate(u, delta, candidates)?;
    let h = cert.curve().clone();
    if !first_kind_contains(&h, delta)? {
        return Err(Failure::Check(format!("{h} does not pass through {delta}")));
    }
    // re-check the claim at random competitors
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut tries = 0;
    while checked < samples && tries < 20 * samples.max(1) && !u.parts.is_empty() {
        tries += 1;
        let part = &u.parts[rng.gen_range(0..u.parts.len())];
        let Some(c) = sample_member(part, &mut rng)? else {
            continue;
        };
        if &c == delta {
            continue;
        }
        if first_kind_contains(&h, &c)? {
            return Err(Failure::Check(format!(
                "{h} also passes through member {c}"
            )));
        }
        checked += 1;
    }
    let checks: Vec<Value> = cert
        .checks
        .iter()
        .map(|c| {
            json!({
                "part": c.part,
                "condition": c.condition.as_ref().map(|p| p.to_string()),
                "contained": paths_json(&c.contained),
                "note": c.note,
            })
        })
        .collect();
    Ok(Output {
        text: format!(
            "{h} certifies {delta}\n{}re-checked at {checked} random competitors",
            lines(&cert.uniqueness_domain)
        ),
        json: json!({
            "member": point_to_json(delta),
            "curve": h.to_string(),
            "uniqueness_domain": cert.uniqueness_domain,
            "checks": checks,
            "sampled_competitors": checked,
            "seed": seed,
        }),
    })
}

fn cmd_semigroup(target: (i64, i64), gens: &[(i64, i64)]) -> Run {
    let yes = semigroup_member(target, gens)?;
    Ok(Output {
        text: format!("{yes}"),
        json: json!({"target": [target.0, target.1], "generators": gens, "member": yes}),
    })
}

fn cmd_demo(name: Option<&str>) -> Run {
    let names: Vec<&str> = match name {
        None => {
            return Ok(Output {
                text: DEMOS.join("\n"),
                json: json!({"demos": DEMOS}),
            })
        }
        Some("all") => DEMOS.to_vec(),
        Some(n) => vec![n],
    };
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut failed = Vec::new();
    for n in names {
        let r = demo(n)?;
        let _ = writeln!(text, "{}", r.name);
        for c in &r.claims {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            let _ = writeln!(text, "  {mark} {}", c.claim);
            if !c.pass {
                let _ = writeln!(text, "       {}", c.detail);
            }
        }
        failed.extend(
            r.claims
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", r.name, c.claim)),
        );
        reports.push(serde_json::to_value(&r).expect("reports serialize"));
    }
    if !failed.is_empty() {
        return Err(Failure::Check(format!("failed: {}", failed.join("; "))));
    }
    Ok(Output {
        text,
        json: Value::Array(reports),
    })
}
