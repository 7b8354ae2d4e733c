//! Case handlers. Names follow the configuration: hub `v`, wheel vertices
//! `v1..v4`, spokes `P1..P4`, rim segments `R1..R4`, and `P` from `v1` to
//! `p1`.

use crate::bridges::{bridge_path, compute_bridges, Bridge};
use crate::graph::{interior, join, subpath, Path, Vertex};
use crate::subdiv::{Embedding, Pattern};
use crate::wheel::WheelW4;

use super::certify::{certify_configuration, Certified, Claim};
use super::config::{classify_p1, CaseLabel, Configuration};
use super::pocket;
use super::tables::{EndpointTable, Part, RowClass, TABLE_C1, TABLE_D1};
use super::{Action, Ctx, Step};

/// Claims tried per class before moving on.
const MAX_TRIES: usize = 4;

pub(crate) fn inner(p: &[Vertex], x: Vertex) -> bool {
    interior(p).contains(&x)
}

pub(crate) fn bridges_of(ctx: &Ctx, c: &Configuration, extra: &[&Path]) -> Vec<Bridge> {
    compute_bridges(ctx.g, &c.composite_vertices(extra), &c.composite_edges(extra)).expect("composite is a subgraph")
}

/// Certifies `claim` on the composite; a failure is logged and skipped.
pub(crate) fn try_claim(
    ctx: &mut Ctx,
    c: &Configuration,
    extra: &[&Path],
    claim: Claim,
    label: CaseLabel,
    context: &str,
) -> Option<Step> {
    match certify_configuration(ctx.g, c, extra, claim, context, ctx.budget) {
        Ok(Certified::K5Minus(e)) => Some(Step::Found(e)),
        Ok(Certified::ShorterW4(w)) => Some(Step::Shorter(w.wheel)),
        Err(err) => {
            ctx.log(
                Some(label),
                Action::ClaimFalsified,
                c.h.total_spoke_length(),
                Some(err.to_string()),
            );
            None
        }
    }
}

fn escalate(c: &Configuration, extra: &[&Path], why: &str) -> Step {
    Step::Escalate(c.composite_edges(extra), why.to_string())
}

/// `P` meets the wheel only at its two ends, starting at `v1`.
fn well_formed(ctx: &Ctx, c: &Configuration) -> bool {
    let p = c.p();
    let wheel = c.h.vertices();
    p.len() >= 2
        && p[0] == c.v(1)
        && ctx.g.is_path(p)
        && wheel.binary_search(&c.p1()).is_ok()
        && interior(p).iter().all(|x| wheel.binary_search(x).is_err())
}

pub(crate) fn dispatch(ctx: &mut Ctx, c: &Configuration) -> Step {
    if !well_formed(ctx, c) {
        return escalate(c, &[], "malformed configuration");
    }
    let land = match classify_p1(&c.h, c.p1()) {
        Ok(l) => l,
        Err(e) => return escalate(c, &[], &e.to_string()),
    };
    let c = if land.mirror {
        Configuration::new(c.h.mirrored(), c.p().clone())
    } else {
        c.clone()
    };
    ctx.log(
        Some(land.label),
        Action::Classify,
        c.h.total_spoke_length(),
        Some(format!("p1 = {}", c.p1())),
    );
    match land.label {
        CaseLabel::A => case_a(&c),
        CaseLabel::B => Step::Found(case_b(&c.h, c.p())),
        CaseLabel::C => case_c(ctx, &c),
        CaseLabel::D => case_d(ctx, &c),
        _ => case_e(ctx, &c),
    }
}

/// `p1` inside `P2`: cutting `P2` at `p1` and routing the rim along `P` is
/// a wheel with a strictly shorter spoke.
pub(crate) fn case_a(c: &Configuration) -> Step {
    let (v, p1) = (c.hub(), c.p1());
    let spokes = [
        c.sp(1).clone(),
        subpath(c.sp(2), v, p1).unwrap(),
        c.sp(3).clone(),
        c.sp(4).clone(),
    ];
    let r2 = join(&[&subpath(c.sp(2), p1, c.v(2)).unwrap(), c.rim(2)]);
    let rim = [c.p().clone(), r2, c.rim(3).clone(), c.rim(4).clone()];
    Step::Shorter(WheelW4::new(v, spokes, rim))
}

/// `P` runs from `v1` to `v3`: tetravertices `v`, `v1`, `v3`, trivertices
/// `v2`, `v4`.
pub(crate) fn case_b(h: &WheelW4, p: &Path) -> Embedding {
    let [v1, v2, v3, v4] = h.smr;
    let [p1, p2, p3, p4] = h.spokes.clone();
    let [r1, r2, r3, r4] = h.rim.clone();
    Embedding::new(
        Pattern::k5_minus(),
        vec![h.hub, v1, v3, v2, v4],
        vec![p1, p3, p2, p4, p.clone(), r1, r4, r2, r3],
    )
}

/// Every (bridge, attachment) pair at `apex` other than the apex itself.
fn attachments_at(bridges: &[Bridge], apex: Vertex) -> Vec<(usize, Vertex)> {
    bridges
        .iter()
        .enumerate()
        .filter(|(_, b)| b.touches(apex))
        .flat_map(|(i, b)| b.attachments.iter().filter(move |&&a| a != apex).map(move |&a| (i, a)))
        .collect()
}

fn pos(p: &[Vertex], x: Vertex) -> usize {
    p.iter().position(|&y| y == x).unwrap()
}

fn case_c(ctx: &mut Ctx, c: &Configuration) -> Step {
    let (v1, v2, v3, p1) = (c.v(1), c.v(2), c.v(3), c.p1());
    let bridges = bridges_of(ctx, c, &[]);
    let near_v2 = subpath(c.rim(2), v2, p1).unwrap();
    let stage = |a: Vertex| -> (u8, usize) {
        if a == v1 {
            (0, 0)
        } else if c.rim(1).contains(&a) || (near_v2.contains(&a) && a != p1) || inner(c.p(), a) || inner(c.sp(1), a) {
            (1, 0)
        } else if inner(c.sp(2), a) || inner(c.sp(4), a) {
            (2, 0)
        } else if inner(c.rim(4), a) {
            (3, c.rim(4).len() - 1 - pos(c.rim(4), a))
        } else {
            (4, 0)
        }
    };
    let at = attachments_at(&bridges, v3);
    let Some(&(bi, a)) = at.iter().min_by_key(|&&(i, a)| (stage(a), a, i)) else {
        return escalate(c, &[], "no bridge at v3");
    };
    let q = bridge_path(ctx.g, &bridges[bi], v3, a).expect("bridge joins its attachments");
    let cq = c.with("Q", q.clone());
    let total = c.h.total_spoke_length();
    match stage(a).0 {
        0 => {
            let mut p = q;
            p.reverse();
            Step::Found(case_b(&c.h, &p))
        }
        1 => try_claim(ctx, &cq, &[], Claim::K5Minus, CaseLabel::C, "U3 meets the v1 side")
            .unwrap_or_else(|| escalate(&cq, &[], "U3 K5 claim")),
        2 => try_claim(ctx, &cq, &[], Claim::ShorterW4, CaseLabel::C, "U3 meets P2 or P4")
            .unwrap_or_else(|| escalate(&cq, &[], "U3 shorter claim")),
        3 => {
            ctx.log(Some(CaseLabel::CI), Action::Classify, total, Some(format!("q3 = {a}")));
            c_table(ctx, &cq, a)
        }
        _ => {
            let label = if at.iter().any(|&(_, a)| inner(c.sp(3), a) || a == c.hub()) {
                CaseLabel::CII1
            } else {
                CaseLabel::CII2
            };
            ctx.log(Some(label), Action::Classify, total, None);
            pocket::resolve(ctx, c, 2, label)
        }
    }
}

fn case_d(ctx: &mut Ctx, c: &Configuration) -> Step {
    let (v, v1, v3, p1) = (c.hub(), c.v(1), c.v(3), c.p1());
    let bridges = bridges_of(ctx, c, &[]);
    let low = subpath(c.sp(3), v, p1).unwrap();
    let stage = |a: Vertex| -> (u8, usize) {
        if a == v || a == v1 || inner(c.p(), a) || inner(&low, a) {
            (0, 0)
        } else if inner(c.sp(2), a) || inner(c.sp(4), a) {
            (1, 0)
        } else if inner(c.rim(1), a) || inner(c.rim(4), a) {
            (2, 0)
        } else if inner(c.sp(1), a) {
            (3, c.sp(1).len() - 1 - pos(c.sp(1), a))
        } else {
            (4, 0)
        }
    };
    let at = attachments_at(&bridges, v3);
    let Some(&(bi, a)) = at.iter().min_by_key(|&&(i, a)| (stage(a), a, i)) else {
        return escalate(c, &[], "no bridge at v3");
    };
    let q = bridge_path(ctx.g, &bridges[bi], v3, a).expect("bridge joins its attachments");
    let cq = c.with("Q", q.clone());
    let total = c.h.total_spoke_length();
    match stage(a).0 {
        0 => try_claim(
            ctx,
            &cq,
            &[],
            Claim::K5Minus,
            CaseLabel::D,
            "U3 meets v, v1, P or vP3p1",
        )
        .unwrap_or_else(|| escalate(&cq, &[], "U3 K5 claim")),
        1 => try_claim(ctx, &cq, &[], Claim::ShorterW4, CaseLabel::D, "U3 meets P2 or P4")
            .unwrap_or_else(|| escalate(&cq, &[], "U3 shorter claim")),
        // seen from v3, Q lands inside R2 or R3 of the turned wheel
        2 => Step::Redispatch(Configuration::new(c.h.rotated(2), q), "half turn onto Q"),
        3 => {
            ctx.log(Some(CaseLabel::DI), Action::Classify, total, Some(format!("q3 = {a}")));
            let spare: Vec<&Path> = [c.p(), &q, c.sp(1), c.sp(3)].into();
            let k = bridges_of(ctx, &cq, &[]);
            let touching = k
                .iter()
                .filter(|b| {
                    b.attachments
                        .iter()
                        .any(|&x| x != v && x != v1 && x != v3 && spare.iter().any(|p| inner(p, x)))
                })
                .filter(|b| b.attachments.len() >= 2)
                .take(MAX_TRIES)
                .cloned()
                .collect::<Vec<_>>();
            for b in touching {
                let (x, y) = (b.attachments[0], b.attachments[b.attachments.len() - 1]);
                let r = bridge_path(ctx.g, &b, x, y).expect("bridge joins its attachments");
                if let Some(s) = try_claim(
                    ctx,
                    &cq,
                    &[&r],
                    Claim::ShorterW4,
                    CaseLabel::DI,
                    "bridge on P, Q, P1 or P3",
                ) {
                    return s;
                }
            }
            d_table(ctx, &cq)
        }
        _ => {
            let label = if at.iter().any(|&(_, a)| inner(c.rim(2), a) || inner(c.rim(3), a)) {
                CaseLabel::DII2
            } else {
                CaseLabel::DII1
            };
            ctx.log(Some(label), Action::Classify, total, None);
            pocket::resolve(ctx, c, 2, label)
        }
    }
}

fn case_e(ctx: &mut Ctx, c: &Configuration) -> Step {
    let h_only = Configuration {
        h: c.h.clone(),
        aux: Default::default(),
    };
    let Some(u1) = pocket::bridge_with(ctx, &h_only, c.p()) else {
        return escalate(c, &[], "P is not inside a bridge");
    };
    // a path handed over by another case may not be the best one in U1
    let v1 = c.v(1);
    let best = u1
        .attachments
        .iter()
        .filter(|&&a| a != v1)
        .filter_map(|&a| classify_p1(&c.h, a).ok().map(|l| (l.rank, a, l.label)))
        .min();
    if let Some((_, a, label)) = best {
        if label != CaseLabel::E {
            let p = bridge_path(ctx.g, &u1, v1, a).expect("bridge joins its attachments");
            return dispatch(ctx, &Configuration::new(c.h.clone(), p));
        }
    }
    let label = if u1.attachments.iter().any(|&a| a != v1 && c.sp(1).contains(&a)) {
        CaseLabel::E1
    } else {
        CaseLabel::E2
    };
    ctx.log(Some(label), Action::Classify, c.h.total_spoke_length(), None);
    pocket::resolve(ctx, c, 0, label)
}

/// Case (c)(i) with `Q` from `v3` to `q3` inside `R4`.
pub(crate) fn c_table(ctx: &mut Ctx, cq: &Configuration, q3: Vertex) -> Step {
    let (v, v1, v2, v3, v4, p1) = (cq.hub(), cq.v(1), cq.v(2), cq.v(3), cq.v(4), cq.p1());
    let q = cq.path("Q").expect("Q is set").clone();
    let g1 = vec![
        (Part::R1, cq.rim(1).clone()),
        (Part::V2R2P1, subpath(cq.rim(2), v2, p1).unwrap()),
        (Part::P1R2V3, subpath(cq.rim(2), p1, v3).unwrap()),
        (Part::P1, cq.sp(1).clone()),
        (Part::P2, cq.sp(2).clone()),
        (Part::P, cq.p().clone()),
    ];
    let g2 = vec![
        (Part::R3, cq.rim(3).clone()),
        (Part::V4R4Q3, subpath(cq.rim(4), v4, q3).unwrap()),
        (Part::Q3R4V1, subpath(cq.rim(4), q3, v1).unwrap()),
        (Part::P3, cq.sp(3).clone()),
        (Part::P4, cq.sp(4).clone()),
        (Part::Q, q),
    ];
    table_step(ctx, cq, &TABLE_C1, CaseLabel::CI, &g1, &g2, [v1, v, v3])
}

/// Case (d)(i) with `Q` from `v3` into `P1`.
pub(crate) fn d_table(ctx: &mut Ctx, cq: &Configuration) -> Step {
    let g1 = vec![
        (Part::R1, cq.rim(1).clone()),
        (Part::R2, cq.rim(2).clone()),
        (Part::P2, cq.sp(2).clone()),
    ];
    let g2 = vec![
        (Part::R3, cq.rim(3).clone()),
        (Part::R4, cq.rim(4).clone()),
        (Part::P4, cq.sp(4).clone()),
    ];
    table_step(
        ctx,
        cq,
        &TABLE_D1,
        CaseLabel::DI,
        &g1,
        &g2,
        [cq.v(1), cq.hub(), cq.v(3)],
    )
}

/// A linking path `R` between the two sides of a table, with the rows its
/// ends could realise.
struct Candidate {
    bridge: usize,
    x: Vertex,
    y: Vertex,
    rows: Vec<(&'static str, RowClass)>,
}

impl Candidate {
    fn has(&self, class: RowClass) -> bool {
        self.rows.iter().any(|r| r.1 == class)
    }
}

fn parts_of(side: &[(Part, Path)], x: Vertex) -> Vec<Part> {
    side.iter()
        .filter(|(_, p)| p.contains(&x))
        .map(|(part, _)| *part)
        .collect()
}

/// Looks up every path `R` from `G1 - S` to `G2 - S` and acts on the table
/// row it realises. With no such path `S` separates the graph.
fn table_step(
    ctx: &mut Ctx,
    c: &Configuration,
    table: &EndpointTable,
    label: CaseLabel,
    g1: &[(Part, Path)],
    g2: &[(Part, Path)],
    sep: [Vertex; 3],
) -> Step {
    let bridges = bridges_of(ctx, c, &[]);
    let mut cands = Vec::new();
    for (i, b) in bridges.iter().enumerate() {
        for &x in &b.attachments {
            if sep.contains(&x) {
                continue;
            }
            let m1 = parts_of(g1, x);
            if m1.is_empty() {
                continue;
            }
            for &y in &b.attachments {
                if y == x || sep.contains(&y) {
                    continue;
                }
                let m2 = parts_of(g2, y);
                let rows: Vec<_> = m1
                    .iter()
                    .flat_map(|&a| m2.iter().filter_map(move |&b| table.lookup(a, b)))
                    .map(|r| (r.id, r.class))
                    .collect();
                if !rows.is_empty() {
                    cands.push(Candidate { bridge: i, x, y, rows });
                }
            }
        }
    }
    if cands.is_empty() {
        return Step::Cut(sep.to_vec());
    }
    let path = |ctx: &Ctx, k: &Candidate| {
        bridge_path(ctx.g, &bridges[k.bridge], k.x, k.y).expect("bridge joins its attachments")
    };
    let total = c.h.total_spoke_length();
    for (class, claim) in [
        (RowClass::K5Minus, Claim::K5Minus),
        (RowClass::ShorterW4, Claim::ShorterW4),
    ] {
        for k in cands.iter().filter(|k| k.has(class)).take(MAX_TRIES) {
            let r = path(ctx, k);
            let rows: Vec<&str> = k.rows.iter().map(|r| r.0).collect();
            ctx.log(
                Some(label),
                Action::Classify,
                total,
                Some(format!("{} row {}", table.name, rows.join("/"))),
            );
            let context = format!("{} row {} via {}-{}", table.name, rows.join("/"), k.x, k.y);
            if let Some(s) = try_claim(ctx, c, &[&r], claim, label, &context) {
                return s;
            }
        }
    }
    // residual rows: a second linking path, then the small cuts
    let residual: Vec<&Candidate> = cands
        .iter()
        .filter(|k| !k.has(RowClass::K5Minus) && !k.has(RowClass::ShorterW4))
        .collect();
    for (i, k1) in residual.iter().enumerate().take(MAX_TRIES) {
        for k2 in residual.iter().skip(i + 1).take(MAX_TRIES) {
            if k1.x == k2.x && k1.y == k2.y {
                continue;
            }
            let (r1, r2) = (path(ctx, k1), path(ctx, k2));
            for claim in [Claim::K5Minus, Claim::ShorterW4] {
                if let Some(s) = try_claim(ctx, c, &[&r1, &r2], claim, label, "two residual paths") {
                    return s;
                }
            }
        }
    }
    for k in residual.iter().take(MAX_TRIES) {
        let pool = [k.x, k.y, sep[0], sep[1], sep[2]];
        for a in 0..5 {
            for b in a + 1..5 {
                for d in b + 1..5 {
                    let cut = vec![pool[a], pool[b], pool[d]];
                    if crate::connectivity::Separator::from_cut(ctx.g, &cut).is_some() {
                        return Step::Cut(cut);
                    }
                }
            }
        }
    }
    if let Some(q) = c.path("Q") {
        return Step::Redispatch(Configuration::new(c.h.rotated(2), q.clone()), "half turn onto Q");
    }
    escalate(c, &[], "residual rows unresolved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::subdiv::{verify_embedding, SearchBudget};

    /// Hub 0, smr 1..=4, spoke interiors 5..=8, rim interiors 9..=12.
    fn long_wheel() -> WheelW4 {
        WheelW4::new(
            0,
            [vec![0, 5, 1], vec![0, 6, 2], vec![0, 7, 3], vec![0, 8, 4]],
            [vec![1, 9, 2], vec![2, 10, 3], vec![3, 11, 4], vec![4, 12, 1]],
        )
    }

    #[test]
    fn case_a_cuts_spoke_two() {
        let c = Configuration::new(long_wheel(), vec![1, 13, 6]);
        let Step::Shorter(w) = case_a(&c) else { panic!() };
        assert_eq!(w.total_spoke_length(), 7);
        assert_eq!(w.smr, [1, 6, 3, 4]);
        let mut e = long_wheel().edges();
        e.extend([(1, 13), (13, 6)]);
        assert_eq!(w.verify(&Graph::new(14, e).unwrap()), Ok(()));
    }

    #[test]
    fn case_a_next_to_hub() {
        // P2 = 0-6-2 with p1 = 6 adjacent to the hub
        let c = Configuration::new(long_wheel(), vec![1, 6]);
        let Step::Shorter(w) = case_a(&c) else { panic!() };
        assert_eq!(w.spokes[1], vec![0, 6]);
    }

    #[test]
    fn case_b_embedding() {
        let h = long_wheel();
        let mut e = h.edges();
        e.extend([(1, 13), (13, 3)]);
        let g = Graph::new(14, e).unwrap();
        let emb = case_b(&h, &vec![1, 13, 3]);
        assert_eq!(verify_embedding(&g, &emb), Ok(()));
        assert_eq!(emb.paths.iter().filter(|p| p.len() == 3).count(), 9);
        // swapping a trivertex with a tetravertex breaks it
        let mut bad = emb.clone();
        bad.branch_map.swap(2, 3);
        assert!(verify_embedding(&g, &bad).is_err());
    }

    #[test]
    fn case_b_on_k5() {
        let h = WheelW4::new(
            0,
            [vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]],
            [vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
        );
        let emb = case_b(&h, &vec![1, 3]);
        assert_eq!(verify_embedding(&Graph::complete(5), &emb), Ok(()));
    }

    #[test]
    fn table_row_one_in_case_c() {
        // long wheel, P = 1-13-10 into R2, Q = 3-14-12 into R4, R = 9-15-11 (R1 to R3)
        let h = long_wheel();
        let mut e = h.edges();
        e.extend([(1, 13), (13, 10), (3, 14), (14, 12), (9, 15), (15, 11)]);
        let g = Graph::new(16, e).unwrap();
        let mut budget = SearchBudget::default();
        let mut ctx = Ctx {
            g: &g,
            budget: &mut budget,
            trace: Vec::new(),
        };
        let c = Configuration::new(h, vec![1, 13, 10]);
        match dispatch(&mut ctx, &c) {
            Step::Found(emb) => assert_eq!(verify_embedding(&g, &emb), Ok(())),
            other => panic!("{other:?}"),
        }
        let labels: Vec<_> = ctx.trace.iter().filter_map(|t| t.case_label.clone()).collect();
        assert!(labels.contains(&"c(i)".to_string()), "{labels:?}");
    }
}
