//! The region cut off around one wheel vertex by the bridges attached there.
//!
//! Fix an apex (`v3` in the (ii) subcases, `v1` in case (e)) and the bridges
//! `U` hanging off it. Each of the three wheel paths leaving the apex carries
//! a farthest attachment of `U`; together with the apex these boundary
//! vertices close off a pocket. Either they form a small cut, or some bridge
//! escapes from inside the pocket, and rerouting the wheel through `U`
//! frees a new path from the apex for the next round.

use std::collections::BTreeSet;

use crate::bridges::{bridge_path, compute_bridges, Bridge};
use crate::connectivity::Separator;
use crate::graph::{join, norm, path_edges, subpath, Path, Vertex};
use crate::wheel::WheelW4;

use super::cases::{bridges_of, try_claim};
use super::certify::Claim;
use super::config::{CaseLabel, Configuration};
use super::{Ctx, Step};

const MAX_ESCAPES: usize = 8;

#[derive(Debug, Clone, Copy)]
enum Piece {
    /// `rim[i]`, which starts at the apex.
    RimOut(usize),
    /// `rim[i]`, which ends at the apex.
    RimIn(usize),
    Spoke(usize),
}

/// The bridge of `c`'s composite that holds the first edge of `p`.
pub(crate) fn bridge_with(ctx: &Ctx, c: &Configuration, p: &Path) -> Option<Bridge> {
    find_bridge(&bridges_of(ctx, c, &[]), p).cloned()
}

fn find_bridge<'a>(bridges: &'a [Bridge], p: &Path) -> Option<&'a Bridge> {
    bridges.iter().find(|b| {
        if p.len() == 2 {
            b.feet.contains(&norm(p[0], p[1])) && b.core.is_empty()
        } else {
            b.core.binary_search(&p[1]).is_ok()
        }
    })
}

pub(crate) fn resolve(ctx: &mut Ctx, c: &Configuration, k: usize, label: CaseLabel) -> Step {
    let h = &c.h;
    let apex = h.smr[k];
    let (base, us): (Configuration, Vec<Bridge>) = if k == 0 {
        let base = Configuration {
            h: h.clone(),
            aux: Default::default(),
        };
        let all = bridges_of(ctx, &base, &[]);
        let Some(u1) = find_bridge(&all, c.p()).cloned() else {
            return Step::Escalate(c.composite_edges(&[]), "P is not inside a bridge".into());
        };
        (base, vec![u1])
    } else {
        let us = bridges_of(ctx, c, &[])
            .into_iter()
            .filter(|b| b.touches(apex))
            .collect();
        (c.clone(), us)
    };
    let rev = |p: &Path| p.iter().rev().copied().collect::<Path>();
    let segs: [(Piece, Path); 3] = [
        (Piece::RimOut(k), h.rim[k].clone()),
        (Piece::RimIn((k + 3) % 4), rev(&h.rim[(k + 3) % 4])),
        (Piece::Spoke(k), rev(&h.spokes[k])),
    ];
    // farthest attachment along each piece, with a bridge that reaches it
    let mut bound: [Option<(usize, usize)>; 3] = [None; 3];
    for (bi, b) in us.iter().enumerate() {
        for &a in b.attachments.iter().filter(|&&a| a != apex) {
            let Some((s, i)) = segs
                .iter()
                .enumerate()
                .find_map(|(s, (_, p))| p.iter().position(|&x| x == a).map(|i| (s, i)))
            else {
                return Step::Escalate(c.composite_edges(&[]), format!("attachment {a} off the pocket"));
            };
            if bound[s].map_or(true, |(j, _)| i > j) {
                bound[s] = Some((i, bi));
            }
        }
    }
    let total = h.total_spoke_length();
    let mut boundary = vec![apex];
    boundary.extend((0..3).filter_map(|s| bound[s].map(|(i, _)| segs[s].1[i])));

    // small cuts: the apex with the boundary, or part of it
    let mut cuts: Vec<Vec<Vertex>> = Vec::new();
    if boundary.len() <= 3 {
        cuts.push(boundary.clone());
    }
    for size in [2, 3] {
        subsets(&boundary, size, &mut cuts);
    }
    for cut in cuts {
        if Separator::from_cut(ctx.g, &cut).is_some() {
            return Step::Cut(cut);
        }
    }

    // escapes from the pocket interior
    let mut inside: BTreeSet<Vertex> = BTreeSet::new();
    for s in 0..3 {
        if let Some((i, _)) = bound[s] {
            inside.extend(segs[s].1[1..i].iter().copied());
        }
    }
    let cores: BTreeSet<Vertex> = us.iter().flat_map(|b| b.core.iter().copied()).collect();
    let mut kv: BTreeSet<Vertex> = base.composite_vertices(&[]).into_iter().collect();
    kv.extend(cores.iter().copied());
    let mut ke: BTreeSet<(Vertex, Vertex)> = base.composite_edges(&[]).into_iter().collect();
    for b in &us {
        ke.extend(b.feet.iter().copied());
        for &x in &b.core {
            ke.extend(
                ctx.g
                    .neighbors(x)
                    .iter()
                    .filter(|&&y| cores.contains(&y))
                    .map(|&y| norm(x, y)),
            );
        }
    }
    let kv: Vec<Vertex> = kv.into_iter().collect();
    let ke: Vec<(Vertex, Vertex)> = ke.into_iter().collect();
    let outer = compute_bridges(ctx.g, &kv, &ke).expect("pocket composite is a subgraph");
    let outside = |x: Vertex| !inside.contains(&x) && !boundary.contains(&x) && !cores.contains(&x);
    let mut escapes = Vec::new();
    for b in &outer {
        for &w in b.attachments.iter().filter(|x| inside.contains(x)) {
            if let Some(&t) = b.attachments.iter().find(|&&t| outside(t)) {
                escapes.push((b, w, t));
            }
        }
    }
    if escapes.is_empty() {
        return Step::Escalate(ke, format!("pocket at {apex} closed by {boundary:?}"));
    }
    for &(b, w, t) in escapes.iter().take(MAX_ESCAPES) {
        let s = segs
            .iter()
            .position(|(_, p)| p.contains(&w))
            .expect("interior lies on a piece");
        let (bi_pos, bi) = bound[s].expect("interior implies a boundary");
        let end = segs[s].1[bi_pos];
        let bp = bridge_path(ctx.g, &us[bi], end, apex).expect("pocket bridge reaches the apex");
        let r = bridge_path(ctx.g, b, w, t).expect("bridge joins its attachments");
        let q = join(&[&subpath(&segs[s].1, apex, w).unwrap(), &r]);
        let mut spokes = h.spokes.clone();
        let mut rim = h.rim.clone();
        let why = match segs[s].0 {
            Piece::RimOut(i) => {
                let tail = subpath(&rim[i], end, h.smr[(i + 1) % 4]).unwrap();
                rim[i] = join(&[&bp.iter().rev().copied().collect::<Path>(), &tail]);
                "rim rerouted through the pocket bridge"
            }
            Piece::RimIn(i) => {
                rim[i] = join(&[&subpath(&rim[i], h.smr[i], end).unwrap(), &bp]);
                "rim rerouted through the pocket bridge"
            }
            Piece::Spoke(i) => {
                spokes[i] = join(&[&subpath(&spokes[i], h.hub, end).unwrap(), &bp]);
                "spoke rerouted through the pocket bridge"
            }
        };
        let h2 = WheelW4::new(h.hub, spokes, rim);
        let v2: BTreeSet<Vertex> = h2.vertices().into_iter().collect();
        let valid = h2.verify(ctx.g).is_ok()
            && v2.contains(&t)
            && q[1..q.len() - 1].iter().all(|x| !v2.contains(x))
            && ctx.g.is_path(&q);
        if valid && h2.total_spoke_length() <= total {
            return Step::Redispatch(Configuration::new(h2.rotated(k), q), why);
        }
        let extra: Vec<&Path> = vec![&bp, &q];
        for claim in [Claim::K5Minus, Claim::ShorterW4] {
            if let Some(step) = try_claim(ctx, c, &extra, claim, label, "pocket escape") {
                return step;
            }
        }
    }
    let mut edges = ke;
    for &(b, w, t) in escapes.iter().take(MAX_ESCAPES) {
        if let Ok(r) = bridge_path(ctx.g, b, w, t) {
            edges.extend(path_edges(&r));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Step::Escalate(edges, format!("pocket at {apex} unresolved"))
}

fn subsets(items: &[Vertex], size: usize, out: &mut Vec<Vec<Vertex>>) {
    let n = items.len();
    if size > n || size == n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_subsets() {
        let mut out = Vec::new();
        subsets(&[1, 2, 3, 4], 2, &mut out);
        assert_eq!(out.len(), 6);
        subsets(&[1, 2, 3], 3, &mut out);
        assert_eq!(out.len(), 6);
    }
}
