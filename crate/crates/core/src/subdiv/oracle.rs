//! Exhaustive containment check by edge-subset enumeration.
//!
//! Shares nothing with the finder: every subset of edges is tested for being
//! exactly a subdivision of the pattern (degrees, then suppression of the
//! degree-2 chains, then isomorphism by brute-force permutation).

use thiserror::Error;

use super::Pattern;
use crate::graph::Graph;

pub const ORACLE_EDGE_LIMIT: usize = 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {0} edges, oracle limit is {ORACLE_EDGE_LIMIT}")]
    TooLarge(usize),
    #[error("pattern has an isolated branch vertex")]
    IsolatedBranch,
}

pub fn oracle_contains(g: &Graph, p: &Pattern) -> Result<bool, OracleError> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() > ORACLE_EDGE_LIMIT {
        return Err(OracleError::TooLarge(edges.len()));
    }
    let pdeg = p.degrees();
    if pdeg.contains(&0) {
        return Err(OracleError::IsolatedBranch);
    }
    let pm = p.edges.len();
    let mut want = pdeg.clone();
    want.sort_unstable();
    let twos = pdeg.iter().filter(|&&d| d == 2).count();
    let n = g.n();
    let mut deg = vec![0usize; n];
    for mask in 1u32..(1u32 << edges.len()) {
        // a subdivision has at least as many edges as the pattern
        if (mask.count_ones() as usize) < pm {
            continue;
        }
        deg.iter_mut().for_each(|d| *d = 0);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let forced: Vec<usize> = (0..n).filter(|&v| deg[v] != 0 && deg[v] != 2).collect();
        if forced.len() + twos != p.k {
            continue;
        }
        let mut have: Vec<usize> = forced.iter().map(|&v| deg[v]).collect();
        have.extend(std::iter::repeat(2).take(twos));
        have.sort_unstable();
        if have != want {
            continue;
        }
        let sub: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let deg2: Vec<usize> = (0..n).filter(|&v| deg[v] == 2).collect();
        let mut found = false;
        choose(&deg2, twos, &mut Vec::new(), &mut |extra| {
            let mut branches = forced.clone();
            branches.extend_from_slice(extra);
            branches.sort_unstable();
            if reduces_to(n, &sub, &branches, p) {
                found = true;
            }
            found
        });
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Calls `f` on each `k`-subset of `items`; stops early once `f` returns true.
fn choose(items: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == k {
        return f(cur);
    }
    for i in 0..items.len() {
        if items.len() - i < k - cur.len() {
            break;
        }
        cur.push(items[i]);
        let stop = choose(&items[i + 1..], k, cur, f);
        cur.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Suppresses the non-branch degree-2 vertices of `sub` and compares the
/// result with `p`.
fn reduces_to(n: usize, sub: &[(usize, usize)], branches: &[usize], p: &Pattern) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in sub {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut index = vec![usize::MAX; n];
    for (i, &b) in branches.iter().enumerate() {
        index[b] = i;
    }
    let k = branches.len();
    let mut reduced = vec![vec![false; k]; k];
    let mut traced = 0;
    for &b in branches {
        for &first in &adj[b] {
            let (mut prev, mut cur) = (b, first);
            traced += 1;
            while index[cur] == usize::MAX {
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
                traced += 1;
            }
            let (i, j) = (index[b], index[cur]);
            if i == j {
                return false;
            }
            // parallel chains are seen twice from each end
            if i < j {
                if reduced[i][j] {
                    return false;
                }
                reduced[i][j] = true;
                reduced[j][i] = true;
            }
        }
    }
    // a chain walk covers every subset edge twice unless a cycle floats free
    if traced != 2 * sub.len() {
        return false;
    }
    isomorphic(&reduced, p)
}

fn isomorphic(reduced: &[Vec<bool>], p: &Pattern) -> bool {
    let k = p.k;
    let mut padj = vec![vec![false; k]; k];
    for &(a, b) in &p.edges {
        padj[a][b] = true;
        padj[b][a] = true;
    }
    let mut perm: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn rec(perm: &mut Vec<usize>, used: &mut [bool], r: &[Vec<bool>], p: &[Vec<bool>]) -> bool {
        let k = p.len();
        let i = perm.len();
        if i == k {
            return true;
        }
        for c in 0..k {
            if used[c] {
                continue;
            }
            if (0..i).any(|j| p[i][j] != r[c][perm[j]]) {
                continue;
            }
            used[c] = true;
            perm.push(c);
            if rec(perm, used, r, p) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    let edges: usize = reduced.iter().flatten().filter(|&&x| x).count() / 2;
    edges == p.edges.len() && rec(&mut perm, &mut used, reduced, &padj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        Graph::new(
            6,
            (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| v != u + 3),
        )
        .unwrap()
    }

    #[test]
    fn known_answers() {
        let petersen = {
            let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            e.extend((0..5).map(|i| (i, i + 5)));
            e.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            Graph::new(10, e).unwrap()
        };
        let w5 = {
            let mut e: Vec<_> = (1..=5).map(|i| (0, i)).collect();
            e.extend((1..=5).map(|i| (i, i % 5 + 1)));
            Graph::new(6, e).unwrap()
        };
        let k5m = Pattern::k5_minus();
        assert_eq!(oracle_contains(&petersen, &k5m), Ok(false));
        assert_eq!(oracle_contains(&w5, &k5m), Ok(false));
        assert_eq!(oracle_contains(&w5, &Pattern::w4()), Ok(true));
        assert_eq!(oracle_contains(&octahedron(), &k5m), Ok(true));
        assert_eq!(oracle_contains(&Graph::complete(5), &Pattern::k5()), Ok(true));
        assert_eq!(oracle_contains(&Graph::complete(4), &Pattern::k5_minus()), Ok(false));
        assert_eq!(oracle_contains(&Graph::cycle(7), &Pattern::cycle(5)), Ok(true));
        assert_eq!(oracle_contains(&Graph::cycle(4), &Pattern::cycle(5)), Ok(false));
        assert_eq!(
            oracle_contains(&Graph::complete(8), &k5m),
            Err(OracleError::TooLarge(28))
        );
    }

    #[test]
    fn rejects_floating_cycle() {
        let p = Pattern::k5_minus();
        let mut sub = p.edges.clone();
        assert!(reduces_to(8, &sub, &[0, 1, 2, 3, 4], &p));
        sub.extend([(5, 6), (6, 7), (5, 7)]);
        assert!(!reduces_to(8, &sub, &[0, 1, 2, 3, 4], &p));
    }
}
