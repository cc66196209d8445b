//! Exact treewidth by two independent methods: a dynamic program over vertex
//! subsets and a branch-and-bound over elimination orderings.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::{AnnotatedValue, Param, TreeDecomposition, Witness};

/// Default vertex cap for [`treewidth_exact`].
pub const DEFAULT_TW_CAP: usize = 15;

/// Hard limit for the subset table (`2^n` entries).
const DP_LIMIT: usize = 24;
const BB_LIMIT: usize = 32;

fn masks32(g: &Graph) -> Vec<u32> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Width of the treewidth of `g` as a plain number; the empty graph has width 0.
fn clamp(w: i64) -> usize {
    w.max(0) as usize
}

/// Treewidth by the recurrence `TW(S) = min_v max(TW(S - v), |Q(S - v, v)|)`,
/// where `Q(S, v)` is the set of vertices outside `S + v` reachable from `v`
/// through `S`. Returns the width and an optimal elimination ordering.
pub fn treewidth_dp(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > DP_LIMIT {
        return Err(Error::TooLarge(format!(
            "subset dynamic program limited to {DP_LIMIT} vertices"
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = masks32(g);
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let size = 1usize << n;
    let mut tw = vec![i8::MAX; size];
    let mut choice = vec![0u8; size];
    tw[0] = -1;
    for s in 1..size as u32 {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let without = s & !(1 << v);
            let prev = tw[without as usize];
            if prev >= tw[s as usize] {
                continue;
            }
            let q = q_size(&adj, without, v, full) as i8;
            let val = prev.max(q);
            if val < tw[s as usize] {
                tw[s as usize] = val;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as u32;
        order.push(v as usize);
        s &= !(1 << v);
    }
    order.reverse();
    Ok((clamp(tw[full as usize] as i64), order))
}

fn q_size(adj: &[u32], s: u32, v: u32, full: u32) -> u32 {
    let inside = s | 1 << v;
    let mut reach = 1u32 << v;
    let mut frontier = reach;
    while frontier != 0 {
        let u = frontier.trailing_zeros();
        frontier &= frontier - 1;
        let new = adj[u as usize] & s & !reach;
        reach |= new;
        frontier |= new;
    }
    let mut nb = 0;
    let mut r = reach;
    while r != 0 {
        let u = r.trailing_zeros();
        r &= r - 1;
        nb |= adj[u as usize];
    }
    (nb & full & !inside).count_ones()
}

struct Bb {
    best: usize,
    best_order: Vec<usize>,
    seen: HashMap<u32, usize>,
}

/// Treewidth by depth-first search over elimination orderings, pruned by a
/// degeneracy lower bound and an upper bound from the min-fill heuristic.
pub fn treewidth_bb(g: &Graph) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n > BB_LIMIT {
        return Err(Error::TooLarge(format!(
            "branch and bound limited to {BB_LIMIT} vertices"
        )));
    }
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let adj = masks32(g);
    let (ub, ub_order) = min_fill(&adj, n);
    let mut bb = Bb {
        best: ub,
        best_order: ub_order,
        seen: HashMap::new(),
    };
    let mut order = Vec::with_capacity(n);
    branch(&mut bb, adj, 0, 0, n, &mut order);
    Ok((bb.best, bb.best_order))
}

fn eliminate(adj: &mut [u32], v: usize, removed: u32) -> u32 {
    let nb = adj[v] & !removed;
    let mut r = nb;
    while r != 0 {
        let u = r.trailing_zeros() as usize;
        r &= r - 1;
        adj[u] |= nb & !(1 << u);
        adj[u] &= !(1 << v);
    }
    nb
}

fn min_fill(adj: &[u32], n: usize) -> (usize, Vec<usize>) {
    let mut adj = adj.to_vec();
    let mut removed = 0u32;
    let mut width = 0;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| removed & 1 << v == 0)
            .min_by_key(|&v| {
                let nb = adj[v] & !removed;
                let mut fill = 0;
                let mut r = nb;
                while r != 0 {
                    let u = r.trailing_zeros() as usize;
                    r &= r - 1;
                    fill += (nb & !adj[u] & !(1 << u)).count_ones();
                }
                (fill, nb.count_ones())
            })
            .unwrap();
        width = width.max((adj[v] & !removed).count_ones() as usize);
        eliminate(&mut adj, v, removed);
        removed |= 1 << v;
        order.push(v);
    }
    (width, order)
}

fn degeneracy(adj: &[u32], removed: u32, n: usize) -> usize {
    let mut removed = removed;
    let mut lb = 0;
    while removed.count_ones() < n as u32 {
        let v = (0..n)
            .filter(|&v| removed & 1 << v == 0)
            .min_by_key(|&v| (adj[v] & !removed).count_ones())
            .unwrap();
        lb = lb.max((adj[v] & !removed).count_ones() as usize);
        removed |= 1 << v;
    }
    lb
}

fn branch(bb: &mut Bb, adj: Vec<u32>, removed: u32, cur: usize, n: usize, order: &mut Vec<usize>) {
    let left = n - removed.count_ones() as usize;
    if left == 0 {
        if cur < bb.best {
            bb.best = cur;
            bb.best_order = order.clone();
        }
        return;
    }
    // any elimination order finishes within width left - 1
    if cur.max(left - 1) < bb.best {
        let mut full = order.clone();
        full.extend((0..n).filter(|&v| removed & 1 << v == 0));
        bb.best = cur.max(left - 1);
        bb.best_order = full;
    }
    if cur.max(degeneracy(&adj, removed, n)) >= bb.best {
        return;
    }
    match bb.seen.get(&removed) {
        Some(&w) if w <= cur => return,
        _ => {
            bb.seen.insert(removed, cur);
        }
    }
    let live: Vec<usize> = (0..n).filter(|&v| removed & 1 << v == 0).collect();
    // a simplicial vertex can always be eliminated first
    let simplicial = live.iter().copied().find(|&v| {
        let nb = adj[v] & !removed;
        let mut r = nb;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            if nb & !(1 << u) & !adj[u] != 0 {
                return false;
            }
        }
        true
    });
    let candidates = match simplicial {
        Some(v) => vec![v],
        None => live,
    };
    for v in candidates {
        let deg = (adj[v] & !removed).count_ones() as usize;
        if cur.max(deg) >= bb.best {
            continue;
        }
        let mut next = adj.clone();
        eliminate(&mut next, v, removed);
        order.push(v);
        branch(bb, next, removed | 1 << v, cur.max(deg), n, order);
        order.pop();
    }
}

/// Exact treewidth with an optimal decomposition. Up to 24 vertices both
/// methods run and must agree.
pub fn treewidth_exact(g: &Graph, cap: usize) -> Result<AnnotatedValue> {
    if g.n() > cap {
        return Err(Error::TooLarge(format!(
            "{} vertices exceed the treewidth cap {cap}",
            g.n()
        )));
    }
    let (b, bb_order) = treewidth_bb(g)?;
    let (a, order) = if g.n() <= DP_LIMIT {
        treewidth_dp(g)?
    } else {
        (b, bb_order)
    };
    if a != b {
        return Err(Error::Invalid(format!(
            "exact treewidth methods disagree: {a} vs {b}"
        )));
    }
    let td = TreeDecomposition::from_elimination_order(g, &order);
    debug_assert_eq!(clamp(td.width()), a);
    Ok(AnnotatedValue {
        param: Param::Tw,
        value: a,
        witness: Witness::Decomposition(td),
    })
}
