//! Separations, vertex cuts, well-linked and strongly linked sets, free sets,
//! tangles, and growing a wall that agrees with a well-linked set.

use std::collections::VecDeque;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::elementary_wall;
use crate::graph::{Graph, VertexSet};
use crate::minor::{find_minor, find_subgraph, MinorModel, Search, SearchBudget};
use crate::width::{heuristic_decomposition, treewidth_exact, TreeDecomposition, DEFAULT_TW_CAP};

/// Balance threshold `α`, kept exact.
pub type Alpha = Ratio<u64>;

/// `|part| > α|s|`, by cross-multiplication.
pub fn exceeds(part: usize, s: usize, alpha: Alpha) -> bool {
    part as u64 * alpha.denom() > *alpha.numer() * s as u64
}

fn check_alpha(alpha: Alpha) -> Result<()> {
    if alpha < Ratio::new(2, 3) || alpha >= Ratio::from_integer(1) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} is outside [2/3, 1)"
        )));
    }
    Ok(())
}

/// A pair `(A, B)` covering the graph with no edge between `A - B` and `B - A`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Separation {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Separation {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    /// `|A ∩ B|`.
    pub fn order(&self) -> usize {
        self.a.intersection(&self.b).count()
    }

    pub fn flipped(&self) -> Separation {
        Separation {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b).copied().collect()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.a.iter().chain(&self.b).any(|&v| v >= g.n()) {
            return Err(Error::Invalid(
                "separation mentions a vertex outside the graph".into(),
            ));
        }
        if let Some(v) = g
            .vertices()
            .find(|v| !self.a.contains(v) && !self.b.contains(v))
        {
            return Err(Error::Invalid(format!("vertex {v} is on neither side")));
        }
        for &(u, v) in g.edges() {
            let crosses = |x: usize, y: usize| {
                self.a.contains(&x)
                    && !self.b.contains(&x)
                    && self.b.contains(&y)
                    && !self.a.contains(&y)
            };
            if crosses(u, v) || crosses(v, u) {
                return Err(Error::Invalid(format!(
                    "edge {u}-{v} crosses the separation"
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        self.validate(g).is_ok()
    }
}

/// Calls `f` on every subset of `0..n` with at most `max` elements, smallest
/// first and lexicographically within a size. Stops early when `f` returns false.
fn for_small_subsets(n: usize, max: usize, mut f: impl FnMut(&[usize]) -> bool) {
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return f(cur);
        }
        for v in start..n {
            if n - v < size - cur.len() {
                break;
            }
            cur.push(v);
            let go = rec(n, size, v + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    let mut cur = Vec::new();
    for size in 0..=max.min(n) {
        if !rec(n, size, 0, &mut cur, &mut f) {
            return;
        }
    }
}

/// Every separation of order less than `k`, ordered by separator then by the
/// set of components placed on the `A` side.
pub fn enumerate_separations(g: &Graph, k: usize, limit: usize) -> Result<Vec<Separation>> {
    let mut out = Vec::new();
    let mut err = None;
    if k == 0 {
        return Ok(out);
    }
    for_small_subsets(g.n(), k - 1, |sep| {
        let x: VertexSet = sep.iter().copied().collect();
        let comps = g.components_avoiding(&x).parts;
        if comps.len() > 20 || out.len() + (1usize << comps.len()) > limit {
            err = Some(Error::TooLarge(format!(
                "more than {limit} separations of order < {k}"
            )));
            return false;
        }
        for mask in 0..1u32 << comps.len() {
            let mut a = x.clone();
            let mut b = x.clone();
            for (i, c) in comps.iter().enumerate() {
                if mask & 1 << i != 0 {
                    a.extend(c);
                } else {
                    b.extend(c);
                }
            }
            out.push(Separation { a, b });
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Unit vertex capacities via vertex splitting; Edmonds-Karp augmentation.
struct FlowNet {
    to: Vec<usize>,
    cap: Vec<i32>,
    head: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev = vec![usize::MAX; self.head.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    prev[v] = e;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let e = prev[x];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            x = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(v);
                }
            }
        }
        false
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

/// A maximum family of disjoint paths together with a minimum separator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCut {
    pub paths: Vec<Vec<usize>>,
    /// `(A, B)` with the sources in `A`, the sinks in `B` and `|A ∩ B|` equal to the
    /// number of paths; `A` is as small as possible.
    pub separation: Separation,
}

/// Vertex-disjoint `sources`–`sinks` paths and a minimum separator, in `g`
/// with the edge `skip` removed.
pub fn min_vertex_cut(
    g: &Graph,
    sources: &VertexSet,
    sinks: &VertexSet,
    skip: Option<(usize, usize)>,
) -> MinCut {
    let n = g.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let big = n as i32 + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        net.add(2 * v, 2 * v + 1, 1);
    }
    let skip = skip.map(|(u, v)| (u.min(v), u.max(v)));
    for &(u, v) in g.edges() {
        if Some((u, v)) == skip {
            continue;
        }
        net.add(2 * u + 1, 2 * v, big);
        net.add(2 * v + 1, 2 * u, big);
    }
    for &v in sources {
        net.add(s, 2 * v, big);
    }
    for &v in sinks {
        net.add(2 * v + 1, t, big);
    }
    while net.augment(s, t) {}
    let reach = net.reachable(s);
    let a: VertexSet = (0..n).filter(|&v| reach[2 * v]).collect();
    let cut: VertexSet = a.iter().copied().filter(|&v| !reach[2 * v + 1]).collect();
    let b: VertexSet = (0..n)
        .filter(|v| !a.contains(v) || cut.contains(v))
        .collect();
    let paths = flow_paths(&net, n, s, t);
    MinCut {
        paths,
        separation: Separation { a, b },
    }
}

fn flow_paths(net: &FlowNet, n: usize, s: usize, t: usize) -> Vec<Vec<usize>> {
    // an edge carries flow when its reverse has positive residual; split edges are the even ones
    let mut used: Vec<i32> = (0..net.to.len())
        .map(|e| if e % 2 == 0 { net.cap[e ^ 1] } else { 0 })
        .collect();
    let mut paths = Vec::new();
    while let Some(&first) = net.head[s].iter().find(|&&e| e % 2 == 0 && used[e] > 0) {
        used[first] -= 1;
        let mut node = net.to[first];
        let mut path = Vec::new();
        while node != t {
            if node.is_multiple_of(2) && node < 2 * n {
                path.push(node / 2);
            }
            let e = *net.head[node]
                .iter()
                .find(|&&e| e % 2 == 0 && used[e] > 0)
                .expect("flow is conserved");
            used[e] -= 1;
            node = net.to[e];
        }
        paths.push(path);
    }
    paths
}

/// Outcome of [`is_well_linked`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellLinkedCertificate {
    pub s: VertexSet,
    pub q: usize,
    pub alpha: Alpha,
    /// An `α`-balanced separator of size at most `q`, if one exists.
    pub separator: Option<VertexSet>,
}

impl WellLinkedCertificate {
    pub fn well_linked(&self) -> bool {
        self.separator.is_none()
    }
}

/// Whether `x` is an `α`-balanced separator for `s`.
pub fn is_balanced_separator(g: &Graph, s: &VertexSet, x: &VertexSet, alpha: Alpha) -> bool {
    g.components_avoiding(x)
        .parts
        .iter()
        .all(|c| !exceeds(c.intersection(s).count(), s.len(), alpha))
}

/// Searches all sets of at most `q` vertices for an `α`-balanced separator of `s`.
pub fn is_well_linked(
    g: &Graph,
    s: &VertexSet,
    q: usize,
    alpha: Alpha,
    limit: usize,
) -> Result<WellLinkedCertificate> {
    check_alpha(alpha)?;
    let mut found = None;
    let mut count = 0usize;
    for_small_subsets(g.n(), q, |x| {
        count += 1;
        if count > limit {
            return false;
        }
        let x: VertexSet = x.iter().copied().collect();
        if is_balanced_separator(g, s, &x, alpha) {
            found = Some(x);
            return false;
        }
        true
    });
    if found.is_none() && count > limit {
        return Err(Error::BudgetExceeded);
    }
    Ok(WellLinkedCertificate {
        s: s.clone(),
        q,
        alpha,
        separator: found,
    })
}

/// A bipartition of a set together with a separation that is too small for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongLinkViolation {
    pub s1: VertexSet,
    pub s2: VertexSet,
    pub separation: Separation,
}

/// Largest set accepted by the strong-linkedness check.
const STRONG_LINK_LIMIT: usize = 20;

/// First bipartition `(S1, S2)` of `s` (in the graph minus `skip`) admitting a
/// separation of order below `min(|S1|, |S2|)`.
pub fn strong_link_violation(
    g: &Graph,
    s: &VertexSet,
    skip: Option<(usize, usize)>,
) -> Result<Option<StrongLinkViolation>> {
    if s.len() > STRONG_LINK_LIMIT {
        return Err(Error::TooLarge(format!(
            "strong linkedness is checked for at most {STRONG_LINK_LIMIT} vertices"
        )));
    }
    let items: Vec<usize> = s.iter().copied().collect();
    let k = items.len();
    if k < 2 {
        return Ok(None);
    }
    // the first element always sits in S1
    for mask in 0..1u32 << (k - 1) {
        let s1: VertexSet = std::iter::once(items[0])
            .chain(
                (1..k)
                    .filter(|&i| mask & 1 << (i - 1) != 0)
                    .map(|i| items[i]),
            )
            .collect();
        if s1.len() == k {
            continue;
        }
        let s2: VertexSet = items.iter().copied().filter(|v| !s1.contains(v)).collect();
        let cut = min_vertex_cut(g, &s1, &s2, skip);
        if cut.paths.len() < s1.len().min(s2.len()) {
            return Ok(Some(StrongLinkViolation {
                s1,
                s2,
                separation: cut.separation,
            }));
        }
    }
    Ok(None)
}

pub fn is_strongly_linked(g: &Graph, s: &VertexSet) -> Result<bool> {
    Ok(strong_link_violation(g, s, None)?.is_none())
}

/// First separation of order below `|f|` with `f` on a side holding at most `α|s|` of `s`.
pub fn s_free_violation(
    g: &Graph,
    f: &VertexSet,
    s: &VertexSet,
    alpha: Alpha,
    limit: usize,
) -> Result<Option<Separation>> {
    for sep in enumerate_separations(g, f.len(), limit)? {
        let light = [&sep.a, &sep.b].into_iter().any(|side| {
            f.is_subset(side) && !exceeds(side.intersection(s).count(), s.len(), alpha)
        });
        if light {
            return Ok(Some(sep));
        }
    }
    Ok(None)
}

/// Builds an `s`-free set of size `k - 1`, one vertex at a time, by pushing a
/// separation around the current set as far towards `s` as possible.
///
/// Fails with the offending separation if the current set turns out not to be
/// free, which happens only when `s` is not `(k, α)`-well-linked.
pub fn free_set(g: &Graph, s: &VertexSet, alpha: Alpha, k: usize) -> Result<VertexSet> {
    check_alpha(alpha)?;
    let mut f = VertexSet::new();
    if k <= 1 {
        return Ok(f);
    }
    let heavy = |side: &VertexSet| exceeds(side.intersection(s).count(), s.len(), alpha);
    let start = g
        .connected_components()
        .parts
        .into_iter()
        .find(|c| heavy(c))
        .ok_or_else(|| {
            Error::Precondition("no component holds more than α|S| vertices of S".into())
        })?;
    f.insert(*start.iter().next().expect("components are non-empty"));
    while f.len() < k - 1 {
        let mut a = f.clone();
        let mut b: VertexSet = g.vertices().collect();
        loop {
            let (sub, map) = g.induced(&b);
            let back: Vec<usize> = b.iter().copied().collect();
            let local =
                |set: &VertexSet| -> VertexSet { set.iter().filter_map(|&v| map[v]).collect() };
            let z: VertexSet = a.intersection(&b).copied().collect();
            let t: VertexSet = b.intersection(s).copied().collect();
            // closest to the S side: compute from T towards Z
            let cut = min_vertex_cut(&sub, &local(&t), &local(&z), None);
            let p: VertexSet = cut.separation.a.iter().map(|&v| back[v]).collect();
            let q: VertexSet = cut.separation.b.iter().map(|&v| back[v]).collect();
            let new_a: VertexSet = a.union(&q).copied().collect();
            let pushed = Separation { a: new_a, b: p };
            debug_assert!(pushed.is_valid(g));
            if pushed.order() < f.len() {
                return Err(Error::Precondition(format!(
                    "{f:?} is not S-free: separation of order {} with {:?} on the light side",
                    pushed.order(),
                    pushed.separator()
                )));
            }
            if pushed.b == b {
                break;
            }
            a = pushed.a;
            b = pushed.b;
        }
        let x = *b
            .iter()
            .find(|v| !a.contains(v))
            .ok_or_else(|| Error::Precondition("pushed separation has an empty far side".into()))?;
        f.insert(x);
    }
    Ok(f)
}

/// An orientation of the separations of order below `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tangle {
    pub order: usize,
    pub oriented: Vec<Separation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TangleViolation {
    InvalidSeparation {
        separation: Separation,
    },
    OrderTooLarge {
        separation: Separation,
    },
    Unoriented {
        separation: Separation,
    },
    BothOrientations {
        separation: Separation,
    },
    /// Three small sides covering every vertex.
    Covering {
        triple: [Separation; 3],
    },
}

fn mask_of(set: &VertexSet) -> u128 {
    set.iter().fold(0, |m, &v| m | 1 << v)
}

/// Checks the orientation axiom against all separations of order below
/// `t.order`, and that no three small sides cover the graph.
pub fn tangle_validate(g: &Graph, t: &Tangle, limit: usize) -> Result<Vec<TangleViolation>> {
    if g.n() > 128 {
        return Err(Error::TooLarge(
            "tangle validation handles at most 128 vertices".into(),
        ));
    }
    let mut out = Vec::new();
    let members: std::collections::HashSet<&Separation> = t.oriented.iter().collect();
    for sep in &t.oriented {
        if !sep.is_valid(g) {
            out.push(TangleViolation::InvalidSeparation {
                separation: sep.clone(),
            });
        } else if sep.order() >= t.order {
            out.push(TangleViolation::OrderTooLarge {
                separation: sep.clone(),
            });
        }
    }
    for sep in enumerate_separations(g, t.order, limit)? {
        if sep > sep.flipped() {
            continue;
        }
        match (members.contains(&sep), members.contains(&sep.flipped())) {
            (false, false) => out.push(TangleViolation::Unoriented { separation: sep }),
            (true, true) if sep != sep.flipped() => {
                out.push(TangleViolation::BothOrientations { separation: sep })
            }
            _ => {}
        }
    }
    // only inclusion-maximal small sides matter for covering
    let full: u128 = if g.n() == 128 {
        u128::MAX
    } else {
        (1u128 << g.n()) - 1
    };
    let mut smalls: Vec<(u128, usize)> = t
        .oriented
        .iter()
        .enumerate()
        .map(|(i, s)| (mask_of(&s.a), i))
        .collect();
    smalls.sort_by_key(|&(m, _)| std::cmp::Reverse(m.count_ones()));
    let mut maximal: Vec<(u128, usize)> = Vec::new();
    for (m, i) in smalls {
        if !maximal.iter().any(|&(big, _)| m & !big == 0) {
            maximal.push((m, i));
        }
    }
    'outer: for x in 0..maximal.len() {
        for y in x..maximal.len() {
            let xy = maximal[x].0 | maximal[y].0;
            for z in y..maximal.len() {
                if xy | maximal[z].0 == full {
                    let pick = |i: usize| t.oriented[maximal[i].1].clone();
                    out.push(TangleViolation::Covering {
                        triple: [pick(x), pick(y), pick(z)],
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}

fn orient_by(
    g: &Graph,
    k: usize,
    limit: usize,
    big_side: impl Fn(&Separation) -> bool,
) -> Result<Tangle> {
    let oriented = enumerate_separations(g, k, limit)?
        .into_iter()
        .filter(|s| big_side(s))
        .collect();
    Ok(Tangle { order: k, oriented })
}

/// `{(A, B) : |A ∩ B| < k, |B ∩ S| > α|S|}`.
pub fn tangle_of_welllinked(
    g: &Graph,
    s: &VertexSet,
    alpha: Alpha,
    k: usize,
    limit: usize,
) -> Result<Tangle> {
    check_alpha(alpha)?;
    orient_by(g, k, limit, |sep| {
        exceeds(sep.b.intersection(s).count(), s.len(), alpha)
    })
}

/// `{(A, B) : |A ∩ B| < k, |B ∩ F| > |F| - k}`; for `|F| = 3k` the threshold is `2k`.
pub fn tangle_from_free_set(g: &Graph, f: &VertexSet, k: usize, limit: usize) -> Result<Tangle> {
    orient_by(g, k, limit, |sep| {
        sep.b.intersection(f).count() + k > f.len()
    })
}

/// The orientation in which `B - A` contains a whole row and a whole column of the wall.
pub fn tangle_of_wall(
    g: &Graph,
    rows: &[VertexSet],
    columns: &[VertexSet],
    k: usize,
    limit: usize,
) -> Result<Tangle> {
    orient_by(g, k, limit, |sep| wall_majority(sep, rows, columns))
}

fn wall_majority(sep: &Separation, rows: &[VertexSet], columns: &[VertexSet]) -> bool {
    let far = |set: &VertexSet| set.iter().all(|v| sep.b.contains(v) && !sep.a.contains(v));
    rows.iter().any(far) && columns.iter().any(far)
}

/// Whether `small` is contained in `big` (as sets of oriented separations).
pub fn is_truncation(small: &Tangle, big: &Tangle) -> bool {
    let members: std::collections::HashSet<&Separation> = big.oriented.iter().collect();
    small.order <= big.order && small.oriented.iter().all(|s| members.contains(s))
}

/// The three outcomes of one linkage step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Augmentation {
    /// `k` vertex-disjoint `X`–`Y` paths.
    Paths { paths: Vec<Vec<usize>> },
    /// A separation of order `< k` with `X ⊆ A' ⊇ A`, `|Y ∩ B'| ≥ k` and `B' ⊊ B`.
    Pushed { from: Separation, to: Separation },
    /// An edge inside `B` whose deletion keeps `X` strongly linked.
    SafeEdge {
        from: Separation,
        edge: (usize, usize),
    },
}

/// Either links `x` to `y` by `k` disjoint paths, or takes the small separation
/// between them and pushes it closer to `y`, or finds an edge on the `y` side
/// that can be deleted without hurting the strong linkedness of `x`.
pub fn augment_or_separate(
    g: &Graph,
    x: &VertexSet,
    y: &VertexSet,
    k: usize,
) -> Result<Augmentation> {
    let cut = min_vertex_cut(g, x, y, None);
    if cut.paths.len() >= k {
        return Ok(Augmentation::Paths {
            paths: cut.paths.into_iter().take(k).collect(),
        });
    }
    if x.len() < k || y.len() < 3 * k {
        return Err(Error::Precondition(format!(
            "need |X| >= {k} and |Y| >= {}",
            3 * k
        )));
    }
    if !is_strongly_linked(g, x)? || !is_strongly_linked(g, y)? {
        return Err(Error::Precondition(
            "X and Y must be strongly linked".into(),
        ));
    }
    let from = cut.separation;
    let (a, b) = (&from.a, &from.b);
    let edge = g
        .edges()
        .iter()
        .copied()
        .find(|(u, v)| b.contains(u) && b.contains(v))
        .ok_or_else(|| Error::Precondition("the Y side has no edges".into()))?;
    let Some(viol) = strong_link_violation(g, x, Some(edge))? else {
        return Ok(Augmentation::SafeEdge { from, edge });
    };
    let (l, r) = (&viol.separation.a, &viol.separation.b);
    let strictly =
        |side: &VertexSet, other: &VertexSet, v: usize| side.contains(&v) && !other.contains(&v);
    let (ex, ey) = if strictly(l, r, edge.0) && strictly(r, l, edge.1) {
        (edge.0, edge.1)
    } else if strictly(l, r, edge.1) && strictly(r, l, edge.0) {
        (edge.1, edge.0)
    } else {
        return Err(Error::Invalid("X is not strongly linked in G".into()));
    };
    for (near, far, end) in [(l, r, ex), (r, l, ey)] {
        let new_a: VertexSet = a.union(near).copied().collect();
        let mut new_b: VertexSet = b.intersection(far).copied().collect();
        new_b.insert(end);
        let to = Separation { a: new_a, b: new_b };
        let ok = to.is_valid(g)
            && to.order() < k
            && x.is_subset(&to.a)
            && to.b.intersection(y).count() >= k
            && to.b.len() < b.len()
            && to.b.is_subset(b);
        if ok {
            return Ok(Augmentation::Pushed { from, to });
        }
    }
    Err(Error::Invalid("neither pushed separation qualifies".into()))
}

/// A wall found in the host, with the vertex sets of its horizontal and vertical paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoundWall {
    pub edges: Vec<(usize, usize)>,
    pub rows: Vec<VertexSet>,
    pub columns: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WallOutcome {
    Wall(FoundWall),
    /// No wall of the requested height; the decomposition bounds the treewidth.
    NoWall {
        treewidth: usize,
        exact: bool,
        decomposition: TreeDecomposition,
    },
}

/// Turns a model of a subcubic pattern into a subdivision: inside each branch
/// set, a shortest path joins the first two attachment points and the third
/// attachment (if any) is joined to that path.
fn legs(
    host: &Graph,
    model: &MinorModel,
) -> std::collections::BTreeMap<(usize, usize), Vec<usize>> {
    let p = &model.pattern;
    let mut attach = std::collections::BTreeMap::new();
    for &(a, b) in p.edges() {
        let (sa, sb) = (&model.branch_sets[&a], &model.branch_sets[&b]);
        let (u, w) = sa
            .iter()
            .find_map(|&u| {
                host.neighbors(u)
                    .iter()
                    .find(|w| sb.contains(w))
                    .map(|&w| (u, w))
            })
            .expect("valid model realizes every edge");
        attach.insert((a, b), u);
        attach.insert((b, a), w);
    }
    let path_within = |set: &VertexSet, from: &VertexSet, to: usize| -> Vec<usize> {
        let mut prev = std::collections::BTreeMap::new();
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        for &f in from {
            prev.insert(f, f);
        }
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &w in host.neighbors(u) {
                if set.contains(&w) && !prev.contains_key(&w) {
                    prev.insert(w, u);
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![to];
        while prev[path.last().unwrap()] != *path.last().unwrap() {
            path.push(prev[path.last().unwrap()]);
        }
        path
    };
    let mut out = std::collections::BTreeMap::new();
    for x in p.vertices() {
        let set = &model.branch_sets[&x];
        let nb = p.neighbors(x);
        let ends: Vec<usize> = nb.iter().map(|&y| attach[&(x, y)]).collect();
        if nb.is_empty() {
            continue;
        }
        // center: on the path between the first two ends, where the third end joins
        let main = if nb.len() >= 2 {
            path_within(set, &VertexSet::from([ends[0]]), ends[1])
        } else {
            vec![ends[0]]
        };
        let center = if nb.len() >= 3 {
            *path_within(set, &main.iter().copied().collect(), ends[2])
                .last()
                .unwrap()
        } else {
            ends[0]
        };
        for (i, &y) in nb.iter().enumerate() {
            out.insert(
                (x, y),
                path_within(set, &VertexSet::from([center]), ends[i]),
            );
        }
    }
    out
}

fn wall_from_model(
    host: &Graph,
    model: &MinorModel,
    rows: &[Vec<usize>],
    columns: &[Vec<usize>],
) -> FoundWall {
    let legs = legs(host, model);
    let p = &model.pattern;
    let mut edges = VertexSet::new();
    let mut edge_list = Vec::new();
    let cover = |group: &[usize]| -> VertexSet {
        let inside: VertexSet = group.iter().copied().collect();
        let mut out = VertexSet::new();
        for &(a, b) in p.edges() {
            if inside.contains(&a) && inside.contains(&b) {
                out.extend(&legs[&(a, b)]);
                out.extend(&legs[&(b, a)]);
            }
        }
        out
    };
    for (&(_, _), leg) in &legs {
        for w in leg.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            if edges.insert(e.0 * host.n() + e.1) {
                edge_list.push(e);
            }
        }
    }
    for &(a, b) in p.edges() {
        let (u, w) = (legs[&(a, b)][0], legs[&(b, a)][0]);
        let e = (u.min(w), u.max(w));
        if edges.insert(e.0 * host.n() + e.1) {
            edge_list.push(e);
        }
    }
    edge_list.sort_unstable();
    FoundWall {
        edges: edge_list,
        rows: rows.iter().map(|r| cover(r)).collect(),
        columns: columns.iter().map(|c| cover(c)).collect(),
    }
}

/// Finds a `k`-wall whose tangle is contained in the tangle of `s`.
///
/// Walls are looked for as subgraphs first, then by minor search for the
/// elementary wall with the model turned into a subdivision; the size limits of `budget` are raised to fit the wall and `g`. When the wall's majority side of some small
/// separation is light in `s`, that side is removed and the search repeats.
pub fn wall_from_welllinked(
    g: &Graph,
    s: &VertexSet,
    alpha: Alpha,
    k: usize,
    budget: SearchBudget,
) -> Result<WallOutcome> {
    check_alpha(alpha)?;
    let wall = elementary_wall(k)?;
    let (rows, columns) = (wall.rows(), wall.columns());
    let budget = SearchBudget {
        max_pattern_vertices: budget.max_pattern_vertices.max(wall.graph.n()),
        max_host_vertices: budget.max_host_vertices.max(g.n()),
        ..budget
    };
    let limit = 1_000_000;
    let separations = enumerate_separations(g, k, limit)?;
    let mut excluded = VertexSet::new();
    loop {
        let (sub, map) = g.delete_vertices(&excluded);
        let back: Vec<usize> = g.vertices().filter(|v| !excluded.contains(v)).collect();
        let search = match find_subgraph(&sub, &wall.graph, budget) {
            Search::Found(m) => Search::Found(m),
            _ => find_minor(&sub, &wall.graph, None, budget),
        };
        let model = match search {
            Search::Found(m) => m,
            Search::BudgetExceeded => return Err(Error::BudgetExceeded),
            Search::None if excluded.is_empty() => return Ok(no_wall(g)),
            Search::None => {
                return Err(Error::Invalid(
                    "every wall lies on a side that is light in S".into(),
                ));
            }
        };
        let _ = map;
        let found = wall_from_model(&sub, &model, &rows, &columns);
        let lift = |set: &VertexSet| -> VertexSet { set.iter().map(|&v| back[v]).collect() };
        let found = FoundWall {
            edges: found
                .edges
                .iter()
                .map(|&(u, v)| (back[u], back[v]))
                .collect(),
            rows: found.rows.iter().map(lift).collect(),
            columns: found.columns.iter().map(lift).collect(),
        };
        let bad = separations.iter().find(|sep| {
            wall_majority(sep, &found.rows, &found.columns)
                && !exceeds(sep.b.intersection(s).count(), s.len(), alpha)
        });
        match bad {
            None => return Ok(WallOutcome::Wall(found)),
            Some(sep) => {
                let before = excluded.len();
                excluded.extend(sep.b.difference(&sep.a));
                if excluded.len() == before {
                    return Err(Error::Invalid("wall search made no progress".into()));
                }
            }
        }
    }
}

fn no_wall(g: &Graph) -> WallOutcome {
    if g.n() <= DEFAULT_TW_CAP {
        if let Ok(v) = treewidth_exact(g, DEFAULT_TW_CAP) {
            if let crate::width::Witness::Decomposition(td) = v.witness {
                return WallOutcome::NoWall {
                    treewidth: v.value,
                    exact: true,
                    decomposition: td,
                };
            }
        }
    }
    let td = heuristic_decomposition(g);
    WallOutcome::NoWall {
        treewidth: td.width().max(0) as usize,
        exact: false,
        decomposition: td,
    }
}
