//! Minor models, their validation, and exhaustive (rooted) minor search.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::width::planarity::is_planar;

/// Branch sets certifying that `pattern` is a minor of `host`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorModel {
    #[serde(with = "crate::io::graph_serde")]
    pub pattern: Graph,
    #[serde(with = "crate::io::graph_serde")]
    pub host: Graph,
    pub branch_sets: BTreeMap<usize, VertexSet>,
    pub roots: Option<VertexSet>,
}

/// One reason a model is not valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    MissingBranchSet { vertex: usize },
    EmptyBranchSet { vertex: usize },
    OutOfRange { vertex: usize, host_vertex: usize },
    Disjointness { a: usize, b: usize, shared: usize },
    Disconnected { vertex: usize },
    MissingEdge { u: usize, v: usize },
    Unrooted { vertex: usize },
}

impl MinorModel {
    /// Lists every violated model condition; empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
        for x in self.pattern.vertices() {
            let Some(set) = self.branch_sets.get(&x) else {
                out.push(Violation::MissingBranchSet { vertex: x });
                continue;
            };
            if set.is_empty() {
                out.push(Violation::EmptyBranchSet { vertex: x });
                continue;
            }
            if let Some(&bad) = set.iter().find(|&&v| v >= self.host.n()) {
                out.push(Violation::OutOfRange {
                    vertex: x,
                    host_vertex: bad,
                });
                continue;
            }
            for &v in set {
                if let Some(&a) = owner.get(&v) {
                    out.push(Violation::Disjointness { a, b: x, shared: v });
                } else {
                    owner.insert(v, x);
                }
            }
            if !self.host.is_connected_set(set) {
                out.push(Violation::Disconnected { vertex: x });
            }
            if let Some(roots) = &self.roots {
                if set.is_disjoint(roots) {
                    out.push(Violation::Unrooted { vertex: x });
                }
            }
        }
        for &(u, v) in self.pattern.edges() {
            let (Some(su), Some(sv)) = (self.branch_sets.get(&u), self.branch_sets.get(&v)) else {
                continue;
            };
            let joined = su
                .iter()
                .filter(|&&a| a < self.host.n())
                .any(|&a| self.host.neighbors(a).iter().any(|b| sv.contains(b)));
            if !joined {
                out.push(Violation::MissingEdge { u, v });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Validates, turning violations into an error.
    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{v:?}")))
        }
    }
}

/// Limits for the exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_pattern_vertices: usize,
    pub max_host_vertices: usize,
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_pattern_vertices: 10,
            max_host_vertices: 20,
            node_limit: 100_000_000,
            time_limit: None,
        }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget {
            max_pattern_vertices: usize::MAX,
            max_host_vertices: 128,
            node_limit: u64::MAX,
            time_limit: None,
        }
    }

    pub fn with_sizes(mut self, pattern: usize, host: usize) -> Self {
        self.max_pattern_vertices = pattern;
        self.max_host_vertices = host;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }
}

/// Outcome of a minor search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search {
    Found(MinorModel),
    /// Proven absent by exhaustive search.
    None,
    BudgetExceeded,
}

impl Search {
    pub fn found(&self) -> Option<&MinorModel> {
        match self {
            Search::Found(m) => Some(m),
            _ => None,
        }
    }
}

type Mask = u128;

fn bit(v: usize) -> Mask {
    1 << v
}

fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

/// One node of the search: partial branch sets plus, per pattern vertex, the
/// host vertices its final branch set may no longer contain.
#[derive(Clone)]
struct State {
    sets: Vec<Mask>,
    forbid: Vec<Mask>,
    free: Mask,
    /// First vertex placed in each set; for twins this is the set's smallest root.
    seed: Vec<usize>,
}

enum Step {
    Done,
    Dead,
    /// Grow `x` by one of `cands` (in order); if none is used, continue with `then`.
    Grow {
        x: usize,
        cands: Vec<usize>,
        then: Option<(usize, Vec<usize>)>,
    },
    /// Seed the empty set `x` with one of `cands`.
    Seed {
        x: usize,
        cands: Vec<usize>,
    },
}

struct Searcher<'a> {
    pattern: &'a Graph,
    nbr: Vec<Mask>,
    roots: Option<Mask>,
    /// For each pattern vertex, the earlier vertex it is interchangeable with.
    twin_prev: Vec<Option<usize>>,
    has_twin: Vec<bool>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    exhausted: bool,
}

impl Searcher<'_> {
    fn nbr_of(&self, set: Mask) -> Mask {
        members(set).fold(0, |acc, v| acc | self.nbr[v])
    }

    fn reach(&self, seed: Mask, within: Mask) -> Mask {
        let mut seen = seed & within;
        let mut frontier = seen;
        while frontier != 0 {
            let next = self.nbr_of(frontier) & within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Host vertices ordered by distance from `from` through `within`; unreachable ones last.
    fn by_distance(&self, cands: Mask, from: Mask, within: Mask) -> Vec<usize> {
        let mut out = Vec::new();
        let mut seen = from;
        let mut layer = from;
        let mut left = cands;
        while layer != 0 && left != 0 {
            out.extend(members(layer & left));
            left &= !layer;
            let next = self.nbr_of(layer) & (within | left) & !seen;
            seen |= next;
            layer = next;
        }
        out.extend(members(left));
        out
    }

    /// Optimistic region of each branch set: everything it could still absorb.
    fn regions(&self, st: &State) -> Option<Vec<Mask>> {
        let mut regions = Vec::with_capacity(st.sets.len());
        let mut empty = 0;
        for x in 0..st.sets.len() {
            let open = st.free & !st.forbid[x];
            let s = st.sets[x];
            let r = if s == 0 {
                empty += 1;
                open
            } else {
                self.reach(s, s | open)
            };
            if let Some(roots) = self.roots {
                if (s & roots == 0) && (r & roots == 0) {
                    return None;
                }
            }
            if r == 0 {
                return None;
            }
            regions.push(r);
        }
        let avail = match self.roots {
            Some(roots) => st.free & roots,
            None => st.free,
        };
        if empty > avail.count_ones() as usize {
            return None;
        }
        for &(a, b) in self.pattern.edges() {
            if self.nbr_of(st.sets[a]) & st.sets[b] != 0 {
                continue;
            }
            if (regions[a] | self.nbr_of(regions[a])) & regions[b] == 0 {
                return None;
            }
        }
        Some(regions)
    }

    fn frontier(&self, st: &State, x: usize) -> Mask {
        self.nbr_of(st.sets[x]) & st.free & !st.forbid[x]
    }

    fn next_step(&self, st: &State) -> Step {
        let Some(_regions) = self.regions(st) else {
            return Step::Dead;
        };
        let p = st.sets.len();
        // an edge between two started sets that is not realized yet, fewest options first
        let mut best: Option<(usize, Step)> = None;
        for &(a, b) in self.pattern.edges() {
            let (sa, sb) = (st.sets[a], st.sets[b]);
            if sa == 0 || sb == 0 || self.nbr_of(sa) & sb != 0 {
                continue;
            }
            let (fa, fb) = (self.frontier(st, a), self.frontier(st, b));
            let count = (fa.count_ones() + fb.count_ones()) as usize;
            if count == 0 {
                return Step::Dead;
            }
            if best.as_ref().is_none_or(|(c, _)| count < *c) {
                let ca = self.by_distance(fa, sb, st.free);
                let cb = self.by_distance(fb, sa, st.free);
                best = Some((
                    count,
                    Step::Grow {
                        x: a,
                        cands: ca,
                        then: Some((b, cb)),
                    },
                ));
            }
        }
        if let Some((_, step)) = best {
            return step;
        }
        if let Some(roots) = self.roots {
            if let Some(x) = (0..p).find(|&x| st.sets[x] != 0 && st.sets[x] & roots == 0) {
                let f = self.frontier(st, x);
                let cands = self.by_distance(f, roots & st.free & !st.forbid[x], st.free);
                return Step::Grow {
                    x,
                    cands,
                    then: None,
                };
            }
        }
        // seed the empty vertex with most started neighbours, preferring high degree;
        // twins are seeded in order
        let ready = |x: usize| self.twin_prev[x].is_none_or(|y| st.sets[y] != 0);
        let empty = (0..p)
            .filter(|&x| st.sets[x] == 0 && ready(x))
            .max_by_key(|&x| {
                let started = self
                    .pattern
                    .neighbors(x)
                    .iter()
                    .filter(|&&y| st.sets[y] != 0)
                    .count();
                (started, self.pattern.degree(x), std::cmp::Reverse(x))
            });
        let Some(x) = empty else { return Step::Done };
        let mut pool = st.free & !st.forbid[x];
        if let Some(roots) = self.roots {
            pool &= roots;
        }
        if let Some(y) = self.twin_prev[x] {
            // only seeds above the twin's smallest root
            pool &= !(bit(st.seed[y] + 1) - 1);
        }
        let near = self
            .pattern
            .neighbors(x)
            .iter()
            .fold(0, |m, &y| m | st.sets[y]);
        let cands = if self.has_twin[x] {
            members(pool).collect()
        } else if near == 0 {
            let mut c: Vec<usize> = members(pool).collect();
            c.sort_by_key(|&v| std::cmp::Reverse(self.nbr[v].count_ones()));
            c
        } else {
            self.by_distance(pool, near, st.free)
        };
        Step::Seed { x, cands }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            self.exhausted = true;
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.budget.time_limit {
                if self.start.elapsed() > t {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    /// Tries `cands` for set `x` in order; the `i`-th branch forbids the earlier
    /// candidates for `x`, so the branches cover disjoint families of models.
    fn branch(&mut self, st: &mut State, x: usize, cands: &[usize]) -> Option<State> {
        for &v in cands {
            let mut child = st.clone();
            if child.sets[x] == 0 {
                child.seed[x] = v;
            }
            child.sets[x] |= bit(v);
            child.free &= !bit(v);
            if let Some(found) = self.run(child) {
                return Some(found);
            }
            if self.exhausted {
                return None;
            }
            st.forbid[x] |= bit(v);
        }
        None
    }

    fn run(&mut self, mut st: State) -> Option<State> {
        if self.tick() {
            return None;
        }
        match self.next_step(&st) {
            Step::Done => Some(st),
            Step::Dead => None,
            Step::Seed { x, cands } => self.branch(&mut st, x, &cands),
            Step::Grow { x, cands, then } => {
                if let Some(found) = self.branch(&mut st, x, &cands) {
                    return Some(found);
                }
                match then {
                    Some((y, other)) if !self.exhausted => self.branch(&mut st, y, &other),
                    _ => None,
                }
            }
        }
    }
}

fn twin_links(pattern: &Graph) -> Vec<Option<usize>> {
    let open: Vec<VertexSet> = pattern
        .vertices()
        .map(|v| pattern.neighbors(v).iter().copied().collect())
        .collect();
    let closed: Vec<VertexSet> = pattern
        .vertices()
        .map(|v| {
            let mut s = open[v].clone();
            s.insert(v);
            s
        })
        .collect();
    (0..pattern.n())
        .map(|x| {
            (0..x)
                .rev()
                .find(|&y| open[x] == open[y] || closed[x] == closed[y])
        })
        .collect()
}

/// Exhaustive search for `pattern` as a (rooted) minor of `host`.
///
/// Branch sets start from a single vertex (a root, in the rooted case) and
/// only grow along their boundary when they still owe an edge or a root.
/// Each branching step forbids the alternatives already tried, so no model
/// is examined twice. Interchangeable pattern vertices take their smallest
/// roots in increasing order. Planar hosts are rejected outright for
/// non-planar patterns, and in the rooted case the same test is applied
/// after joining an apex to the roots and to every pattern vertex.
pub fn find_minor(
    host: &Graph,
    pattern: &Graph,
    roots: Option<&VertexSet>,
    budget: SearchBudget,
) -> Search {
    let model = |sets: BTreeMap<usize, VertexSet>| MinorModel {
        pattern: pattern.clone(),
        host: host.clone(),
        branch_sets: sets,
        roots: roots.cloned(),
    };
    if pattern.n() == 0 {
        return Search::Found(model(BTreeMap::new()));
    }
    let usable = roots.map_or(host.n(), |r| r.iter().filter(|&&v| v < host.n()).count());
    if pattern.n() > usable || pattern.m() > host.m() {
        return Search::None;
    }
    if pattern.n() > budget.max_pattern_vertices
        || host.n() > budget.max_host_vertices
        || host.n() > 128
    {
        return Search::BudgetExceeded;
    }
    if is_planar(host) && !is_planar(pattern) {
        return Search::None;
    }
    if let Some(r) = roots {
        // an apex over the roots stays adjacent to every branch set of a rooted model
        let cone = |g: &Graph, over: &mut dyn Iterator<Item = usize>| {
            let apex = g.n();
            Graph::from_edges_lossy(
                apex + 1,
                g.edges().iter().copied().chain(over.map(|v| (v, apex))),
            )
        };
        let host_cone = cone(host, &mut r.iter().copied().filter(|&v| v < host.n()));
        if is_planar(&host_cone) && !is_planar(&cone(pattern, &mut pattern.vertices())) {
            return Search::None;
        }
    }
    let twin_prev = twin_links(pattern);
    let mut has_twin = vec![false; pattern.n()];
    for (x, t) in twin_prev.iter().enumerate() {
        if let Some(y) = *t {
            has_twin[x] = true;
            has_twin[y] = true;
        }
    }
    let mut s = Searcher {
        pattern,
        nbr: (0..host.n())
            .map(|v| host.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
            .collect(),
        roots: roots.map(|r| {
            r.iter()
                .filter(|&&v| v < host.n())
                .fold(0, |m, &v| m | bit(v))
        }),
        twin_prev,
        has_twin,
        nodes: 0,
        budget,
        start: Instant::now(),
        exhausted: false,
    };
    let start = State {
        sets: vec![0; pattern.n()],
        forbid: vec![0; pattern.n()],
        free: if host.n() == 128 {
            Mask::MAX
        } else {
            bit(host.n()) - 1
        },
        seed: vec![usize::MAX; pattern.n()],
    };
    match s.run(start) {
        Some(done) => {
            let sets = done
                .sets
                .iter()
                .enumerate()
                .map(|(x, &m)| (x, members(m).collect()))
                .collect();
            let found = model(sets);
            debug_assert!(found.is_valid(), "search produced an invalid model");
            Search::Found(found)
        }
        None if s.exhausted => Search::BudgetExceeded,
        None => Search::None,
    }
}

/// An `x`-rooted model of the `(k × k)`-grid in `g`, if one exists.
pub fn bg_at_least(
    g: &Graph,
    x: &VertexSet,
    k: usize,
    budget: SearchBudget,
) -> Result<Option<MinorModel>> {
    match find_minor(g, &Graph::grid(k, k), Some(x), budget) {
        Search::Found(m) => Ok(Some(m)),
        Search::None => Ok(None),
        Search::BudgetExceeded => Err(Error::BudgetExceeded),
    }
}

/// Largest `k` such that the `(k × k)`-grid is an `x`-rooted minor of `g`.
pub fn bg_annotated(g: &Graph, x: &VertexSet, budget: SearchBudget) -> Result<usize> {
    let mut best = 0;
    for k in 1.. {
        if k * k > x.len() {
            break;
        }
        match find_minor(g, &Graph::grid(k, k), Some(x), budget) {
            Search::Found(_) => best = k,
            Search::None => break,
            Search::BudgetExceeded => return Err(Error::BudgetExceeded),
        }
    }
    Ok(best)
}

/// Largest `t` with `K_t` a minor of `g`.
pub fn hadwiger(g: &Graph, budget: SearchBudget) -> Result<usize> {
    let mut best = 0;
    for t in 1..=g.n() {
        if t * (t - 1) / 2 > g.m() {
            break;
        }
        match find_minor(g, &Graph::complete(t), None, budget) {
            Search::Found(_) => best = t,
            Search::None => break,
            Search::BudgetExceeded => return Err(Error::BudgetExceeded),
        }
    }
    Ok(best)
}

/// Searches for `pattern` as a subgraph of `host`, reported as a model with
/// singleton branch sets.
pub fn find_subgraph(host: &Graph, pattern: &Graph, budget: SearchBudget) -> Search {
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Search::None;
    }
    if host.n() > 128
        || host.n() > budget.max_host_vertices
        || pattern.n() > budget.max_pattern_vertices
    {
        return Search::BudgetExceeded;
    }
    let nbr: Vec<Mask> = host
        .vertices()
        .map(|v| host.neighbors(v).iter().fold(0, |m, &w| m | bit(w)))
        .collect();
    // most constrained first: each next vertex has the most already-placed neighbours
    let mut order = Vec::with_capacity(pattern.n());
    let mut placed = vec![false; pattern.n()];
    while order.len() < pattern.n() {
        let next = pattern
            .vertices()
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let back = pattern.neighbors(x).iter().filter(|&&y| placed[y]).count();
                (back, pattern.degree(x), std::cmp::Reverse(x))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let mut image = vec![usize::MAX; pattern.n()];
    let mut nodes = 0u64;
    let start = Instant::now();
    let mut exhausted = false;
    let all: Mask = if host.n() == 128 {
        Mask::MAX
    } else {
        bit(host.n()) - 1
    };

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        used: Mask,
        all: Mask,
        order: &[usize],
        pattern: &Graph,
        host: &Graph,
        nbr: &[Mask],
        image: &mut [usize],
        nodes: &mut u64,
        start: Instant,
        budget: &SearchBudget,
        exhausted: &mut bool,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        *nodes += 1;
        if *nodes > budget.node_limit
            || ((*nodes).is_multiple_of(1024)
                && budget.time_limit.is_some_and(|t| start.elapsed() > t))
        {
            *exhausted = true;
        }
        if *exhausted {
            return false;
        }
        let x = order[i];
        let mut cands = all & !used;
        for &y in pattern.neighbors(x) {
            if image[y] != usize::MAX {
                cands &= nbr[image[y]];
            }
        }
        for v in members(cands) {
            if host.degree(v) < pattern.degree(x) {
                continue;
            }
            image[x] = v;
            if rec(
                i + 1,
                used | bit(v),
                all,
                order,
                pattern,
                host,
                nbr,
                image,
                nodes,
                start,
                budget,
                exhausted,
            ) {
                return true;
            }
            image[x] = usize::MAX;
        }
        false
    }

    if rec(
        0,
        0,
        all,
        &order,
        pattern,
        host,
        &nbr,
        &mut image,
        &mut nodes,
        start,
        &budget,
        &mut exhausted,
    ) {
        let sets = image
            .iter()
            .enumerate()
            .map(|(x, &v)| (x, VertexSet::from([v])))
            .collect();
        return Search::Found(MinorModel {
            pattern: pattern.clone(),
            host: host.clone(),
            branch_sets: sets,
            roots: None,
        });
    }
    if exhausted {
        Search::BudgetExceeded
    } else {
        Search::None
    }
}
