//! Annotated parameters `p(G, X)` and modulator compositions.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::{bg_annotated, find_minor, MinorModel, Search, SearchBudget};

use super::planarity::is_planar;
use super::treewidth::{treewidth_dp, treewidth_exact};
use super::{torso_annotated, AnnotatedValue, Param, TreeDecomposition, Witness};

/// Graphs that certify `tw >= t + 1` for `t = 0..=3`: the minor-minimal graphs
/// of treewidth above `t`.
fn obstructions(t: usize) -> Vec<Graph> {
    match t {
        0 => vec![Graph::complete(2)],
        1 => vec![Graph::complete(3)],
        2 => vec![Graph::complete(4)],
        3 => {
            let octahedron = Graph::complete(6).without_edges(&[(0, 1), (2, 3), (4, 5)]);
            let mut wagner: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
            wagner.extend((0..4).map(|i| (i, i + 4)));
            let mut prism: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            prism.extend((0..5).map(|i| (5 + i, 5 + (i + 1) % 5)));
            prism.extend((0..5).map(|i| (i, i + 5)));
            vec![
                Graph::complete(5),
                octahedron,
                Graph::from_edges_lossy(8, wagner),
                Graph::from_edges_lossy(10, prism),
            ]
        }
        _ => Vec::new(),
    }
}

/// Vertices lying in a component of `g` that meets `x`.
fn relevant(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for &r in x {
        if !out.contains(&r) {
            out.extend(g.reach_within(r, |_| true));
        }
    }
    out
}

/// `tw(G, X)`: the largest treewidth of a minor of `g` whose branch sets all meet `x`.
///
/// Lower bounds come from rooted searches for the minimal graphs of treewidth
/// 1 to 4. If all of them are present the value is settled by
/// [`tw_annotated_exhaustive`].
pub fn tw_annotated(g: &Graph, x: &VertexSet, budget: SearchBudget) -> Result<AnnotatedValue> {
    if x.iter().any(|&v| v >= g.n()) {
        return Err(Error::InvalidParameter(
            "annotation outside the vertex set".into(),
        ));
    }
    let mut witness = Witness::None;
    for t in 0..=3 {
        let mut hit = None;
        for pattern in obstructions(t) {
            match find_minor(g, &pattern, Some(x), budget) {
                Search::Found(m) => {
                    hit = Some(m);
                    break;
                }
                Search::None => {}
                Search::BudgetExceeded => return Err(Error::BudgetExceeded),
            }
        }
        match hit {
            Some(m) => witness = Witness::Model(m),
            None => {
                return Ok(AnnotatedValue {
                    param: Param::Tw,
                    value: t,
                    witness,
                })
            }
        }
    }
    tw_annotated_exhaustive(g, x, budget)
}

/// `tw(G, X)` by enumerating every partition of the relevant vertices into
/// connected parts with exactly one vertex of `x` each.
///
/// Those contractions dominate every `x`-minor: splitting a part with two
/// vertices of `x` along a spanning tree edge only adds a vertex and keeps all
/// adjacencies, and absorbing leftover vertices only adds edges.
pub fn tw_annotated_exhaustive(
    g: &Graph,
    x: &VertexSet,
    budget: SearchBudget,
) -> Result<AnnotatedValue> {
    if x.iter().any(|&v| v >= g.n()) {
        return Err(Error::InvalidParameter(
            "annotation outside the vertex set".into(),
        ));
    }
    if x.is_empty() {
        return Ok(AnnotatedValue {
            param: Param::Tw,
            value: 0,
            witness: Witness::None,
        });
    }
    let keep = relevant(g, x);
    if keep.len() > budget.max_host_vertices || x.len() > 24 {
        return Err(Error::BudgetExceeded);
    }
    let roots: Vec<usize> = x.iter().copied().collect();
    let free: Vec<usize> = keep.iter().copied().filter(|v| !x.contains(v)).collect();
    let mut part = vec![usize::MAX; g.n()];
    for (i, &r) in roots.iter().enumerate() {
        part[r] = i;
    }
    let mut e = Enum {
        g,
        roots: &roots,
        free: &free,
        part,
        seen: HashSet::new(),
        best: None,
        nodes: 0,
        budget,
    };
    e.run(0)?;
    let (value, parts, order) = e.best.expect("at least one partition exists");
    let pattern = contraction(g, &parts);
    let td = TreeDecomposition::from_elimination_order(&pattern, &order);
    let model = MinorModel {
        pattern,
        host: g.clone(),
        branch_sets: parts.into_iter().enumerate().collect(),
        roots: Some(x.clone()),
    };
    Ok(AnnotatedValue {
        param: Param::Tw,
        value,
        witness: Witness::Both(td, model),
    })
}

fn contraction(g: &Graph, parts: &[VertexSet]) -> Graph {
    let mut owner = vec![usize::MAX; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    let edges = g.edges().iter().filter_map(|&(u, v)| {
        let (a, b) = (owner[u], owner[v]);
        (a != usize::MAX && b != usize::MAX && a != b).then_some((a, b))
    });
    Graph::from_edges_lossy(parts.len(), edges)
}

struct Enum<'a> {
    g: &'a Graph,
    roots: &'a [usize],
    free: &'a [usize],
    part: Vec<usize>,
    seen: HashSet<Vec<(usize, usize)>>,
    best: Option<(usize, Vec<VertexSet>, Vec<usize>)>,
    nodes: u64,
    budget: SearchBudget,
}

impl Enum<'_> {
    fn parts(&self) -> Vec<VertexSet> {
        let mut parts = vec![VertexSet::new(); self.roots.len()];
        for v in self.g.vertices() {
            if self.part[v] != usize::MAX {
                parts[self.part[v]].insert(v);
            }
        }
        parts
    }

    /// Whether part `i` can still become connected using unassigned vertices.
    fn connectable(&self, i: usize, assigned_upto: usize) -> bool {
        let open: HashSet<usize> = self.free[assigned_upto..].iter().copied().collect();
        let reach = self
            .g
            .reach_within(self.roots[i], |w| self.part[w] == i || open.contains(&w));
        self.g
            .vertices()
            .all(|v| self.part[v] != i || reach.contains(&v))
    }

    fn run(&mut self, idx: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return Err(Error::BudgetExceeded);
        }
        if idx == self.free.len() {
            let parts = self.parts();
            if !parts.iter().all(|p| self.g.is_connected_set(p)) {
                return Ok(());
            }
            let h = contraction(self.g, &parts);
            if !self.seen.insert(h.edges().to_vec()) {
                return Ok(());
            }
            let (w, order) = treewidth_dp(&h)?;
            if self.best.as_ref().is_none_or(|b| w > b.0) {
                self.best = Some((w, parts, order));
            }
            return Ok(());
        }
        let v = self.free[idx];
        for i in 0..self.roots.len() {
            self.part[v] = i;
            if self.connectable(i, idx + 1) {
                self.run(idx + 1)?;
            }
        }
        self.part[v] = usize::MAX;
        Ok(())
    }
}

/// `tw'(G, X)`: the treewidth of the torso of `x`.
pub fn tw_prime(g: &Graph, x: &VertexSet, cap: usize) -> Result<AnnotatedValue> {
    treewidth_exact(&torso_annotated(g, x), cap)
}

/// `hw(G, X)`: the largest `t` with `K_t` an `x`-rooted minor.
pub fn hw_annotated(g: &Graph, x: &VertexSet, budget: SearchBudget) -> Result<AnnotatedValue> {
    let mut best = (0, Witness::None);
    for t in 1..=x.len() {
        match find_minor(g, &Graph::complete(t), Some(x), budget) {
            Search::Found(m) => best = (t, Witness::Model(m)),
            Search::None => break,
            Search::BudgetExceeded => return Err(Error::BudgetExceeded),
        }
    }
    Ok(AnnotatedValue {
        param: Param::Hw,
        value: best.0,
        witness: best.1,
    })
}

/// Annotated value of `param` at `(g, x)`.
pub fn annotated_value(
    g: &Graph,
    x: &VertexSet,
    param: Param,
    budget: SearchBudget,
) -> Result<usize> {
    match param {
        Param::Tw => tw_annotated(g, x, budget).map(|a| a.value),
        Param::Bg => bg_annotated(g, x, budget),
        Param::Hw => hw_annotated(g, x, budget).map(|a| a.value),
    }
}

/// Target class for [`modulator_value`].
#[derive(Clone, Copy)]
pub enum ClassPredicate {
    All,
    Planar,
    /// Graphs with no edges.
    Edgeless,
    Custom(fn(&Graph) -> bool),
}

impl ClassPredicate {
    pub fn holds(&self, g: &Graph) -> bool {
        match self {
            ClassPredicate::All => true,
            ClassPredicate::Planar => is_planar(g),
            ClassPredicate::Edgeless => g.m() == 0,
            ClassPredicate::Custom(f) => f(g),
        }
    }
}

impl fmt::Debug for ClassPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassPredicate::All => write!(f, "All"),
            ClassPredicate::Planar => write!(f, "Planar"),
            ClassPredicate::Edgeless => write!(f, "Edgeless"),
            ClassPredicate::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// Result of [`modulator_value`]: the value and a modulator attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulatorValue {
    pub value: usize,
    pub modulator: VertexSet,
}

/// Largest graph on which [`modulator_value`] enumerates all subsets.
const MODULATOR_LIMIT: usize = 14;

/// Minimum of `param(G, X)` over modulators `X` with `G - X` in the class.
///
/// With `fixed = Some(x)` only that modulator is evaluated; it must itself
/// leave a graph in the class.
pub fn modulator_value(
    g: &Graph,
    fixed: Option<&VertexSet>,
    class: ClassPredicate,
    param: Param,
    budget: SearchBudget,
) -> Result<ModulatorValue> {
    if let Some(x) = fixed {
        if !class.holds(&g.delete_vertices(x).0) {
            return Err(Error::Precondition(
                "G - X is outside the target class".into(),
            ));
        }
        return Ok(ModulatorValue {
            value: annotated_value(g, x, param, budget)?,
            modulator: x.clone(),
        });
    }
    let n = g.n();
    if n > MODULATOR_LIMIT {
        return Err(Error::TooLarge(format!(
            "modulator enumeration limited to {MODULATOR_LIMIT} vertices"
        )));
    }
    // subsets by size, so the first zero found is also a smallest modulator
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut best: Option<ModulatorValue> = None;
    for s in subsets {
        let x: VertexSet = (0..n).filter(|&v| s & 1 << v != 0).collect();
        if !class.holds(&g.delete_vertices(&x).0) {
            continue;
        }
        let value = annotated_value(g, &x, param, budget)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(ModulatorValue {
                value,
                modulator: x,
            });
        }
        if value == 0 {
            break;
        }
    }
    best.ok_or_else(|| Error::Precondition("no vertex subset leaves a graph in the class".into()))
}
