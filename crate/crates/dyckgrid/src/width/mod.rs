//! Tree-decompositions, torsos, exact and annotated treewidth, clique-sums and
//! grid-type parameters.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::MinorModel;

mod annotated;
mod cliquesum;
mod params;
pub mod planarity;
mod treewidth;

pub use annotated::{
    annotated_value, hw_annotated, modulator_value, tw_annotated, tw_annotated_exhaustive,
    tw_prime, ClassPredicate, ModulatorValue,
};
pub use cliquesum::{cliquesum_check, cliquesum_search, CliqueSumViolation};
pub use params::{param_eval, ParamSpec};
pub use treewidth::{treewidth_bb, treewidth_dp, treewidth_exact, DEFAULT_TW_CAP};

/// A tree `tree` together with one bag per tree node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    #[serde(with = "crate::io::graph_serde")]
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum TdViolation {
    BagCount { nodes: usize, bags: usize },
    NotATree,
    OutOfRange { node: usize, vertex: usize },
    UncoveredVertex { vertex: usize },
    UncoveredEdge { u: usize, v: usize },
    Subtree { vertex: usize },
}

impl TreeDecomposition {
    /// The decomposition with a single bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition {
            tree: Graph::empty(1),
            bags: vec![g.vertices().collect()],
        }
    }

    /// Largest bag size minus one; `-1` when every bag is empty.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Largest intersection of two adjacent bags.
    pub fn adhesion(&self) -> usize {
        self.tree
            .edges()
            .iter()
            .map(|&(a, b)| self.bags[a].intersection(&self.bags[b]).count())
            .max()
            .unwrap_or(0)
    }

    /// Builds a decomposition from an elimination ordering of `g`.
    ///
    /// Each vertex gets the bag of itself plus its later neighbours in the
    /// fill-in graph, hung below the earliest of those neighbours.
    pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Self {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition {
                tree: Graph::empty(1),
                bags: vec![VertexSet::new()],
            };
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj: Vec<BTreeSet<usize>> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().copied().collect())
            .collect();
        let mut bags = vec![VertexSet::new(); n];
        let mut parent = vec![None; n];
        for &v in order {
            let later: Vec<usize> = adj[v]
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect();
            for (i, &a) in later.iter().enumerate() {
                for &b in &later[i + 1..] {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
            parent[pos[v]] = later.iter().map(|&w| pos[w]).min();
            bags[pos[v]] = later.iter().copied().chain([v]).collect();
        }
        // bag i belongs to order[i]; roots of a forest are chained so the result is a tree
        let mut edges = Vec::new();
        let mut last_root: Option<usize> = None;
        for (i, &up) in parent.iter().enumerate() {
            match up {
                Some(p) => edges.push((i, p)),
                None => {
                    if let Some(r) = last_root {
                        edges.push((r, i));
                    }
                    last_root = Some(i);
                }
            }
        }
        TreeDecomposition {
            tree: Graph::from_edges_lossy(n, edges),
            bags,
        }
    }
}

/// Decomposition from the greedy min-fill elimination ordering; an upper bound
/// on the treewidth for graphs of any size.
pub fn heuristic_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = g.vertices().collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let fill = |v: usize| {
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut missing = 0;
            for (i, &a) in nb.iter().enumerate() {
                missing += nb[i + 1..].iter().filter(|b| !adj[a].contains(b)).count();
            }
            (missing, nb.len(), v)
        };
        let v = alive.iter().map(|&v| fill(v)).min().expect("non-empty").2;
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        alive.remove(&v);
        order.push(v);
    }
    TreeDecomposition::from_elimination_order(g, &order)
}

/// Checks the three decomposition axioms plus the tree shape.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Vec<TdViolation> {
    let mut out = Vec::new();
    let nodes = td.tree.n();
    if nodes != td.bags.len() {
        out.push(TdViolation::BagCount {
            nodes,
            bags: td.bags.len(),
        });
        return out;
    }
    if nodes == 0 || td.tree.m() + 1 != nodes || !td.tree.is_connected() {
        out.push(TdViolation::NotATree);
    }
    for (t, bag) in td.bags.iter().enumerate() {
        for &v in bag.range(g.n()..) {
            out.push(TdViolation::OutOfRange { node: t, vertex: v });
        }
    }
    for v in g.vertices() {
        let holders: VertexSet = (0..nodes).filter(|&t| td.bags[t].contains(&v)).collect();
        if holders.is_empty() {
            out.push(TdViolation::UncoveredVertex { vertex: v });
        } else if !td.tree.is_connected_set(&holders) {
            out.push(TdViolation::Subtree { vertex: v });
        }
    }
    for &(u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            out.push(TdViolation::UncoveredEdge { u, v });
        }
    }
    out
}

fn require_valid(g: &Graph, td: &TreeDecomposition) -> Result<()> {
    let v = validate_td(g, td);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "invalid tree-decomposition: {v:?}"
        )))
    }
}

/// Torso of `node`: `G[bag]` plus a clique on every adhesion set at `node`.
///
/// Returns the torso and the sorted bag, which maps torso vertex `i` to `bag[i]`.
pub fn torso_at(g: &Graph, td: &TreeDecomposition, node: usize) -> Result<(Graph, Vec<usize>)> {
    require_valid(g, td)?;
    if node >= td.bags.len() {
        return Err(Error::InvalidParameter(format!("node {node} out of range")));
    }
    let bag = &td.bags[node];
    let adhesions = td
        .tree
        .neighbors(node)
        .iter()
        .map(|&t| bag.intersection(&td.bags[t]).copied().collect());
    Ok(completed(g, bag, adhesions))
}

/// `G[x]` plus, for every component `C` of `G - x`, a clique on `N(C)`.
///
/// Vertex `i` of the result is the `i`-th smallest element of `x`.
pub fn torso_annotated(g: &Graph, x: &VertexSet) -> Graph {
    let comps = g.components_avoiding(x);
    completed(g, x, comps.parts.iter().map(|c| g.neighborhood(c))).0
}

fn completed(
    g: &Graph,
    keep: &VertexSet,
    cliques: impl Iterator<Item = VertexSet>,
) -> (Graph, Vec<usize>) {
    let (base, map) = g.induced(keep);
    let mut extra = Vec::new();
    for clique in cliques {
        let ids: Vec<usize> = clique
            .iter()
            .filter_map(|&v| map.get(v).copied().flatten())
            .collect();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                extra.push((a, b));
            }
        }
    }
    (base.with_edges(extra), keep.iter().copied().collect())
}

/// Which parameter an [`AnnotatedValue`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Tw,
    Bg,
    Hw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Decomposition(TreeDecomposition),
    Model(MinorModel),
    /// Both an optimal decomposition of a minor and the model of that minor.
    Both(TreeDecomposition, MinorModel),
    None,
}

/// A parameter value with the object certifying it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedValue {
    pub param: Param,
    pub value: usize,
    pub witness: Witness,
}
