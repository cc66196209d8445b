//! Membership in the clique-sum closure of a class given by a torso predicate.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::SearchBudget;

use super::{torso_at, validate_td, TdViolation, TreeDecomposition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum CliqueSumViolation {
    Decomposition { details: Vec<TdViolation> },
    Torso { node: usize },
}

/// Checks that every torso of `td` satisfies `torso_pred`.
pub fn cliquesum_check(
    g: &Graph,
    td: &TreeDecomposition,
    torso_pred: &dyn Fn(&Graph) -> bool,
) -> Vec<CliqueSumViolation> {
    let details = validate_td(g, td);
    if !details.is_empty() {
        return vec![CliqueSumViolation::Decomposition { details }];
    }
    (0..td.bags.len())
        .filter(|&t| {
            let (torso, _) = torso_at(g, td, t).expect("validated above");
            !torso_pred(&torso)
        })
        .map(|node| CliqueSumViolation::Torso { node })
        .collect()
}

/// Largest graph accepted by [`cliquesum_search`].
const SEARCH_LIMIT: usize = 10;

/// Exhaustive search for a decomposition of `g` all of whose torsos satisfy `torso_pred`.
///
/// A decomposition exists iff the whole graph qualifies, or some leaf bag
/// `C + S` can be split off: `C` nonempty, `N(C) ⊆ S`, the leaf torso
/// `G[C + S]` plus a clique on `S` qualifies, and `G - C` plus a clique on `S`
/// has a decomposition of its own. Results are memoized per labelled graph.
pub fn cliquesum_search(
    g: &Graph,
    torso_pred: &dyn Fn(&Graph) -> bool,
    budget: SearchBudget,
) -> Result<Option<TreeDecomposition>> {
    if g.n() > SEARCH_LIMIT {
        return Err(Error::TooLarge(format!(
            "clique-sum search limited to {SEARCH_LIMIT} vertices"
        )));
    }
    let mut s = CsSearch {
        pred: torso_pred,
        memo: HashMap::new(),
        nodes: 0,
        budget,
    };
    s.solve(g)
}

/// Graph size and edge list of a subproblem.
type MemoKey = (usize, Vec<(usize, usize)>);

struct CsSearch<'a> {
    pred: &'a dyn Fn(&Graph) -> bool,
    memo: HashMap<MemoKey, Option<TreeDecomposition>>,
    nodes: u64,
    budget: SearchBudget,
}

fn with_clique(g: &Graph, s: &VertexSet) -> Graph {
    let s: Vec<usize> = s.iter().copied().collect();
    let mut extra = Vec::new();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i + 1..] {
            extra.push((a, b));
        }
    }
    g.with_edges(extra)
}

impl CsSearch<'_> {
    fn solve(&mut self, g: &Graph) -> Result<Option<TreeDecomposition>> {
        let key = (g.n(), g.edges().to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget.node_limit {
            return Err(Error::BudgetExceeded);
        }
        let found = self.search(g)?;
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn search(&mut self, g: &Graph) -> Result<Option<TreeDecomposition>> {
        if (self.pred)(g) {
            return Ok(Some(TreeDecomposition::trivial(g)));
        }
        let n = g.n();
        let full = (1u32 << n) - 1;
        for c_mask in 1..full {
            let c: VertexSet = (0..n).filter(|&v| c_mask & 1 << v != 0).collect();
            let nc = g.neighborhood(&c);
            let others: Vec<usize> = (0..n)
                .filter(|v| !c.contains(v) && !nc.contains(v))
                .collect();
            for extra in 0..1u32 << others.len() {
                let mut s = nc.clone();
                s.extend(
                    others
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| extra & 1 << i != 0)
                        .map(|(_, &v)| v),
                );
                let leaf_bag: VertexSet = c.union(&s).copied().collect();
                let (leaf, leaf_map) = g.induced(&leaf_bag);
                let s_local: VertexSet = s.iter().map(|&v| leaf_map[v].unwrap()).collect();
                if !(self.pred)(&with_clique(&leaf, &s_local)) {
                    continue;
                }
                let (rest, rest_map) = g.delete_vertices(&c);
                let s_rest: VertexSet = s.iter().map(|&v| rest_map[v].unwrap()).collect();
                let Some(sub) = self.solve(&with_clique(&rest, &s_rest))? else {
                    continue;
                };
                return Ok(Some(attach_leaf(sub, &rest_map, leaf_bag, &s)));
            }
        }
        Ok(None)
    }
}

/// Lifts `sub` (over the vertices of `G - C`) back to `G` and hangs the leaf bag
/// below a bag containing `s`.
fn attach_leaf(
    sub: TreeDecomposition,
    rest_map: &[Option<usize>],
    leaf_bag: VertexSet,
    s: &VertexSet,
) -> TreeDecomposition {
    let mut back = vec![0; rest_map.len()];
    for (old, new) in rest_map.iter().enumerate() {
        if let Some(new) = new {
            back[*new] = old;
        }
    }
    let mut bags: Vec<VertexSet> = sub
        .bags
        .iter()
        .map(|b| b.iter().map(|&v| back[v]).collect())
        .collect();
    let host = bags
        .iter()
        .position(|b| s.is_subset(b))
        .expect("a clique lies inside some bag");
    let leaf = bags.len();
    bags.push(leaf_bag);
    let mut edges = sub.tree.edges().to_vec();
    edges.push((host, leaf));
    TreeDecomposition {
        tree: Graph::from_edges_lossy(leaf + 1, edges),
        bags,
    }
}
