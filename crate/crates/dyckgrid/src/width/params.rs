//! Grid-type parameters: the largest Dyck-grid of a given surface that is a minor.

use crate::error::{Error, Result};
use crate::generators::dyck_grid;
use crate::graph::Graph;
use crate::minor::{find_minor, Search, SearchBudget};
use crate::surfaces::{sobs, Surface, SurfaceSet};

/// Which family of Dyck-grids [`param_eval`] measures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSpec {
    /// Dyck-grids of every surface with the given Euler genus.
    GBg(i64),
    /// Dyck-grids of the obstructions of a closed surface set.
    SobsBg(SurfaceSet),
    /// Dyck-grids of one surface.
    BgSurface(Surface),
}

impl ParamSpec {
    fn surfaces(&self) -> Result<Vec<Surface>> {
        Ok(match self {
            ParamSpec::GBg(g) => crate::surfaces::surfaces_up_to(*g)
                .into_iter()
                .filter(|s| s.euler_genus() == *g)
                .collect(),
            ParamSpec::SobsBg(set) => sobs(set)?.into_iter().collect(),
            ParamSpec::BgSurface(s) => vec![*s],
        })
    }
}

/// Whether `pattern` sits inside `host` under the identity labelling.
fn labelled_subgraph(host: &Graph, pattern: &Graph) -> bool {
    pattern.n() <= host.n() && pattern.edges().iter().all(|&(u, v)| host.has_edge(u, v))
}

fn contains(host: &Graph, pattern: &Graph, budget: SearchBudget) -> Result<bool> {
    if labelled_subgraph(host, pattern) {
        return Ok(true);
    }
    match find_minor(host, pattern, None, budget) {
        Search::Found(_) => Ok(true),
        Search::None => Ok(false),
        Search::BudgetExceeded => Err(Error::BudgetExceeded),
    }
}

/// Largest `k` such that the order-`k` Dyck-grid of some surface named by
/// `param` is a minor of `g`; 0 if there is none.
pub fn param_eval(g: &Graph, param: &ParamSpec, budget: SearchBudget) -> Result<usize> {
    let mut best = 0;
    for s in param.surfaces()? {
        let Surface::Canonical { h, c } = s else {
            continue;
        };
        let mut k = best + 1;
        loop {
            let pattern = dyck_grid(h as isize, c, k)?.graph;
            if pattern.n() > g.n() || pattern.m() > g.m() || !contains(g, &pattern, budget)? {
                break;
            }
            best = k;
            k += 1;
        }
    }
    Ok(best)
}
