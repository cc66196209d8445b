//! Cylindrical grids, mixed surface grids, Dyck-grids, walls and their variants.
//!
//! Base-grid vertex `v^i_j` (cycle `i`, position `j`, both 1-based) gets id
//! `(i - 1) * n + (j - 1)` where `n` is the cycle length. Transaction
//! subdivision vertices follow, then satellite vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Handle,
    Crosscap,
}

/// A handle or crosscap bundle attached to cycle 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransactionRecord {
    pub kind: Kind,
    /// Block index, `2..=T+1`.
    pub position: usize,
    /// Vertex paths, each running from its lower to its higher cycle-1 endpoint.
    /// Handles list the first bundle, then the second.
    pub paths: Vec<Vec<usize>>,
}

/// A generated graph with base-grid coordinates and transaction metadata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGrid {
    #[serde(with = "crate::io::graph_serde")]
    pub graph: Graph,
    /// Number of concentric cycles.
    pub cycles: usize,
    /// Length of every cycle.
    pub length: usize,
    /// `(cycle, position)` for each base vertex, keyed by vertex id.
    pub coord: BTreeMap<usize, (usize, usize)>,
    pub transactions: Vec<TransactionRecord>,
    pub subdivision_vertices: VertexSet,
    pub satellites: VertexSet,
}

impl LabeledGrid {
    /// Id of the base vertex at `(cycle, position)`.
    pub fn vertex(&self, cycle: usize, position: usize) -> usize {
        (cycle - 1) * self.length + (position - 1)
    }

    /// Order of the grid, i.e. its number of cycles.
    pub fn order(&self) -> usize {
        self.cycles
    }

    pub fn base_vertex_count(&self) -> usize {
        self.coord.len()
    }

    pub fn kinds(&self) -> Vec<Kind> {
        self.transactions.iter().map(|t| t.kind).collect()
    }
}

/// How many times to subdivide each transaction edge.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Subdivisions {
    #[default]
    None,
    Uniform(usize),
    /// Indexed by transaction, then path.
    PerPath(Vec<Vec<usize>>),
}

impl Subdivisions {
    fn count(&self, t: usize, p: usize) -> usize {
        match self {
            Subdivisions::None => 0,
            Subdivisions::Uniform(s) => *s,
            Subdivisions::PerPath(v) => v.get(t).and_then(|x| x.get(p)).copied().unwrap_or(0),
        }
    }
}

/// The `(m, n)`-cylindrical grid: `m` concentric cycles of length `n`.
pub fn cylindrical_grid(m: usize, n: usize) -> Result<LabeledGrid> {
    if m < 1 {
        return Err(invalid_param("cylindrical grid needs at least one cycle"));
    }
    if n < 3 {
        return Err(invalid_param(format!("cycle length {n} < 3")));
    }
    let id = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut edges = Vec::with_capacity(2 * m * n);
    let mut coord = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=n {
            coord.insert(id(i, j), (i, j));
            edges.push((id(i, j), id(i, j % n + 1)));
            if i < m {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Ok(LabeledGrid {
        graph: Graph::from_edges_lossy(m * n, edges),
        cycles: m,
        length: n,
        coord,
        transactions: Vec::new(),
        subdivision_vertices: VertexSet::new(),
        satellites: VertexSet::new(),
    })
}

/// Cycle-1 position pairs of the transaction at block `position` of an order-`m` grid.
pub fn transaction_pairs(kind: Kind, position: usize, m: usize) -> Vec<(usize, usize)> {
    let o = 4 * m * (position - 1);
    match kind {
        Kind::Handle => {
            let first = (1..=m).map(|j| (o + j, o + 3 * m - j + 1));
            let second = (1..=m).map(|j| (o + m + j, o + 4 * m - j + 1));
            first.chain(second).collect()
        }
        Kind::Crosscap => (1..=2 * m).map(|j| (o + j, o + 2 * m + j)).collect(),
    }
}

/// The order-`k` mixed surface grid with `kinds[p]` attached at block `p + 2`.
pub fn mixed_surface_grid(
    k: usize,
    kinds: &[Kind],
    subdivisions: &Subdivisions,
) -> Result<LabeledGrid> {
    if k < 1 {
        return Err(invalid_param("order must be at least 1"));
    }
    if kinds.is_empty() {
        return Err(invalid_param("at least one handle or crosscap is required"));
    }
    let mut g = cylindrical_grid(k, 4 * (kinds.len() + 1) * k)?;
    let mut n = g.graph.n();
    let mut extra = Vec::new();
    for (t, &kind) in kinds.iter().enumerate() {
        let position = t + 2;
        let mut paths = Vec::new();
        for (p, (a, b)) in transaction_pairs(kind, position, k).into_iter().enumerate() {
            let mut path = vec![g.vertex(1, a)];
            for _ in 0..subdivisions.count(t, p) {
                g.subdivision_vertices.insert(n);
                path.push(n);
                n += 1;
            }
            path.push(g.vertex(1, b));
            extra.extend(path.windows(2).map(|w| (w[0], w[1])));
            paths.push(path);
        }
        g.transactions.push(TransactionRecord {
            kind,
            position,
            paths,
        });
    }
    g.graph = Graph::from_edges_lossy(n, g.graph.edges().iter().copied().chain(extra));
    Ok(g)
}

/// Handles first, then crosscaps, as in the cyclic order A, H, ..., H, C, ..., C.
pub fn dyck_kinds(h: usize, c: usize) -> Vec<Kind> {
    let mut kinds = vec![Kind::Handle; h];
    kinds.extend(std::iter::repeat_n(Kind::Crosscap, c));
    kinds
}

/// The `(h, c)`-Dyck-grid of order `k`. `(-1, 2)` is read as `(0, 0)`.
pub fn dyck_grid(h: isize, c: usize, k: usize) -> Result<LabeledGrid> {
    if c > 2 {
        return Err(invalid_param(format!(
            "Dyck-grids carry at most 2 crosscaps, got {c}"
        )));
    }
    let (h, c) = match (h, c) {
        (-1, 2) => (0, 0),
        (h, _) if h < 0 => return Err(invalid_param(format!("negative handle count {h}"))),
        (h, c) => (h as usize, c),
    };
    if k < 1 {
        return Err(invalid_param("order must be at least 1"));
    }
    if h + c == 0 {
        return cylindrical_grid(k, 4 * k);
    }
    mixed_surface_grid(k, &dyck_kinds(h, c), &Subdivisions::None)
}

/// An elementary wall with its grid coordinates.
#[derive(Clone, Debug)]
pub struct Wall {
    pub graph: Graph,
    /// `(row, column)` in the underlying `k × 2k` grid, 1-based.
    pub coord: Vec<(usize, usize)>,
    pub perimeter: VertexSet,
}

impl Wall {
    /// Number of rows.
    pub fn height(&self) -> usize {
        self.coord.iter().map(|c| c.0).max().unwrap_or(0)
    }

    /// Vertices of each horizontal path, top to bottom, in column order.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.height())
            .map(|i| {
                let mut row: Vec<usize> = (0..self.graph.n())
                    .filter(|&v| self.coord[v].0 == i)
                    .collect();
                row.sort_by_key(|&v| self.coord[v].1);
                row
            })
            .collect()
    }

    /// Vertices of each vertical path: the `j`-th one lives in grid columns `2j - 1` and `2j`.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        (1..=self.height())
            .map(|j| {
                (0..self.graph.n())
                    .filter(|&v| self.coord[v].1.div_ceil(2) == j)
                    .collect()
            })
            .collect()
    }
}

/// The elementary `k`-wall.
pub fn elementary_wall(k: usize) -> Result<Wall> {
    if k < 3 {
        return Err(invalid_param(format!("walls need k >= 3, got {k}")));
    }
    let cols = 2 * k;
    let id = |i: usize, j: usize| (i - 1) * cols + (j - 1);
    let mut edges = Vec::new();
    for i in 1..=k {
        for j in 1..=cols {
            if j < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            // the i-th edge of column j joins rows i and i+1
            if i < k && (i % 2) != (j % 2) {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    let full = Graph::from_edges_lossy(k * cols, edges);
    let leaves: VertexSet = full.vertices().filter(|&v| full.degree(v) == 1).collect();
    let (graph, map) = full.delete_vertices(&leaves);
    let mut coord = vec![(0, 0); graph.n()];
    let mut perimeter = VertexSet::new();
    for i in 1..=k {
        for j in 1..=cols {
            if let Some(v) = map[id(i, j)] {
                coord[v] = (i, j);
                if j <= 2 || j >= cols - 1 || i == 1 || i == k {
                    perimeter.insert(v);
                }
            }
        }
    }
    Ok(Wall {
        graph,
        coord,
        perimeter,
    })
}

/// The elementary `(h, c; t)`-Dyck-wall.
///
/// Handle edges join columns of opposite parity; the radial edge at the even
/// endpoint of every kept handle edge is removed as well so that the result
/// stays subcubic.
pub fn dyck_wall(h: usize, c: usize, t: usize) -> Result<Graph> {
    if t < 3 {
        return Err(invalid_param(format!("Dyck-walls need t >= 3, got {t}")));
    }
    if c > 2 {
        return Err(invalid_param(format!(
            "Dyck-walls carry at most 2 crosscaps, got {c}"
        )));
    }
    let grid = dyck_grid(h as isize, c, 2 * t)?;
    let n = grid.length;
    let mut drop = Vec::new();
    for i in 1..t {
        for j in 1..=n {
            if i % 2 == j % 2 {
                drop.push((grid.vertex(i, j), grid.vertex(i + 1, j)));
            }
        }
    }
    for tr in &grid.transactions {
        for path in &tr.paths {
            let (a, b) = (grid.coord[&path[0]].1, grid.coord[&path[path.len() - 1]].1);
            if a % 2 == 0 {
                drop.push((path[0], path[1]));
                continue;
            }
            if b % 2 == 0 {
                drop.push((grid.vertex(1, b), grid.vertex(2, b)));
            }
        }
    }
    let thinned = grid.graph.without_edges(&drop);
    let inner: VertexSet = (t + 1..=2 * t)
        .flat_map(|i| (1..=n).map(move |j| (i - 1) * n + (j - 1)))
        .collect();
    Ok(thinned.delete_vertices(&inner).0)
}

/// `D̃`: the Dyck-grid with its annulus block removed and the cut cycles rejoined.
pub fn dtilde(h: usize, c: usize, k: usize) -> Result<LabeledGrid> {
    if h + c == 0 {
        return Err(invalid_param(
            "the annulus-free variant needs (h, c) != (0, 0)",
        ));
    }
    let g = dyck_grid(h as isize, c, k)?;
    let cut = 4 * k;
    let removed: VertexSet = (1..=k)
        .flat_map(|i| (1..=cut).map(move |j| (i, j)))
        .map(|(i, j)| g.vertex(i, j))
        .collect();
    let rejoin: Vec<_> = (1..=k)
        .map(|i| (g.vertex(i, cut + 1), g.vertex(i, g.length)))
        .collect();
    let (graph, map) = g.graph.with_edges(rejoin).delete_vertices(&removed);
    let length = g.length - cut;
    let coord = g
        .coord
        .iter()
        .filter_map(|(&v, &(i, j))| Some((map[v]?, (i, j - cut))))
        .collect();
    let remap = |s: &VertexSet| s.iter().filter_map(|&v| map[v]).collect();
    let transactions = g
        .transactions
        .iter()
        .map(|t| TransactionRecord {
            kind: t.kind,
            position: t.position,
            paths: t
                .paths
                .iter()
                .map(|p| p.iter().map(|&v| map[v].unwrap()).collect())
                .collect(),
        })
        .collect();
    Ok(LabeledGrid {
        graph,
        cycles: k,
        length,
        coord,
        transactions,
        subdivision_vertices: remap(&g.subdivision_vertices),
        satellites: VertexSet::new(),
    })
}

/// `D̂`: `D̃` plus one satellite per four consecutive outer-cycle vertices of each block.
pub fn dhat(h: usize, c: usize, k: usize) -> Result<LabeledGrid> {
    let mut g = dtilde(h, c, k)?;
    let mut n = g.graph.n();
    let mut extra = Vec::new();
    for block in 0..(h + c) {
        for s in 0..k {
            let sat = n;
            n += 1;
            g.satellites.insert(sat);
            for q in 1..=4 {
                extra.push((sat, g.vertex(1, 4 * k * block + 4 * s + q)));
            }
        }
    }
    g.graph = Graph::from_edges_lossy(n, g.graph.edges().iter().copied().chain(extra));
    Ok(g)
}

/// A crossed `k`-grid: strip the outer layer of the `(k+2)`-grid, subdivide
/// each remaining edge once, then take the line graph.
pub fn crossed_grid(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(invalid_param("crossed grids need k >= 1"));
    }
    let s = k + 2;
    let grid = Graph::grid(s, s);
    let kept: Vec<_> = grid
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| grid.degree(u) == 4 || grid.degree(v) == 4)
        .collect();
    let mut n = grid.n();
    let mut edges = Vec::new();
    for (u, v) in kept {
        edges.push((u, n));
        edges.push((n, v));
        n += 1;
    }
    let sub = Graph::from_edges_lossy(n, edges);
    let used: VertexSet = sub.vertices().filter(|&v| sub.degree(v) > 0).collect();
    Ok(sub.induced(&used).0.line_graph())
}

/// A hairy annotated wall: the wall `Ŵ`, the degree-two set `S`, and the hair ends `X`.
#[derive(Clone, Debug)]
pub struct HairyWall {
    pub graph: Graph,
    pub s: VertexSet,
    pub x: VertexSet,
}

/// Hairy annotated `r`-wall with pendant paths of `hair_len ≥ 1` edges.
///
/// Every maximal path between branch vertices of the elementary `r`-wall gets
/// exactly one degree-two vertex of `S` (subdividing the path if it has no
/// interior), and a pendant path runs from each vertex of `S` to its end in `X`.
pub fn hairy_wall(r: usize, hair_len: usize) -> Result<HairyWall> {
    if hair_len < 1 {
        return Err(invalid_param("hairs need at least one edge"));
    }
    let w = elementary_wall(r)?.graph;
    let mut n = w.n();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut s = VertexSet::new();
    for branch in branch_paths(&w) {
        if branch.len() == 2 {
            edges.push((branch[0], n));
            edges.push((n, branch[1]));
            s.insert(n);
            n += 1;
        } else {
            edges.extend(branch.windows(2).map(|p| (p[0], p[1])));
            s.insert(branch[branch.len() / 2]);
        }
    }
    let mut x = VertexSet::new();
    for &sv in &s {
        let mut prev = sv;
        for _ in 0..hair_len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        x.insert(prev);
    }
    Ok(HairyWall {
        graph: Graph::from_edges_lossy(n, edges),
        s,
        x,
    })
}

/// Maximal paths whose ends have degree 3 and whose interior has degree 2.
pub fn branch_paths(g: &Graph) -> Vec<Vec<usize>> {
    let mut used = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 3) {
        for &w in g.neighbors(v) {
            if used.contains(&(v.min(w), v.max(w))) {
                continue;
            }
            let mut path = vec![v, w];
            while g.degree(*path.last().unwrap()) == 2 {
                let cur = path[path.len() - 1];
                let prev = path[path.len() - 2];
                let next = *g.neighbors(cur).iter().find(|&&x| x != prev).unwrap();
                path.push(next);
            }
            for p in path.windows(2) {
                used.insert((p[0].min(p[1]), p[0].max(p[1])));
            }
            out.push(path);
        }
    }
    out
}
