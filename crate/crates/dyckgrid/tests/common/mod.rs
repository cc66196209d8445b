//! Oracles shared by the test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dyckgrid::generators::*;
use dyckgrid::graph::{Graph, VertexSet};
use dyckgrid::societies::Society;
use dyckgrid::surfaces::{down_closure, genus_class, Surface, SurfaceSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut e = vec![];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, e)
}

/// A random graph with a random cyclic order on some of its vertices.
pub fn random_society(rng: &mut impl Rng) -> Society {
    let n = rng.gen_range(2..=9);
    let p = rng.gen_range(0.2..0.7);
    let g = random_graph(rng, n, p);
    let mut omega: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
    if omega.is_empty() {
        omega.push(0);
    }
    omega.shuffle(rng);
    Society::new(g, omega).unwrap()
}

/// A random `x`-minor of `g`: contract random edges, then drop branch sets missing `x`.
pub fn random_rooted_minor(rng: &mut impl Rng, g: &Graph, x: &VertexSet) -> Graph {
    let mut label: Vec<usize> = g.vertices().collect();
    for &(u, v) in g.edges() {
        if rng.gen_bool(0.3) {
            let (a, b) = (label[u], label[v]);
            for l in label.iter_mut() {
                if *l == b {
                    *l = a;
                }
            }
        }
    }
    let kept: Vec<usize> = {
        let mut ls: Vec<usize> = x.iter().map(|&v| label[v]).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    };
    let index = |l: usize| kept.binary_search(&l).ok();
    let edges = g.edges().iter().filter_map(|&(u, v)| {
        let (a, b) = (index(label[u])?, index(label[v])?);
        (a != b).then_some((a, b))
    });
    Graph::from_edges_lossy(kept.len(), edges)
}

/// Vertices on the boundary of the `k × k` grid.
pub fn perimeter(k: usize) -> VertexSet {
    (0..k * k)
        .filter(|v| v / k == 0 || v / k == k - 1 || v % k == 0 || v % k == k - 1)
        .collect()
}

/// The standalone handle or crosscap grid of order `k`: a `(k, 4k)` cylinder
/// with one transaction occupying the whole cycle.
pub fn block_grid(kind: Kind, k: usize) -> Graph {
    let base = cylindrical_grid(k, 4 * k).unwrap();
    let chords = transaction_pairs(kind, 1, k)
        .into_iter()
        .map(|(a, b)| (base.vertex(1, a), base.vertex(1, b)));
    base.graph.with_edges(chords)
}

/// Checks that `map[r][c]` embeds the `rows × cols` grid into `host` as a subgraph.
pub fn is_grid_embedding(host: &Graph, map: &[Vec<usize>]) -> bool {
    let rows = map.len();
    let cols = map[0].len();
    let image: BTreeSet<usize> = map.iter().flatten().copied().collect();
    if image.len() != rows * cols || map.iter().any(|r| r.len() != cols) {
        return false;
    }
    (0..rows).all(|r| {
        (0..cols).all(|c| {
            (c + 1 == cols || host.has_edge(map[r][c], map[r][c + 1]))
                && (r + 1 == rows || host.has_edge(map[r][c], map[r + 1][c]))
        })
    })
}

/// Row `j` follows chord `(a, b)`: in along position `a` from the innermost
/// cycle, across the chord, back out along position `b`.
pub fn chord_rows(
    k: usize,
    chords: &[(usize, usize)],
    vertex: impl Fn(usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    chords
        .iter()
        .map(|&(a, b)| {
            let inbound = (1..=k).rev().map(|i| vertex(i, a));
            let outbound = (1..=k).map(|i| vertex(i, b));
            inbound.chain(outbound).collect()
        })
        .collect()
}

/// Generator outputs with at most 15 vertices.
pub fn small_generated() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for m in 1..=3 {
        for n in 3..=5 {
            out.push((
                format!("cylinder({m},{n})"),
                cylindrical_grid(m, n).unwrap().graph,
            ));
        }
    }
    for h in 0..=2 {
        for c in 0..=2 {
            out.push((
                format!("dyck({h},{c},1)"),
                dyck_grid(h as isize, c, 1).unwrap().graph,
            ));
        }
    }
    for kinds in [
        vec![Kind::Handle],
        vec![Kind::Crosscap],
        vec![Kind::Crosscap, Kind::Handle],
    ] {
        for s in 0..=1 {
            out.push((
                format!("mixed({kinds:?},{s})"),
                mixed_surface_grid(1, &kinds, &Subdivisions::Uniform(s))
                    .unwrap()
                    .graph,
            ));
        }
    }
    for (h, c) in [(1, 0), (0, 1), (1, 1), (0, 2), (2, 0)] {
        out.push((format!("dtilde({h},{c},1)"), dtilde(h, c, 1).unwrap().graph));
        out.push((format!("dhat({h},{c},1)"), dhat(h, c, 1).unwrap().graph));
    }
    out.push(("crossed(1)".into(), crossed_grid(1).unwrap()));
    out.retain(|(_, g)| g.n() <= 15);
    out
}

pub fn surface_set(items: &[&str]) -> SurfaceSet {
    items
        .iter()
        .map(|t| t.parse::<Surface>().unwrap())
        .collect()
}

fn closure(tops: &[&str]) -> SurfaceSet {
    tops.iter()
        .flat_map(|t| down_closure(t.parse().unwrap()))
        .collect()
}

/// The six lattice panels: (closed set, obstructions, prevalent surface).
pub fn lattice_panels() -> Vec<(SurfaceSet, SurfaceSet, Surface)> {
    vec![
        (
            genus_class(0).unwrap(),
            surface_set(&["torus", "projective-plane"]),
            Surface::SPHERE,
        ),
        (
            genus_class(1).unwrap(),
            surface_set(&["klein-bottle", "torus"]),
            Surface::SPHERE,
        ),
        (
            closure(&["klein-bottle"]),
            surface_set(&["torus"]),
            Surface::TORUS,
        ),
        (
            surface_set(&["empty"]),
            surface_set(&["sphere"]),
            Surface::SPHERE,
        ),
        (
            closure(&["torus"]),
            surface_set(&["projective-plane", "(2,0)"]),
            Surface::SPHERE,
        ),
        (
            genus_class(2).unwrap(),
            surface_set(&["(2,0)", "(1,1)"]),
            Surface::TORUS,
        ),
    ]
}

/// Obstructions of the class of surfaces with Euler genus at most `g`.
pub fn genus_class_obstructions(g: i64) -> SurfaceSet {
    if g < 0 {
        return [Surface::SPHERE].into();
    }
    let t = (g / 2) as usize;
    if g % 2 == 0 {
        [Surface::orientable(t + 1), Surface::normalize(t, 1)].into()
    } else {
        [Surface::normalize(t, 2), Surface::orientable(t + 1)].into()
    }
}
