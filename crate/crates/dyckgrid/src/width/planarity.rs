//! Planarity testing by path addition (Demoucron, Malgrange and Pertuiset),
//! applied to each biconnected block.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, VertexSet};

/// Whether `g` has a planar embedding.
pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    blocks(g).into_iter().all(|block| {
        if block.len() < 5 {
            return true;
        }
        let (sub, _) = g.induced(&block);
        sub.m() <= 3 * sub.n() - 6 && block_is_planar(&sub)
    })
}

/// Vertex sets of the biconnected blocks with at least 3 vertices.
fn blocks(g: &Graph) -> Vec<VertexSet> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut comp = VertexSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(a);
                            comp.insert(b);
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        if comp.len() >= 3 {
                            out.push(comp);
                        }
                    }
                }
            }
        }
    }
    out
}

fn find_cycle(g: &Graph) -> Vec<usize> {
    // biconnected with >= 3 vertices: vertex 0 lies on a cycle through its first two neighbours
    let a = g.neighbors(0)[0];
    let b = g.neighbors(0)[1];
    let mut prev = vec![usize::MAX; g.n()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &w in g.neighbors(u) {
            if w != 0 && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![b];
    while *path.last().unwrap() != a {
        path.push(prev[*path.last().unwrap()]);
    }
    path.push(0);
    path
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// A path between two attachments whose interior avoids the embedded part.
    path: Vec<usize>,
}

fn fragments(g: &Graph, in_h: &[bool], h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment {
                attachments: BTreeSet::from([u, v]),
                path: vec![u, v],
            });
        }
    }
    let mut seen = vec![false; g.n()];
    for s in g.vertices() {
        if in_h[s] || seen[s] {
            continue;
        }
        let comp = g.reach_within(s, |w| !in_h[w]);
        for &w in &comp {
            seen[w] = true;
        }
        let attachments: BTreeSet<usize> = comp
            .iter()
            .flat_map(|&w| g.neighbors(w).iter().copied())
            .filter(|&w| in_h[w])
            .collect();
        let a = *attachments
            .iter()
            .next()
            .expect("biconnected blocks attach fragments");
        // breadth-first search from a through the component to another attachment
        let mut prev = vec![usize::MAX; g.n()];
        let mut queue = VecDeque::new();
        for &w in g.neighbors(a) {
            if comp.contains(&w) {
                prev[w] = a;
                queue.push_back(w);
            }
        }
        let mut end = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if in_h[w] && w != a {
                    end = Some((u, w));
                    break 'bfs;
                }
                if comp.contains(&w) && prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        let (last, b) = end.expect("fragment has two attachments");
        let mut path = vec![b, last];
        while *path.last().unwrap() != a {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        out.push(Fragment { attachments, path });
    }
    out
}

fn block_is_planar(g: &Graph) -> bool {
    let cycle = find_cycle(g);
    let mut in_h = vec![false; g.n()];
    let mut h_edges = BTreeSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[u] = true;
        h_edges.insert((u.min(v), u.max(v)));
    }
    let mut faces = vec![cycle.clone(), cycle];
    while h_edges.len() < g.m() {
        let frags = fragments(g, &in_h, &h_edges);
        let admissible: Vec<Vec<usize>> = frags
            .iter()
            .map(|f| {
                (0..faces.len())
                    .filter(|&i| f.attachments.iter().all(|a| faces[i].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return false;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_idx = admissible[pick][0];
        let path = &frags[pick].path;
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..=((j + len - i) % len))
            .map(|t| face[(i + t) % len])
            .collect();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = (0..=((i + len - j) % len))
            .map(|t| face[(j + t) % len])
            .collect();
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in path {
            in_h[v] = true;
        }
    }
    true
}
