//! Societies: a graph with a cyclic order on some of its vertices. Segments,
//! transactions, crosses and linear decompositions.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::connectivity::{min_vertex_cut, Separation};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::minor::SearchBudget;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Society {
    #[serde(with = "crate::io::graph_serde")]
    pub graph: Graph,
    /// The cyclic order, listed from an arbitrary starting vertex.
    pub omega: Vec<usize>,
}

impl Society {
    pub fn new(graph: Graph, omega: Vec<usize>) -> Result<Self> {
        let soc = Society { graph, omega };
        soc.validate()?;
        Ok(soc)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = VertexSet::new();
        for &v in &self.omega {
            if v >= self.graph.n() {
                return Err(Error::InvalidParameter(format!(
                    "cyclic order mentions missing vertex {v}"
                )));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} repeats in the cyclic order"
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    fn position(&self, v: usize) -> Option<usize> {
        self.omega.iter().position(|&w| w == v)
    }

    /// `sΩt`: the vertices from `s` to `t` in cyclic order, or all of them when
    /// `t` immediately precedes `s`.
    pub fn segment(&self, s: usize, t: usize) -> Result<Vec<usize>> {
        let (Some(i), Some(j)) = (self.position(s), self.position(t)) else {
            return Err(Error::InvalidParameter(format!(
                "{s} or {t} is not in the cyclic order"
            )));
        };
        let l = self.len();
        let len = (j + l - i) % l + 1;
        Ok((0..len).map(|d| self.omega[(i + d) % l]).collect())
    }

    /// Every non-empty segment, each listed once, in cyclic order from its first vertex.
    pub fn segments(&self) -> Vec<Vec<usize>> {
        let l = self.len();
        let mut out: Vec<Vec<usize>> = (0..l)
            .flat_map(|i| (1..l).map(move |len| (i, len)))
            .map(|(i, len)| (0..len).map(|d| self.omega[(i + d) % l]).collect())
            .collect();
        if l > 0 {
            out.push(self.omega.clone());
        }
        out
    }

    /// No two of its vertices are separated on the cycle by two vertices outside it.
    pub fn is_segment(&self, set: &VertexSet) -> bool {
        if set.iter().any(|&v| self.position(v).is_none()) {
            return false;
        }
        // a segment is an arc: at most one place where membership switches on
        let inside: Vec<bool> = self.omega.iter().map(|v| set.contains(v)).collect();
        let switches = (0..inside.len())
            .filter(|&i| inside[i] && !inside[(i + 1) % inside.len()])
            .count();
        switches <= 1
    }

    /// The transaction of largest order, with the two segments it links.
    ///
    /// Growing either segment never lowers the number of disjoint paths, so only
    /// splits of the cycle into two complementary arcs are tried.
    pub fn deepest_transaction(&self) -> Transaction {
        let l = self.len();
        let mut best = Transaction {
            a: Vec::new(),
            b: Vec::new(),
            paths: Vec::new(),
        };
        for i in 0..l {
            for len in 1..l {
                let a: Vec<usize> = (0..len).map(|d| self.omega[(i + d) % l]).collect();
                let b: Vec<usize> = (len..l).map(|d| self.omega[(i + d) % l]).collect();
                let cut = min_vertex_cut(
                    &self.graph,
                    &a.iter().copied().collect(),
                    &b.iter().copied().collect(),
                    None,
                );
                if cut.paths.len() > best.paths.len() {
                    best = Transaction {
                        a,
                        b,
                        paths: cut.paths,
                    };
                }
            }
        }
        best
    }

    /// Largest order of a transaction.
    pub fn transaction_depth(&self) -> usize {
        self.deepest_transaction().paths.len()
    }
}

/// Disjoint paths between two disjoint segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transaction {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransactionClass {
    /// Two crossing paths; the handle of thickness one and the two-path crosscap.
    Cross,
    Crosscap {
        thickness: usize,
    },
    Handle {
        thickness: usize,
    },
    /// No two paths cross.
    Planar,
    Unclassified,
}

/// Classifies a family of disjoint paths by the cyclic order of their endpoints.
pub fn classify_transaction(paths: &[Vec<usize>], omega: &[usize]) -> Result<TransactionClass> {
    let mut used = VertexSet::new();
    for p in paths {
        if p.is_empty() {
            return Err(Error::InvalidParameter("empty path".into()));
        }
        for &v in p {
            if !used.insert(v) {
                return Err(Error::InvalidParameter(format!("paths share vertex {v}")));
            }
        }
    }
    let pos = |v: usize| {
        omega.iter().position(|&w| w == v).ok_or_else(|| {
            Error::InvalidParameter(format!("endpoint {v} is not in the cyclic order"))
        })
    };
    // the path index at each endpoint, read around the cycle
    let mut ends = Vec::with_capacity(2 * paths.len());
    for (i, p) in paths.iter().enumerate() {
        ends.push((pos(p[0])?, i));
        ends.push((pos(*p.last().unwrap())?, i));
    }
    ends.sort_unstable();
    if paths.iter().any(|p| p.len() == 1) {
        return Err(Error::InvalidParameter(
            "a path needs two distinct endpoints".into(),
        ));
    }
    let word: Vec<usize> = ends.iter().map(|&(_, i)| i).collect();
    let n = paths.len();
    let len = word.len();
    let rotations = (0..len).map(|r| (0..len).map(|i| word[(i + r) % len]).collect::<Vec<_>>());
    let is_crosscap = |w: &[usize]| (0..n).all(|i| w[i] == w[i + n]) && distinct(&w[..n]);
    let is_handle = |w: &[usize]| {
        n.is_multiple_of(2) && {
            let t = n / 2;
            (0..t).all(|i| w[i] == w[3 * t - 1 - i] && w[t + i] == w[4 * t - 1 - i])
                && distinct(&w[..n])
        }
    };
    if n == 0 {
        return Ok(TransactionClass::Planar);
    }
    if n == 2 && rotations.clone().any(|w| is_crosscap(&w)) {
        return Ok(TransactionClass::Cross);
    }
    if n >= 4 && rotations.clone().any(|w| is_handle(&w)) {
        return Ok(TransactionClass::Handle { thickness: n / 2 });
    }
    if rotations.clone().any(|w| is_crosscap(&w)) && n != 2 {
        return Ok(TransactionClass::Crosscap { thickness: n });
    }
    if !crossing_pair(&word) {
        return Ok(TransactionClass::Planar);
    }
    Ok(TransactionClass::Unclassified)
}

fn distinct(xs: &[usize]) -> bool {
    let set: VertexSet = xs.iter().copied().collect();
    set.len() == xs.len()
}

/// Whether two chords of the circle interleave.
fn crossing_pair(word: &[usize]) -> bool {
    let n = word.iter().max().map_or(0, |m| m + 1);
    let mut span = vec![(usize::MAX, 0); n];
    for (i, &p) in word.iter().enumerate() {
        span[p].0 = span[p].0.min(i);
        span[p].1 = span[p].1.max(i);
    }
    span.iter().enumerate().any(|(x, &(a, b))| {
        span.iter()
            .skip(x + 1)
            .any(|&(c, d)| (a < c && c < b && b < d) || (c < a && a < d && d < b))
    })
}

/// Two disjoint paths `s1–t1`, `s2–t2`, internally avoiding the cycle, whose
/// ends alternate `s1, s2, t1, t2` around it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cross {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// Finds a cross by exhaustive two-path search, or proves there is none.
pub fn has_cross(soc: &Society, budget: SearchBudget) -> Result<Option<Cross>> {
    let g = &soc.graph;
    let l = soc.len();
    let on_cycle: VertexSet = soc.omega.iter().copied().collect();
    let mut search = TwoPaths {
        g,
        nodes: 0,
        budget,
        start: Instant::now(),
    };
    for i in 0..l {
        for j in i + 1..l {
            for k in j + 1..l {
                for m in k + 1..l {
                    let [a, b, c, d] = [i, j, k, m].map(|x| soc.omega[x]);
                    // only the four ends may be used from the cycle
                    let blocked: VertexSet = on_cycle
                        .iter()
                        .copied()
                        .filter(|&v| ![a, b, c, d].contains(&v))
                        .collect();
                    if let Some((p, q)) = search.find(a, c, b, d, &blocked)? {
                        return Ok(Some(Cross {
                            first: p,
                            second: q,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

struct TwoPaths<'a> {
    g: &'a Graph,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
}

impl TwoPaths<'_> {
    /// Disjoint `s1–t1` and `s2–t2` paths avoiding `blocked`.
    fn find(
        &mut self,
        s1: usize,
        t1: usize,
        s2: usize,
        t2: usize,
        blocked: &VertexSet,
    ) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        let mut path = vec![s1];
        let mut used: VertexSet = blocked.clone();
        used.insert(s1);
        self.extend(&mut path, &mut used, t1, s2, t2)
    }

    fn second(&self, used: &VertexSet, s2: usize, t2: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.g.n()];
        prev[s2] = s2;
        let mut queue = std::collections::VecDeque::from([s2]);
        while let Some(u) = queue.pop_front() {
            if u == t2 {
                let mut out = vec![t2];
                while *out.last().unwrap() != s2 {
                    out.push(prev[*out.last().unwrap()]);
                }
                out.reverse();
                return Some(out);
            }
            for &w in self.g.neighbors(u) {
                if prev[w] == usize::MAX && !used.contains(&w) {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn extend(
        &mut self,
        path: &mut Vec<usize>,
        used: &mut VertexSet,
        t1: usize,
        s2: usize,
        t2: usize,
    ) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
        self.nodes += 1;
        if self.nodes > self.budget.node_limit
            || self
                .budget
                .time_limit
                .is_some_and(|t| self.start.elapsed() > t)
        {
            return Err(Error::BudgetExceeded);
        }
        let mut avoid = used.clone();
        avoid.remove(&s2);
        avoid.remove(&t2);
        let Some(q) = self.second(&avoid, s2, t2) else {
            return Ok(None);
        };
        let last = *path.last().unwrap();
        if last == t1 {
            return Ok(Some((path.clone(), q)));
        }
        for &w in self.g.neighbors(last) {
            if used.contains(&w) || w == s2 || w == t2 {
                continue;
            }
            path.push(w);
            used.insert(w);
            if let Some(found) = self.extend(path, used, t1, s2, t2)? {
                return Ok(Some(found));
            }
            path.pop();
            used.remove(&w);
        }
        Ok(None)
    }
}

/// Bags `X_1, …, X_n` with anchors `v_1, …, v_n` listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearDecomposition {
    pub bags: Vec<VertexSet>,
    pub anchors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum LinearViolation {
    Lengths { bags: usize, anchors: usize },
    AnchorOrder,
    AnchorMissing { index: usize },
    UncoveredVertex { vertex: usize },
    UncoveredEdge { u: usize, v: usize },
    NotInterval { vertex: usize },
}

impl LinearDecomposition {
    pub fn adhesion(&self) -> usize {
        self.bags
            .windows(2)
            .map(|w| w[0].intersection(&w[1]).count())
            .max()
            .unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn validate(&self, soc: &Society) -> Vec<LinearViolation> {
        let mut out = Vec::new();
        if self.bags.len() != self.anchors.len() {
            out.push(LinearViolation::Lengths {
                bags: self.bags.len(),
                anchors: self.anchors.len(),
            });
            return out;
        }
        let pos: Option<Vec<usize>> = self.anchors.iter().map(|&v| soc.position(v)).collect();
        let in_order = pos.is_some_and(|p| {
            // cyclically increasing: exactly one step goes down, the one wrapping around
            let descents = (0..p.len())
                .filter(|&i| p[(i + 1) % p.len()] <= p[i])
                .count();
            p.len() <= 1 || descents == 1
        });
        if !in_order {
            out.push(LinearViolation::AnchorOrder);
        }
        for (i, (&v, bag)) in self.anchors.iter().zip(&self.bags).enumerate() {
            if !bag.contains(&v) {
                out.push(LinearViolation::AnchorMissing { index: i });
            }
        }
        let g = &soc.graph;
        for v in g.vertices() {
            let at: Vec<usize> = (0..self.bags.len())
                .filter(|&i| self.bags[i].contains(&v))
                .collect();
            match (at.first(), at.last()) {
                (None, _) => out.push(LinearViolation::UncoveredVertex { vertex: v }),
                (Some(&f), Some(&l)) if l - f + 1 != at.len() => {
                    out.push(LinearViolation::NotInterval { vertex: v })
                }
                _ => {}
            }
        }
        for &(u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
                out.push(LinearViolation::UncoveredEdge { u, v });
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LinearOutcome {
    Decomposition(LinearDecomposition),
    /// A transaction of order greater than `θ`.
    Deep(Transaction),
}

/// Either a linear decomposition of adhesion at most `2θ` or a transaction of
/// order more than `θ`.
///
/// Sweeps the cycle from its listed start: the `i`-th separation is a minimum
/// vertex cut between the first `i` vertices and the rest, taken on the side
/// of the first ones, and bag `i` is what lies between separations `i - 1` and `i`.
pub fn linear_decomposition(soc: &Society, theta: usize) -> Result<LinearOutcome> {
    soc.validate()?;
    let g = &soc.graph;
    let n = soc.len();
    if n == 0 {
        if g.n() == 0 {
            return Ok(LinearOutcome::Decomposition(LinearDecomposition {
                bags: Vec::new(),
                anchors: Vec::new(),
            }));
        }
        return Err(Error::InvalidParameter(
            "a society with an empty cycle has no linear decomposition".into(),
        ));
    }
    let all: VertexSet = g.vertices().collect();
    let mut seps = vec![Separation::new(VertexSet::new(), all.clone())];
    for i in 1..n {
        let left: VertexSet = soc.omega[..i].iter().copied().collect();
        let right: VertexSet = soc.omega[i..].iter().copied().collect();
        let cut = min_vertex_cut(g, &left, &right, None);
        if cut.paths.len() > theta {
            let transaction = Transaction {
                a: soc.omega[..i].to_vec(),
                b: soc.omega[i..].to_vec(),
                paths: cut.paths,
            };
            return Ok(LinearOutcome::Deep(transaction));
        }
        let prev = seps.last().unwrap();
        // keep the sequence nested; extreme minimum cuts already are
        let a: VertexSet = prev.a.union(&cut.separation.a).copied().collect();
        let b: VertexSet = prev.b.intersection(&cut.separation.b).copied().collect();
        seps.push(Separation::new(a, b));
    }
    seps.push(Separation::new(all, VertexSet::new()));
    let bags: Vec<VertexSet> = (1..=n)
        .map(|i| seps[i].a.intersection(&seps[i - 1].b).copied().collect())
        .collect();
    let dec = LinearDecomposition {
        bags,
        anchors: soc.omega.clone(),
    };
    let violations = dec.validate(soc);
    if !violations.is_empty() {
        return Err(Error::Invalid(format!(
            "linear decomposition: {violations:?}"
        )));
    }
    if dec.adhesion() > 2 * theta {
        return Err(Error::Invalid(format!(
            "adhesion {} exceeds {}",
            dec.adhesion(),
            2 * theta
        )));
    }
    Ok(LinearOutcome::Decomposition(dec))
}
