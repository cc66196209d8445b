//! DIMACS, DOT, PACE `.td` and JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::width::TreeDecomposition;

/// JSON shape of a graph: vertex count plus sorted edge list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

impl TryFrom<EdgeList> for Graph {
    type Error = Error;
    fn try_from(e: EdgeList) -> Result<Graph> {
        Graph::from_edge_list(e.n, &e.edges)
    }
}

/// Serde adapter storing a [`Graph`] as an [`EdgeList`].
pub mod graph_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
        EdgeList::from(g).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let e = EdgeList::deserialize(d)?;
        Graph::try_from(e).map_err(serde::de::Error::custom)
    }
}

/// `p edge n m` followed by one `e u v` line per edge, 1-indexed.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let parse_err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(parse_err("expected `p edge <n> <m>`"));
                }
                let n = toks[2].parse().map_err(|_| parse_err("bad vertex count"))?;
                let m: usize = toks[3].parse().map_err(|_| parse_err("bad edge count"))?;
                header = Some((n, m));
            }
            Some(&"e") => {
                if header.is_none() {
                    return Err(parse_err("edge before header"));
                }
                if toks.len() != 3 {
                    return Err(parse_err("expected `e <u> <v>`"));
                }
                let u: usize = toks[1].parse().map_err(|_| parse_err("bad endpoint"))?;
                let v: usize = toks[2].parse().map_err(|_| parse_err("bad endpoint"))?;
                if u == 0 || v == 0 {
                    return Err(parse_err("endpoints are 1-indexed"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(parse_err("unknown line type")),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

/// Undirected DOT. Isolated vertices are listed so the vertex count survives.
pub fn write_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// PACE `.td`: `s td <bags> <max bag size> <n>`, then `b id v...`, then tree edges.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max = td.bags.iter().map(VertexSet::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.bags.len(), max, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in td.tree.edges() {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// Parses a PACE `.td` file, returning the decomposition and the graph's vertex count.
pub fn read_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut tree_edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let nums = |from: usize| -> Result<Vec<usize>> {
            toks[from..]
                .iter()
                .map(|t| t.parse().map_err(|_| err("bad integer")))
                .collect()
        };
        match toks.first() {
            None | Some(&"c") => continue,
            Some(&"s") => {
                if toks.len() != 5 || toks[1] != "td" {
                    return Err(err("expected `s td <bags> <max> <n>`"));
                }
                let v = nums(2)?;
                header = Some((v[0], v[2]));
            }
            Some(&"b") => {
                let v = nums(1)?;
                if v.is_empty() || v[0] == 0 || v[1..].contains(&0) {
                    return Err(err("bag ids and vertices are 1-indexed"));
                }
                bags.insert(v[0] - 1, v[1..].iter().map(|x| x - 1).collect());
            }
            Some(_) => {
                let v = nums(0)?;
                if v.len() != 2 || v[0] == 0 || v[1] == 0 {
                    return Err(err("expected a tree edge `a b`"));
                }
                tree_edges.push((v[0] - 1, v[1] - 1));
            }
        }
    }
    let (count, n) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    if bags.len() != count || bags.keys().enumerate().any(|(i, &k)| i != k) {
        return Err(Error::Parse {
            line: 0,
            msg: "bag ids must be exactly 1..=count".into(),
        });
    }
    let tree = Graph::from_edge_list(count, &tree_edges)?;
    Ok((
        TreeDecomposition {
            tree,
            bags: bags.into_values().collect(),
        },
        n,
    ))
}
