//! Explicit minor models between surface grids: swapping neighbouring
//! transactions, trading three crosscaps for a handle and a crosscap and back,
//! the two annulus containments, and half-integral packings.
//!
//! Every routing uses the same layout. The target's cycles sit on host cycles
//! `rows + 1 ..= rows + k`, and the outer `rows` host cycles carry strands.
//! A strand is a list of outer-cycle positions `p0, p1, ..., pl`: consecutive
//! pairs `(p0, p1), (p2, p3), ...` are host chords, and the pairs between them
//! are detours through the outer rows. Its two ends drop radially to the
//! target cycles, optionally with a sideways jog.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::generators::{dtilde, dyck_grid, mixed_surface_grid, Kind, LabeledGrid, Subdivisions};
use crate::graph::VertexSet;
use crate::minor::MinorModel;

/// One named group of strands in a routing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingStep {
    pub action: String,
    pub strands: usize,
    /// Host cycles the strands touch.
    pub cycles: Vec<usize>,
    /// Outer-cycle positions where the strands meet host chords.
    pub positions: Vec<usize>,
    pub vertices: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutedModel {
    pub model: MinorModel,
    pub step_log: Vec<RoutingStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingCertificate {
    pub copies: Vec<MinorModel>,
    /// Number of copies using each host vertex.
    pub multiplicity: BTreeMap<usize, usize>,
}

impl PackingCertificate {
    pub fn max_multiplicity(&self) -> usize {
        self.multiplicity.values().copied().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBudget {
    /// Euler genus `2h + c`.
    pub g: usize,
    pub k: usize,
    /// `162^(2g) * k`.
    pub required_order: u128,
    pub step_plan: Vec<(String, u32)>,
}

#[derive(Clone, Debug)]
struct Strand {
    label: String,
    points: Vec<usize>,
}

fn wrap(x: usize, n: usize) -> usize {
    (x - 1) % n + 1
}

fn outer_position(g: &LabeledGrid, v: usize) -> Result<usize> {
    match g.coord.get(&v) {
        Some(&(1, j)) => Ok(j),
        _ => Err(Error::Invalid(format!(
            "vertex {v} is not on the outer cycle"
        ))),
    }
}

fn claim(owner: &mut HashMap<usize, usize>, v: usize, s: usize) -> Result<()> {
    match owner.insert(v, s) {
        Some(o) if o != s => Err(Error::Invalid(format!(
            "strands {o} and {s} meet at host vertex {v}"
        ))),
        _ => Ok(()),
    }
}

/// Rows for sideways jogs. Right shifts are stacked so that a jog runs below
/// every jog starting inside its span; left shifts mirror this.
fn jog_rows(jogs: &BTreeMap<usize, usize>) -> HashMap<usize, usize> {
    let mut rows = HashMap::new();
    let mut right: Vec<(usize, usize)> = jogs
        .iter()
        .filter(|(t, d)| d > t)
        .map(|(&t, &d)| (t, d))
        .collect();
    right.sort_by_key(|&(t, _)| std::cmp::Reverse(t));
    for &(t, d) in &right {
        let r = right
            .iter()
            .filter(|&&(u, _)| u > t && u <= d)
            .filter_map(|(u, _)| rows.get(u))
            .max()
            .map_or(1, |r| r + 1);
        rows.insert(t, r);
    }
    let mut left: Vec<(usize, usize)> = jogs
        .iter()
        .filter(|(t, d)| d < t)
        .map(|(&t, &d)| (t, d))
        .collect();
    left.sort();
    for &(t, d) in &left {
        let r = left
            .iter()
            .filter(|&&(u, _)| u < t && u >= d)
            .filter_map(|(u, _)| rows.get(u))
            .max()
            .map_or(1, |r| r + 1);
        rows.insert(t, r);
    }
    rows
}

fn route(
    host: &LabeledGrid,
    target: &LabeledGrid,
    rows: usize,
    strands: &[Strand],
    jogs: &BTreeMap<usize, usize>,
) -> Result<RoutedModel> {
    if rows + target.cycles > host.cycles {
        return Err(Error::Precondition(format!(
            "{rows} routing rows plus {} target cycles exceed the host's {} cycles",
            target.cycles, host.cycles
        )));
    }
    let paths: Vec<&Vec<usize>> = host
        .transactions
        .iter()
        .flat_map(|t| t.paths.iter())
        .collect();
    let mut chord_at = HashMap::new();
    for (id, p) in paths.iter().enumerate() {
        let a = outer_position(host, p[0])?;
        let b = outer_position(host, p[p.len() - 1])?;
        chord_at.insert(a, (b, id));
        chord_at.insert(b, (a, id));
    }

    let mut owner = HashMap::new();
    let mut used = HashSet::new();
    let mut disks = Vec::new();
    let mut ends = Vec::new();
    for (s, strand) in strands.iter().enumerate() {
        let pts = &strand.points;
        if pts.len() < 2 || pts.len() % 2 == 1 {
            return Err(Error::Invalid(format!(
                "strand {s} has {} points",
                pts.len()
            )));
        }
        for &p in pts {
            if !used.insert(p) {
                return Err(Error::Invalid(format!("outer position {p} used twice")));
            }
        }
        for pair in pts.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            let id = match chord_at.get(&a) {
                Some(&(o, id)) if o == b => id,
                _ => {
                    return Err(Error::Invalid(format!(
                        "no host chord joins positions {a} and {b}"
                    )))
                }
            };
            for &v in paths[id] {
                claim(&mut owner, v, s)?;
            }
        }
        for w in pts[1..pts.len() - 1].chunks(2) {
            disks.push((w[0].min(w[1]), w[0].max(w[1]), s));
        }
        ends.push((pts[0], s));
        ends.push((pts[pts.len() - 1], s));
    }

    let mut order: Vec<usize> = (0..disks.len()).collect();
    order.sort_by_key(|&d| disks[d].1 - disks[d].0);
    let mut level = vec![0; disks.len()];
    for (i, &d) in order.iter().enumerate() {
        let (lo, hi, s) = disks[d];
        let mut lv = 1;
        for &e in &order[..i] {
            let (l2, h2, _) = disks[e];
            if lo < l2 && h2 < hi {
                lv = lv.max(level[e] + 1);
            } else if (l2 < lo && lo < h2 && h2 < hi) || (lo < l2 && l2 < hi && hi < h2) {
                return Err(Error::Invalid(format!(
                    "detours [{lo}, {hi}] and [{l2}, {h2}] cross"
                )));
            }
        }
        level[d] = lv;
        let row = lv + 1;
        if row > rows {
            return Err(Error::Precondition(format!(
                "detour [{lo}, {hi}] needs outer row {row}, only {rows} available"
            )));
        }
        for r in 2..=row {
            claim(&mut owner, host.vertex(r, lo), s)?;
            claim(&mut owner, host.vertex(r, hi), s)?;
        }
        for c in lo..=hi {
            claim(&mut owner, host.vertex(row, c), s)?;
        }
    }

    let tops: HashSet<usize> = ends.iter().map(|e| e.0).collect();
    if let Some(t) = jogs.keys().find(|t| !tops.contains(t)) {
        return Err(Error::Invalid(format!(
            "jog at {t} does not start at a strand end"
        )));
    }
    let jrow = jog_rows(jogs);
    let mut bottoms = Vec::with_capacity(ends.len());
    for &(t, s) in &ends {
        let d = jogs.get(&t).copied().unwrap_or(t);
        if d == t {
            for i in 1..=rows {
                claim(&mut owner, host.vertex(i, t), s)?;
            }
        } else {
            let r = jrow[&t];
            if r > rows {
                return Err(Error::Precondition(format!(
                    "jog from {t} to {d} needs row {r}, only {rows} available"
                )));
            }
            for i in 1..=r {
                claim(&mut owner, host.vertex(i, t), s)?;
            }
            for c in t.min(d)..=t.max(d) {
                claim(&mut owner, host.vertex(r, c), s)?;
            }
            for i in r..=rows {
                claim(&mut owner, host.vertex(i, d), s)?;
            }
        }
        bottoms.push((d, s));
    }

    let mut chords = Vec::new();
    for p in target.transactions.iter().flat_map(|t| t.paths.iter()) {
        if p.len() != 2 {
            return Err(invalid_param("target transactions must be single edges"));
        }
        chords.push((outer_position(target, p[0])?, outer_position(target, p[1])?));
    }
    let mut e: Vec<usize> = chords.iter().flat_map(|&(a, b)| [a, b]).collect();
    e.sort_unstable();
    bottoms.sort_unstable();
    if e.len() != bottoms.len() || e.is_empty() {
        return Err(Error::Invalid(format!(
            "{} strand ends for {} target chord ends",
            bottoms.len(),
            e.len()
        )));
    }
    if bottoms.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Invalid("two strands end in the same column".into()));
    }
    let place: HashMap<usize, usize> = e.iter().zip(&bottoms).map(|(&x, &(_, s))| (x, s)).collect();
    let mut strand_owner = vec![None; strands.len()];
    for &(x, y) in &chords {
        if place[&x] != place[&y] {
            return Err(Error::Invalid(format!(
                "target chord ({x}, {y}) is not realised by one strand"
            )));
        }
        strand_owner[place[&x]] = Some(target.vertex(1, x));
    }

    let (nt, nh) = (target.length, host.length);
    let mut arcs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..e.len() {
        let (e0, b0) = (e[i], bottoms[i].0);
        let (mut e1, mut b1) = (e[(i + 1) % e.len()], bottoms[(i + 1) % e.len()].0);
        if i + 1 == e.len() {
            e1 += nt;
            b1 += nh;
        }
        let (gp, gc) = (e1 - e0 - 1, b1 - b0 - 1);
        if gc < gp {
            return Err(Error::Precondition(format!(
                "{gp} target positions after {e0} but only {gc} host columns after {b0}"
            )));
        }
        for q in 0..=gp {
            let cols = if q < gp {
                vec![wrap(b0 + q, nh)]
            } else {
                (b0 + gp..b1).map(|c| wrap(c, nh)).collect()
            };
            arcs.insert(wrap(e0 + q, nt), cols);
        }
    }

    let mut sets: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for i in 1..=target.cycles {
        for (&p, cols) in &arcs {
            let set = sets.entry(target.vertex(i, p)).or_default();
            set.extend(cols.iter().map(|&c| host.vertex(rows + i, c)));
        }
    }
    let mut per_strand = vec![VertexSet::new(); strands.len()];
    for (&v, &s) in &owner {
        if host.coord.get(&v).is_some_and(|&(r, _)| r > rows) {
            continue;
        }
        per_strand[s].insert(v);
        let x = strand_owner[s].expect("every strand realises a chord");
        sets.get_mut(&x).expect("outer target vertex").insert(v);
    }
    let model = MinorModel {
        pattern: target.graph.clone(),
        host: host.graph.clone(),
        branch_sets: sets,
        roots: None,
    };
    model.validate()?;

    let mut steps: Vec<RoutingStep> = Vec::new();
    for (s, strand) in strands.iter().enumerate() {
        let i = match steps.iter().position(|st| st.action == strand.label) {
            Some(i) => i,
            None => {
                steps.push(RoutingStep {
                    action: strand.label.clone(),
                    strands: 0,
                    cycles: Vec::new(),
                    positions: Vec::new(),
                    vertices: VertexSet::new(),
                });
                steps.len() - 1
            }
        };
        let st = &mut steps[i];
        st.strands += 1;
        st.positions.extend(&strand.points);
        st.vertices.extend(&per_strand[s]);
    }
    for st in &mut steps {
        st.positions.sort_unstable();
        let cycles: BTreeSet<usize> = st
            .vertices
            .iter()
            .filter_map(|v| host.coord.get(v))
            .map(|c| c.0)
            .collect();
        st.cycles = cycles.into_iter().collect();
    }
    Ok(RoutedModel {
        model,
        step_log: steps,
    })
}

#[derive(Clone, Copy, Debug)]
enum Block {
    Handle(usize),
    Crosscap(usize),
}

/// A bundle of parallel strands through abstract points; `width` is in units of `k`.
struct Ribbon {
    label: &'static str,
    width: usize,
    points: &'static [usize],
}

/// Abstract chord `(block, bundle, j)` and side for every abstract point.
fn abstract_chords(blocks: &[Block]) -> HashMap<usize, ((usize, usize, usize), usize)> {
    let mut at = HashMap::new();
    let mut off = 0;
    for (b, &block) in blocks.iter().enumerate() {
        match block {
            Block::Handle(a) => {
                for j in 1..=a {
                    at.insert(off + j, ((b, 0, j), 0));
                    at.insert(off + 3 * a + 1 - j, ((b, 0, j), 1));
                    at.insert(off + a + j, ((b, 1, j), 0));
                    at.insert(off + 4 * a + 1 - j, ((b, 1, j), 1));
                }
                off += 4 * a;
            }
            Block::Crosscap(x) => {
                for j in 1..=x {
                    at.insert(off + j, ((b, 0, j), 0));
                    at.insert(off + x + j, ((b, 0, j), 1));
                }
                off += 2 * x;
            }
        }
    }
    at
}

/// Outer positions `(low, high)` of a host transaction path.
fn chord_columns(host: &LabeledGrid, t: usize, idx: usize) -> Result<(usize, usize)> {
    let path = host.transactions[t]
        .paths
        .get(idx)
        .ok_or_else(|| Error::Precondition(format!("transaction {t} has no path {idx}")))?;
    Ok((
        outer_position(host, path[0])?,
        outer_position(host, path[path.len() - 1])?,
    ))
}

/// Expands ribbons over the host transactions `first..first + blocks.len()`.
/// Each abstract chord is a group of consecutive host chords; a ribbon uses the
/// first members of each group. At a detour the order of the strands flips.
fn expand(
    host: &LabeledGrid,
    first: usize,
    blocks: &[Block],
    ribbons: &[Ribbon],
    k: usize,
) -> Result<Vec<Strand>> {
    let at = abstract_chords(blocks);
    let g = ribbons.iter().map(|r| r.width).max().unwrap_or(1) * k;
    let m = host.cycles;
    let member = |(b, bundle, j): (usize, usize, usize), s: usize| -> Result<(usize, usize)> {
        let (idx, cap) = match (blocks[b], bundle) {
            (Block::Handle(_), 0) => ((j - 1) * g + s - 1, m),
            (Block::Handle(_), _) => (m + (j - 1) * g + s - 1, 2 * m),
            (Block::Crosscap(_), _) => ((j - 1) * g + s - 1, 2 * m),
        };
        if idx >= cap {
            return Err(Error::Precondition(format!(
                "host of order {m} is too small for this routing"
            )));
        }
        chord_columns(host, first + b, idx)
    };
    let mut out = Vec::new();
    for r in ribbons {
        let w = r.width * k;
        let mut strands: Vec<Vec<usize>> = Vec::new();
        for (step, pair) in r.points.chunks(2).enumerate() {
            let (c0, side0) = at[&pair[0]];
            let (c1, side1) = at[&pair[1]];
            if c0 != c1 || side0 == side1 {
                return Err(Error::Invalid(format!(
                    "points {} and {} are not one chord",
                    pair[0], pair[1]
                )));
            }
            let mut members = (1..=w)
                .map(|s| member(c0, s).map(|(lo, hi)| if side0 == 0 { (lo, hi) } else { (hi, lo) }))
                .collect::<Result<Vec<_>>>()?;
            members.sort_unstable();
            if step == 0 {
                strands = members.iter().map(|&(a, b)| vec![a, b]).collect();
            } else {
                strands.sort_by_key(|p| p[p.len() - 1]);
                for (i, st) in strands.iter_mut().enumerate() {
                    let (a, b) = members[w - 1 - i];
                    st.push(a);
                    st.push(b);
                }
            }
        }
        out.extend(strands.into_iter().map(|points| Strand {
            label: r.label.to_string(),
            points,
        }));
    }
    Ok(out)
}

/// Straight strands over the first `k` chords of each handle bundle or the
/// first `2k` crosscap chords of transaction `t`.
fn carry(host: &LabeledGrid, t: usize, k: usize) -> Result<Vec<Strand>> {
    let m = host.cycles;
    let idx: Vec<usize> = match host.transactions[t].kind {
        Kind::Handle => (0..k).chain(m..m + k).collect(),
        Kind::Crosscap => (0..2 * k).collect(),
    };
    let label = format!(
        "carry transaction at position {}",
        host.transactions[t].position
    );
    idx.into_iter()
        .map(|i| {
            let (a, b) = chord_columns(host, t, i)?;
            Ok(Strand {
                label: label.clone(),
                points: vec![a, b],
            })
        })
        .collect()
}

const SWAP_XH: &[Ribbon] = &[
    Ribbon {
        label: "route handle bundle A",
        width: 1,
        points: &[1, 4, 3, 6, 7, 15],
    },
    Ribbon {
        label: "route handle bundle B",
        width: 1,
        points: &[12, 16],
    },
    Ribbon {
        label: "route crosscap bundle through the handle",
        width: 2,
        points: &[17, 11, 2, 5, 8, 14, 13, 9, 10, 18],
    },
];

const SWAP_HX: &[Ribbon] = &[
    Ribbon {
        label: "route handle bundle A",
        width: 1,
        points: &[3, 7],
    },
    Ribbon {
        label: "route handle bundle B",
        width: 1,
        points: &[4, 12, 11, 5, 6, 10, 13, 16, 15, 18],
    },
    Ribbon {
        label: "route crosscap bundle through the handle",
        width: 2,
        points: &[1, 9, 14, 17, 8, 2],
    },
];

const HANDLE_TO_CROSSCAPS: &[Ribbon] = &[
    Ribbon {
        label: "route first crosscap",
        width: 2,
        points: &[1, 12, 13, 8, 9, 4, 5, 16, 17, 20, 11, 2],
    },
    Ribbon {
        label: "route second crosscap",
        width: 2,
        points: &[3, 10, 21, 18, 15, 6],
    },
    Ribbon {
        label: "route third crosscap",
        width: 2,
        points: &[7, 14, 19, 22],
    },
];

/// Strands turning three consecutive crosscaps of order `18k` whose block
/// starts after column `o` into a handle followed by a crosscap.
fn crosscaps_to_handle_strands(o: usize, k: usize) -> Vec<Strand> {
    let mut out = Vec::new();
    let mk = |label: &str, pts: Vec<usize>| Strand {
        label: label.into(),
        points: pts.into_iter().map(|p| o + p).collect(),
    };
    for s in 1..=k {
        out.push(mk(
            "route handle bundle A",
            vec![s, 36 * k + s, 75 * k + 1 - s, 111 * k + 1 - s],
        ));
    }
    for t in 1..=k {
        let s = 2 * k + t;
        out.push(mk(
            "route handle bundle B",
            vec![75 * k + s, 111 * k + s, 149 * k + 1 - s, 185 * k + 1 - s],
        ));
    }
    for u in 1..=2 * k {
        out.push(mk(
            "untangle crosscap bundle",
            vec![
                185 * k + u,
                149 * k + u,
                182 * k + 1 - u,
                146 * k + 1 - u,
                114 * k + u,
                78 * k + u,
                110 * k + 1 - u,
                74 * k + 1 - u,
                37 * k + u,
                k + u,
                77 * k + 1 - u,
                113 * k + 1 - u,
                147 * k + u,
                183 * k + u,
            ],
        ));
    }
    out
}

fn check_order(order: usize, factor: usize) -> Result<usize> {
    if order == 0 || !order.is_multiple_of(factor) {
        return Err(invalid_param(format!(
            "order must be {factor}k, got {order}"
        )));
    }
    Ok(order / factor)
}

fn block_kinds(kinds: &[Kind], i: usize, len: usize) -> Result<&[Kind]> {
    if i < 2 || i - 2 + len > kinds.len() {
        return Err(Error::Precondition(format!(
            "positions {i}..{} are not all transactions",
            i + len - 1
        )));
    }
    Ok(&kinds[i - 2..i - 2 + len])
}

/// Runs a local routing over `span` host transactions starting at index
/// `first` and carries every other transaction straight through.
fn route_local(
    host: &LabeledGrid,
    target: &LabeledGrid,
    first: usize,
    span: usize,
    local: Vec<Strand>,
    k: usize,
) -> Result<RoutedModel> {
    let mut strands = Vec::new();
    for t in 0..host.transactions.len() {
        if t == first {
            strands.extend(local.iter().cloned());
        } else if !(first..first + span).contains(&t) {
            strands.extend(carry(host, t, k)?);
        }
    }
    route(host, target, host.cycles - k, &strands, &BTreeMap::new())
}

/// Swaps the crosscap and handle at block positions `i`, `i + 1` of the mixed
/// grid of order `order = 9k`, giving a model of the order-`k` grid.
pub fn swap_adjacent(kinds: &[Kind], order: usize, i: usize) -> Result<RoutedModel> {
    let k = check_order(order, 9)?;
    let pair = block_kinds(kinds, i, 2)?;
    let (blocks, plan) = match pair {
        [Kind::Crosscap, Kind::Handle] => ([Block::Crosscap(3), Block::Handle(3)], SWAP_XH),
        [Kind::Handle, Kind::Crosscap] => ([Block::Handle(3), Block::Crosscap(3)], SWAP_HX),
        _ => {
            return Err(Error::Precondition(format!(
                "positions {i} and {} must carry a crosscap and a handle",
                i + 1
            )))
        }
    };
    let host = mixed_surface_grid(order, kinds, &Subdivisions::None)?;
    let mut swapped = kinds.to_vec();
    swapped.swap(i - 2, i - 1);
    let target = mixed_surface_grid(k, &swapped, &Subdivisions::None)?;
    let local = expand(&host, i - 2, &blocks, plan, k)?;
    route_local(&host, &target, i - 2, 2, local, k)
}

/// Replaces the crosscaps at block positions `i..=i + 2` of the order-`18k`
/// grid by a handle followed by a crosscap, at order `k`.
pub fn crosscaps_to_handle(kinds: &[Kind], order: usize, i: usize) -> Result<RoutedModel> {
    let k = check_order(order, 18)?;
    if block_kinds(kinds, i, 3)?
        .iter()
        .any(|&x| x != Kind::Crosscap)
    {
        return Err(Error::Precondition(format!(
            "positions {i}..={} must all carry crosscaps",
            i + 2
        )));
    }
    let host = mixed_surface_grid(order, kinds, &Subdivisions::None)?;
    let mut out = kinds[..i - 2].to_vec();
    out.extend([Kind::Handle, Kind::Crosscap]);
    out.extend(&kinds[i + 1..]);
    let target = mixed_surface_grid(k, &out, &Subdivisions::None)?;
    let local = crosscaps_to_handle_strands(4 * order * (i - 1), k);
    route_local(&host, &target, i - 2, 3, local, k)
}

/// Replaces the handle at block position `i` and the crosscap at `i + 1` of
/// the order-`18k` grid by three crosscaps, at order `k`.
pub fn handle_to_crosscaps(kinds: &[Kind], order: usize, i: usize) -> Result<RoutedModel> {
    let k = check_order(order, 18)?;
    if block_kinds(kinds, i, 2)? != [Kind::Handle, Kind::Crosscap] {
        return Err(Error::Precondition(format!(
            "position {i} must carry a handle and position {} a crosscap",
            i + 1
        )));
    }
    let host = mixed_surface_grid(order, kinds, &Subdivisions::None)?;
    let mut out = kinds[..i - 2].to_vec();
    out.extend([Kind::Crosscap; 3]);
    out.extend(&kinds[i..]);
    let target = mixed_surface_grid(k, &out, &Subdivisions::None)?;
    let local = expand(
        &host,
        i - 2,
        &[Block::Handle(4), Block::Crosscap(3)],
        HANDLE_TO_CROSSCAPS,
        k,
    )?;
    route_local(&host, &target, i - 2, 2, local, k)
}

/// The annulus-free grid inside the full one: each column moves past the
/// annulus block, which is absorbed by the last column.
fn annulus_contract(h: usize, c: usize, k: usize) -> Result<RoutedModel> {
    let host = dyck_grid(h as isize, c, k)?;
    let pattern = dtilde(h, c, k)?;
    let cut = 4 * k;
    let mut sets: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for (&v, &(i, j)) in &pattern.coord {
        sets.entry(v).or_default().insert(host.vertex(i, j + cut));
    }
    let mut absorbed = VertexSet::new();
    for i in 1..=k {
        let block: Vec<usize> = (1..=cut).map(|j| host.vertex(i, j)).collect();
        absorbed.extend(&block);
        sets.get_mut(&pattern.vertex(i, pattern.length))
            .expect("base vertex")
            .extend(block);
    }
    let model = MinorModel {
        pattern: pattern.graph,
        host: host.graph,
        branch_sets: sets,
        roots: None,
    };
    model.validate()?;
    let step = RoutingStep {
        action: "contract annulus block into the last column".into(),
        strands: 0,
        cycles: (1..=k).collect(),
        positions: (1..=cut).collect(),
        vertices: absorbed,
    };
    Ok(RoutedModel {
        model,
        step_log: vec![step],
    })
}

/// The full grid of order `k` inside an annulus-free one. Transactions are
/// realised by their middle chords; the outer strands of the first and last
/// handles jog inwards so that a free stretch of `4k` columns opens up for
/// the annulus block. A lone crosscap leaves no room for jogs and uses a host
/// of order `3k` with straight strands instead.
fn annulus_regrow(h: usize, c: usize, k: usize) -> Result<RoutedModel> {
    let target = dyck_grid(h as isize, c, k)?;
    let lone = h == 0 && c == 1;
    let host = dtilde(h, c, if lone { 3 * k } else { 2 * k })?;
    let m = host.cycles;
    let last = host.transactions.len() - 1;
    let mut strands = Vec::new();
    let mut jogs = BTreeMap::new();
    for (t, tr) in host.transactions.iter().enumerate() {
        let label = format!("regrow transaction at position {}", tr.position);
        let idx: Vec<usize> = match tr.kind {
            Kind::Handle => (k..2 * k).chain(m + k..m + 2 * k).collect(),
            Kind::Crosscap if lone => (0..2 * k).collect(),
            Kind::Crosscap if t == 0 => (2 * k..4 * k).collect(),
            Kind::Crosscap => (0..2 * k).collect(),
        };
        for i in idx {
            let (a, b) = chord_columns(&host, t, i)?;
            if tr.kind == Kind::Handle {
                if t == 0 && i < m {
                    jogs.insert(a, a + k);
                }
                if t == last && i >= m {
                    jogs.insert(b, b - k);
                }
            }
            strands.push(Strand {
                label: label.clone(),
                points: vec![a, b],
            });
        }
    }
    route(&host, &target, m - k, &strands, &jogs)
}

/// Both annulus containments: the annulus-free grid of order `k` in the full
/// one, and the full grid of order `k` in an annulus-free one of order `2k`
/// (`3k` for a single crosscap).
pub fn annulus_embed(h: usize, c: usize, k: usize) -> Result<(RoutedModel, RoutedModel)> {
    if h + c == 0 {
        return Err(invalid_param(
            "the annulus-free grid needs (h, c) != (0, 0)",
        ));
    }
    if k < 1 {
        return Err(invalid_param("order must be at least 1"));
    }
    Ok((annulus_contract(h, c, k)?, annulus_regrow(h, c, k)?))
}

/// `x` copies of the annulus-free grid of order `y` inside the one of order
/// `xy`. Copy `t` lives on cycles `ty + 1 ..= ty + y` and reaches the outer
/// cycle through the cycles of the copies before it.
pub fn half_integral_packing(h: usize, c: usize, x: usize, y: usize) -> Result<PackingCertificate> {
    if x < 1 || y < 1 {
        return Err(invalid_param("x and y must be at least 1"));
    }
    let host = dtilde(h, c, x * y)?;
    let target = dtilde(h, c, y)?;
    let m = host.cycles;
    let mut copies = Vec::with_capacity(x);
    let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
    for t in 0..x {
        let label = format!("copy {}", t + 1);
        let mut strands = Vec::new();
        for (ti, tr) in host.transactions.iter().enumerate() {
            let idx: Vec<usize> = match tr.kind {
                Kind::Handle => (t * y..t * y + y).chain(m + t * y..m + t * y + y).collect(),
                Kind::Crosscap => (2 * t * y..2 * t * y + 2 * y).collect(),
            };
            for i in idx {
                let (a, b) = chord_columns(&host, ti, i)?;
                strands.push(Strand {
                    label: label.clone(),
                    points: vec![a, b],
                });
            }
        }
        let routed = route(&host, &target, t * y, &strands, &BTreeMap::new())?;
        for v in routed.model.branch_sets.values().flatten() {
            *multiplicity.entry(*v).or_default() += 1;
        }
        copies.push(routed.model);
    }
    let cert = PackingCertificate {
        copies,
        multiplicity,
    };
    if cert.max_multiplicity() > 2 {
        return Err(Error::Invalid(format!(
            "a host vertex lies in {} copies",
            cert.max_multiplicity()
        )));
    }
    Ok(cert)
}

/// Symbolic plan for reaching a Dyck-grid of order `k` from any mixed grid
/// with `h` handles and `c` crosscaps: swaps that gather the crosscaps, then
/// crosscap triples traded for handles.
pub fn plan_to_dyck(h: usize, c: usize, k: usize) -> Result<OrderBudget> {
    let g = 2 * h + c;
    let required_order = u32::try_from(2 * g)
        .ok()
        .and_then(|e| 162u128.checked_pow(e))
        .and_then(|f| f.checked_mul(k as u128))
        .ok_or_else(|| Error::TooLarge(format!("162^(2*{g}) * {k} overflows")))?;
    let trades = if c == 0 {
        0
    } else if c.is_multiple_of(2) {
        c / 2 - 1
    } else {
        c / 2
    };
    let mut step_plan = Vec::new();
    if h > 0 && c > 0 {
        step_plan.extend(std::iter::repeat_n(("swap_adjacent".to_string(), 9), c + h));
    }
    step_plan.extend(std::iter::repeat_n(
        ("crosscaps_to_handle".to_string(), 18),
        trades,
    ));
    Ok(OrderBudget {
        g,
        k,
        required_order,
        step_plan,
    })
}
