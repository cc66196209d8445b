//! Surfaces as (handles, crosscaps) pairs, their containment order, obstruction sets
//! and prevalent surfaces.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};

/// A surface in canonical form, or the empty surface.
///
/// Canonical forms are `(h, 0)` (orientable), `(h, 1)` (non-orientable, odd
/// genus) and `(h, 2)` (non-orientable, even genus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    Empty,
    Canonical { h: usize, c: usize },
}

use Surface::{Canonical, Empty};

impl Surface {
    pub const SPHERE: Surface = Canonical { h: 0, c: 0 };
    pub const TORUS: Surface = Canonical { h: 1, c: 0 };
    pub const PROJECTIVE_PLANE: Surface = Canonical { h: 0, c: 1 };
    pub const KLEIN_BOTTLE: Surface = Canonical { h: 0, c: 2 };

    /// Canonical form of the surface with `h` handles and `c` crosscaps.
    pub fn normalize(h: usize, c: usize) -> Surface {
        if c == 0 {
            return Canonical { h, c: 0 };
        }
        let g = 2 * h + c;
        if g % 2 == 1 {
            Canonical {
                h: (g - 1) / 2,
                c: 1,
            }
        } else {
            Canonical { h: g / 2 - 1, c: 2 }
        }
    }

    /// Orientable surface of Euler genus `2h`.
    pub fn orientable(h: usize) -> Surface {
        Canonical { h, c: 0 }
    }

    /// Non-orientable surface of Euler genus `g ≥ 1`.
    pub fn nonorientable(g: usize) -> Surface {
        assert!(g >= 1, "non-orientable genus starts at 1");
        Surface::normalize(0, g)
    }

    /// Euler genus; `-1` for the empty surface.
    pub fn euler_genus(self) -> i64 {
        match self {
            Empty => -1,
            Canonical { h, c } => (2 * h + c) as i64,
        }
    }

    pub fn is_orientable(self) -> bool {
        matches!(self, Canonical { c: 0, .. })
    }

    /// Whether `other` is obtained from `self` by adding handles and crosscaps.
    pub fn contained_in(self, other: Surface) -> bool {
        match (self, other) {
            (Empty, _) => true,
            (_, Empty) => false,
            (Canonical { h: a, c: 0 }, Canonical { h: b, c: 0 }) => a <= b,
            (Canonical { c: 0, .. }, _) => other.euler_genus() > self.euler_genus(),
            (_, Canonical { c: 0, .. }) => false,
            _ => self.euler_genus() <= other.euler_genus(),
        }
    }

    /// Sort key: orientable surfaces first, then by Euler genus.
    fn key(self) -> (bool, i64) {
        (self != Empty && !self.is_orientable(), self.euler_genus())
    }
}

impl Ord for Surface {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Surface {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Empty => write!(f, "empty"),
            Surface::SPHERE => write!(f, "sphere"),
            Surface::TORUS => write!(f, "torus"),
            Surface::PROJECTIVE_PLANE => write!(f, "projective-plane"),
            Surface::KLEIN_BOTTLE => write!(f, "klein-bottle"),
            Canonical { h, c } => write!(f, "({h},{c})"),
        }
    }
}

impl FromStr for Surface {
    type Err = Error;

    /// Accepts the aliases printed by `Display` and raw pairs `(h,c)`, which are normalized.
    fn from_str(s: &str) -> Result<Surface> {
        let t = s.trim();
        match t {
            "empty" => return Ok(Empty),
            "sphere" => return Ok(Surface::SPHERE),
            "torus" => return Ok(Surface::TORUS),
            "projective-plane" => return Ok(Surface::PROJECTIVE_PLANE),
            "klein-bottle" => return Ok(Surface::KLEIN_BOTTLE),
            _ => {}
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| invalid_param(format!("unknown surface `{t}`")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || invalid_param(format!("unknown surface `{t}`"));
        if parts.len() != 2 {
            return Err(bad());
        }
        let h: i64 = parts[0].parse().map_err(|_| bad())?;
        let c: usize = parts[1].parse().map_err(|_| bad())?;
        match (h, c) {
            (-1, 2) => Ok(Surface::SPHERE),
            (h, c) if h >= 0 => Ok(Surface::normalize(h as usize, c)),
            _ => Err(bad()),
        }
    }
}

/// A finite set of surfaces, iterated orientable-first, then by Euler genus.
pub type SurfaceSet = BTreeSet<Surface>;

/// Every surface of Euler genus at most `g` (including the empty surface).
pub fn surfaces_up_to(g: i64) -> SurfaceSet {
    let mut out = SurfaceSet::from([Empty]);
    for genus in 0..=g.max(-1) {
        let genus = genus as usize;
        if genus.is_multiple_of(2) {
            out.insert(Surface::orientable(genus / 2));
        }
        if genus >= 1 {
            out.insert(Surface::nonorientable(genus));
        }
    }
    out
}

/// All surfaces contained in `s`.
pub fn down_closure(s: Surface) -> SurfaceSet {
    surfaces_up_to(s.euler_genus())
        .into_iter()
        .filter(|t| t.contained_in(s))
        .collect()
}

fn max_genus(s: &SurfaceSet) -> i64 {
    s.iter().map(|x| x.euler_genus()).max().unwrap_or(-1)
}

/// Checks that `s` is closed under containment, returning a witness pair `(member, missing)`.
pub fn check_closed(s: &SurfaceSet) -> std::result::Result<(), (Surface, Surface)> {
    for &a in s {
        for b in down_closure(a) {
            if !s.contains(&b) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

fn require_closed(s: &SurfaceSet) -> Result<()> {
    check_closed(s).map_err(|(a, b)| {
        Error::Precondition(format!(
            "surface set is not closed: {a} is present but {b} is not"
        ))
    })
}

/// Minimal surfaces outside the closed set `s`.
pub fn sobs(s: &SurfaceSet) -> Result<SurfaceSet> {
    require_closed(s)?;
    Ok(surfaces_up_to(max_genus(s) + 2)
        .into_iter()
        .filter(|x| !s.contains(x))
        .filter(|&x| {
            down_closure(x)
                .into_iter()
                .all(|y| y == x || s.contains(&y))
        })
        .collect())
}

/// The maximal surface contained in every obstruction of `s`.
pub fn prevalent(s: &SurfaceSet) -> Result<Surface> {
    let obs = sobs(s)?;
    let bound = obs.iter().map(|x| x.euler_genus()).min().unwrap_or(-1);
    let common: Vec<Surface> = surfaces_up_to(bound)
        .into_iter()
        .filter(|&x| obs.iter().all(|&o| x.contained_in(o)))
        .collect();
    let maximal: Vec<Surface> = common
        .iter()
        .copied()
        .filter(|&x| common.iter().all(|&y| y == x || !x.contained_in(y)))
        .collect();
    match maximal.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Invalid(format!(
            "no unique prevalent surface among {maximal:?}"
        ))),
    }
}

/// The surfaces of Euler genus at most `g` (only the empty surface for `g = -1`).
pub fn genus_class(g: i64) -> Result<SurfaceSet> {
    if g < -1 {
        return Err(invalid_param(format!("genus {g} < -1")));
    }
    Ok(surfaces_up_to(g))
}

/// DOT drawing of the containment order's Hasse diagram up to genus `g`.
pub fn hasse_dot(g: i64) -> String {
    let all: Vec<Surface> = surfaces_up_to(g).into_iter().collect();
    let mut out = String::from("digraph surfaces {\n  rankdir=BT;\n");
    for s in &all {
        out.push_str(&format!(
            "  \"{s}\" [label=\"{s}\\ng={}\"];\n",
            s.euler_genus()
        ));
    }
    for &a in &all {
        for &b in &all {
            if a == b || !a.contained_in(b) {
                continue;
            }
            let covered = all
                .iter()
                .any(|&m| m != a && m != b && a.contained_in(m) && m.contained_in(b));
            if !covered {
                out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
