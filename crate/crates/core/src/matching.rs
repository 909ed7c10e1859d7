//! Perfect matchings of snake graphs, their weights and lifted incidence
//! vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snake::{RadiusEndSubgraphs, SnakeGraph, TileSide};

/// Coefficient mode: boundary frozen variables, no frozen variables, or
/// principal coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Bd,
    Nf,
    Pc,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Bd, Mode::Nf, Mode::Pc];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Bd => "bd",
            Mode::Nf => "nf",
            Mode::Pc => "pc",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bd" => Ok(Mode::Bd),
            "nf" => Ok(Mode::Nf),
            "pc" => Ok(Mode::Pc),
            _ => Err(format!("unknown mode {s:?}; expected bd, nf or pc")),
        }
    }
}

/// A perfect matching, stored as sorted edge ids, together with the tiles
/// enclosed by its symmetric difference with the bottom matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    edges: Vec<usize>,
    enclosed: Vec<usize>,
}

impl PerfectMatching {
    /// Validates `edges` as a perfect matching of `g`.
    pub fn new(g: &SnakeGraph, mut edges: Vec<usize>) -> Result<PerfectMatching> {
        edges.sort_unstable();
        edges.dedup();
        let mut covered = vec![0u8; g.vertices().len()];
        for &e in &edges {
            let edge = g.edges().get(e).ok_or_else(|| Error::Contract(format!("no edge {e}")))?;
            for v in edge.ends {
                covered[v] += 1;
            }
        }
        if covered.iter().any(|&c| c != 1) {
            return Err(Error::Contract("edge set is not a perfect matching".into()));
        }
        let enclosed = enclosed_tiles(g, &edges);
        Ok(PerfectMatching { edges, enclosed })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// `C(M)`: tiles enclosed by `M ⊖ M₀`.
    pub fn enclosed_tiles(&self) -> &[usize] {
        &self.enclosed
    }

    /// `(tile, side)` for each edge, using the first tile the edge belongs to.
    pub fn sides(&self, g: &SnakeGraph) -> Vec<(usize, TileSide)> {
        self.edges.iter().map(|&e| g.edge_sides(e)[0]).collect()
    }
}

/// All perfect matchings in lexicographic order of their edge sets.
pub fn enumerate_matchings(g: &SnakeGraph) -> Vec<PerfectMatching> {
    let n = g.vertices().len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        let [a, b] = e.ends;
        adj[a].push((i, b));
        adj[b].push((i, a));
    }
    fn rec(
        adj: &[Vec<(usize, usize)>],
        covered: &mut [bool],
        from: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
            out.push(chosen.clone());
            return;
        };
        covered[v] = true;
        for &(e, w) in &adj[v] {
            if !covered[w] {
                covered[w] = true;
                chosen.push(e);
                rec(adj, covered, v + 1, chosen, out);
                chosen.pop();
                covered[w] = false;
            }
        }
        covered[v] = false;
    }
    let mut raw = Vec::new();
    rec(&adj, &mut vec![false; n], 0, &mut Vec::new(), &mut raw);
    let bottom = bottom_edges(g);
    let mut out: Vec<PerfectMatching> = raw
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let enclosed = enclosed_relative(g, &edges, &bottom);
            PerfectMatching { edges, enclosed }
        })
        .collect();
    out.sort();
    out
}

fn bottom_edges(g: &SnakeGraph) -> Vec<usize> {
    let n = g.vertices().len();
    let mut ring: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        if !e.interior {
            for v in e.ends {
                ring[v].push(i);
            }
        }
    }
    let first = g.edge(0, TileSide::South);
    let mut out = vec![first];
    let [start, mut v] = g.edges()[first].ends;
    let mut prev = first;
    let mut take = false;
    while v != start {
        let next = ring[v].iter().copied().find(|&e| e != prev).expect("boundary is a cycle");
        if take {
            out.push(next);
        }
        take = !take;
        let [a, b] = g.edges()[next].ends;
        v = if a == v { b } else { a };
        prev = next;
    }
    out.sort_unstable();
    out
}

/// The bottom matching `M₀`: the boundary matching containing the south edge
/// of the first tile.
pub fn bottom_matching(g: &SnakeGraph) -> PerfectMatching {
    PerfectMatching { edges: bottom_edges(g), enclosed: Vec::new() }
}

/// Tiles whose centers lie inside the cycles of `edges ⊖ M₀`.
pub fn enclosed_tiles(g: &SnakeGraph, edges: &[usize]) -> Vec<usize> {
    enclosed_relative(g, edges, &bottom_edges(g))
}

fn enclosed_relative(g: &SnakeGraph, edges: &[usize], bottom: &[usize]) -> Vec<usize> {
    let diff: Vec<usize> = edges
        .iter()
        .filter(|e| bottom.binary_search(e).is_err())
        .chain(bottom.iter().filter(|e| edges.binary_search(e).is_err()))
        .copied()
        .collect();
    let verts = g.vertices();
    let verticals: Vec<(i64, i64)> = diff
        .iter()
        .filter_map(|&e| {
            let [a, b] = g.edges()[e].ends;
            let (pa, pb) = (verts[a], verts[b]);
            (pa.0 == pb.0).then(|| (pa.0, pa.1.min(pb.1)))
        })
        .collect();
    g.tiles()
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let (x, y) = t.position;
            verticals.iter().filter(|&&(vx, vy)| vx > x && vy == y).count() % 2 == 1
        })
        .map(|(j, _)| j)
        .collect()
}

/// Exponent vector of a matching weight in a given mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightVector {
    pub mode: Mode,
    pub coords: Vec<i64>,
}

/// Coordinate names of weight vectors: every label for bd, non-boundary
/// labels for nf, and non-boundary labels followed by their `y` copies for pc.
pub fn weight_coordinates(g: &SnakeGraph, mode: Mode) -> Vec<String> {
    let cluster = g.labels().iter().filter(|l| !l.boundary).map(|l| l.name.clone());
    match mode {
        Mode::Bd => g.labels().iter().map(|l| l.name.clone()).collect(),
        Mode::Nf => cluster.collect(),
        Mode::Pc => {
            let c: Vec<String> = cluster.collect();
            let y = c.iter().map(|n| format!("y:{n}"));
            c.clone().into_iter().chain(y).collect()
        }
    }
}

/// Maps each label to its coordinate in the cluster block, if any.
pub(crate) fn cluster_slots(g: &SnakeGraph, mode: Mode) -> Vec<Option<usize>> {
    let mut next = 0;
    g.labels()
        .iter()
        .map(|l| {
            if mode == Mode::Bd || !l.boundary {
                next += 1;
                Some(next - 1)
            } else {
                None
            }
        })
        .collect()
}

/// Weight of the edges `edges` and enclosed tiles `tiles`.
pub(crate) fn weight_of(g: &SnakeGraph, mode: Mode, edges: &[usize], tiles: &[usize]) -> Vec<i64> {
    let slots = cluster_slots(g, mode);
    let width = slots.iter().flatten().count();
    let mut coords = vec![0i64; if mode == Mode::Pc { 2 * width } else { width }];
    for &e in edges {
        if let Some(s) = slots[g.edges()[e].label] {
            coords[s] += 1;
        }
    }
    if mode == Mode::Pc {
        for &j in tiles {
            if let Some(s) = slots[g.tiles()[j].square] {
                coords[width + s] += 1;
            }
        }
    }
    coords
}

pub fn weight_vector(g: &SnakeGraph, m: &PerfectMatching, mode: Mode) -> WeightVector {
    WeightVector { mode, coords: weight_of(g, mode, &m.edges, &m.enclosed) }
}

/// `χ_M` over distinct edges, optionally followed by `χ_{C(M)}` over tiles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LiftedVector {
    pub plain: Vec<u8>,
    pub squares: Option<Vec<u8>>,
}

impl LiftedVector {
    pub fn to_vec(&self) -> Vec<i64> {
        self.plain.iter().chain(self.squares.iter().flatten()).map(|&x| x as i64).collect()
    }
}

pub fn lifted_vector(g: &SnakeGraph, m: &PerfectMatching, pc: bool) -> LiftedVector {
    let mut plain = vec![0u8; g.edges().len()];
    for &e in &m.edges {
        plain[e] = 1;
    }
    let squares = pc.then(|| {
        let mut s = vec![0u8; g.tile_count()];
        for &j in &m.enclosed {
            s[j] = 1;
        }
        s
    });
    LiftedVector { plain, squares }
}

/// Matchings whose restrictions to the two radius-free end copies agree under
/// the copies' correspondence.
pub fn rho_symmetric_matchings(ends: &RadiusEndSubgraphs, matchings: &[PerfectMatching]) -> Vec<PerfectMatching> {
    matchings.iter().filter(|m| is_rho_symmetric(ends, m)).cloned().collect()
}

pub fn is_rho_symmetric(ends: &RadiusEndSubgraphs, m: &PerfectMatching) -> bool {
    ends.h_correspondence.iter().all(|&(a, b)| m.contains(a) == m.contains(b))
}

/// `owt(M)`: the weight of `M` with the contribution of a perfectly matched
/// end copy removed.
pub fn reduced_weight_vector(
    g: &SnakeGraph,
    ends: &RadiusEndSubgraphs,
    m: &PerfectMatching,
    mode: Mode,
) -> Result<WeightVector> {
    let full = weight_of(g, mode, &m.edges, &m.enclosed);
    if ends.d == 0 {
        return Ok(WeightVector { mode, coords: full });
    }
    let mut candidates = Vec::new();
    for copy in [ends.first_copy.clone(), ends.second_copy.clone()] {
        let copy_edges = g.copy_edges(copy.clone());
        let inside: Vec<usize> = m.edges.iter().copied().filter(|e| copy_edges.binary_search(e).is_ok()).collect();
        let covered: usize = inside.len() * 2;
        if covered != g.copy_vertices(copy.clone()).len() {
            continue;
        }
        let tiles: Vec<usize> = m.enclosed.iter().copied().filter(|j| copy.contains(j)).collect();
        let part = weight_of(g, mode, &inside, &tiles);
        candidates.push(full.iter().zip(&part).map(|(a, b)| a - b).collect::<Vec<i64>>());
    }
    match candidates.as_slice() {
        [] => Err(Error::Integrity("neither end copy is perfectly matched".into())),
        [one] => Ok(WeightVector { mode, coords: one.clone() }),
        [a, b] if a == b => Ok(WeightVector { mode, coords: a.clone() }),
        _ => Err(Error::Integrity("reduced weight depends on the end copy chosen".into())),
    }
}
