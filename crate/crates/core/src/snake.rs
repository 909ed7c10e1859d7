//! Snake graphs: chains of labeled square tiles, built from a crossing walk or
//! ingested from a raw JSON description.

use std::collections::{BTreeMap, HashMap};
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::cover::{ccw, Geodesic, Ideal};
use crate::error::{Error, Result};
use crate::surface::{EdgeLabel, IdealTriangulation, TaggedArc};

type Point = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    East,
    North,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileSide {
    South,
    East,
    North,
    West,
}

impl TileSide {
    pub const ALL: [TileSide; 4] = [TileSide::South, TileSide::East, TileSide::North, TileSide::West];

    pub fn letter(self) -> &'static str {
        match self {
            TileSide::South => "S",
            TileSide::East => "E",
            TileSide::North => "N",
            TileSide::West => "W",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelInfo {
    pub name: String,
    /// Boundary labels are dropped from nf weights and from the cluster part
    /// of pc weights.
    pub boundary: bool,
    /// The arc or boundary segment behind the label, for graphs built from a
    /// triangulation.
    pub origin: Option<EdgeLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    /// Lower-left grid corner.
    pub position: (i64, i64),
    pub square: usize,
    /// Edge ids in south, east, north, west order.
    pub edges: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: [usize; 2],
    pub label: usize,
    pub interior: bool,
}

/// A snake graph with edges numbered tile by tile in S, E, N, W order, each
/// shared edge counted once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeGraph {
    labels: Vec<LabelInfo>,
    tiles: Vec<Tile>,
    shape: Vec<Step>,
    edges: Vec<Edge>,
    vertices: Vec<(i64, i64)>,
}

/// Per-tile label data used to assemble a graph.
#[derive(Clone, Debug)]
pub struct TileLabels {
    pub square: usize,
    /// Labels in south, east, north, west order.
    pub sides: [usize; 4],
}

impl SnakeGraph {
    pub fn assemble(shape: Vec<Step>, tiles: Vec<TileLabels>, labels: Vec<LabelInfo>) -> Result<SnakeGraph> {
        let parse = |tile: Option<usize>, message: String| Error::Parse { tile, message };
        if tiles.is_empty() {
            return Err(parse(None, "a snake graph needs at least one tile".into()));
        }
        if shape.len() + 1 != tiles.len() {
            return Err(parse(None, format!("shape has {} steps for {} tiles", shape.len(), tiles.len())));
        }
        for (j, t) in tiles.iter().enumerate() {
            if t.square >= labels.len() || t.sides.iter().any(|&l| l >= labels.len()) {
                return Err(parse(Some(j), "label index out of range".into()));
            }
        }
        let mut vertex_ids: HashMap<(i64, i64), usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut vid = |p: (i64, i64)| {
            *vertex_ids.entry(p).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        let mut edges: Vec<Edge> = Vec::new();
        let mut out_tiles: Vec<Tile> = Vec::with_capacity(tiles.len());
        let mut pos = (0i64, 0i64);
        for (j, t) in tiles.iter().enumerate() {
            let (x, y) = pos;
            let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)].map(&mut vid);
            let [sw, se, ne, nw] = corners;
            let ends = [[sw, se], [se, ne], [nw, ne], [sw, nw]];
            let shared = if j == 0 {
                None
            } else {
                Some(match shape[j - 1] {
                    Step::North => (0usize, out_tiles[j - 1].edges[2]),
                    Step::East => (3usize, out_tiles[j - 1].edges[1]),
                })
            };
            let mut ids = [0usize; 4];
            for side in 0..4 {
                match shared {
                    Some((s, e)) if s == side => {
                        if edges[e].label != t.sides[side] {
                            return Err(parse(
                                Some(j),
                                format!(
                                    "glued {} edge labeled {:?} but previous tile says {:?}",
                                    TileSide::ALL[side].letter(),
                                    labels[t.sides[side]].name,
                                    labels[edges[e].label].name
                                ),
                            ));
                        }
                        edges[e].interior = true;
                        ids[side] = e;
                    }
                    _ => {
                        edges.push(Edge { ends: ends[side], label: t.sides[side], interior: false });
                        ids[side] = edges.len() - 1;
                    }
                }
            }
            out_tiles.push(Tile { position: pos, square: t.square, edges: ids });
            if j < shape.len() {
                pos = match shape[j] {
                    Step::East => (x + 1, y),
                    Step::North => (x, y + 1),
                };
            }
        }
        Ok(SnakeGraph { labels, tiles: out_tiles, shape, edges, vertices })
    }

    pub fn labels(&self) -> &[LabelInfo] {
        &self.labels
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn shape(&self) -> &[Step] {
        &self.shape
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn edge(&self, tile: usize, side: TileSide) -> usize {
        self.tiles[tile].edges[side as usize]
    }

    pub fn label_name(&self, label: usize) -> &str {
        &self.labels[label].name
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name == name)
    }

    /// Tile `j` is a corner when its two neighbours share a vertex.
    pub fn is_corner(&self, j: usize) -> bool {
        j > 0 && j + 1 < self.tiles.len() && self.shape[j - 1] != self.shape[j]
    }

    /// The (tile, side) pairs at which an edge appears.
    pub fn edge_sides(&self, edge: usize) -> Vec<(usize, TileSide)> {
        let mut out = Vec::new();
        for (j, t) in self.tiles.iter().enumerate() {
            for side in TileSide::ALL {
                if t.edges[side as usize] == edge {
                    out.push((j, side));
                }
            }
        }
        out
    }

    pub fn from_raw(raw: &RawSnakeGraph) -> Result<SnakeGraph> {
        let mut shape = Vec::new();
        for (i, c) in raw.shape.chars().enumerate() {
            shape.push(match c {
                'E' | 'e' => Step::East,
                'N' | 'n' => Step::North,
                _ => {
                    return Err(Error::Parse { tile: Some(i), message: format!("bad shape letter {c:?}") });
                }
            });
        }
        let mut names: Vec<String> = Vec::new();
        if let Some(order) = &raw.labels {
            for n in order {
                if names.contains(n) {
                    return Err(Error::Parse { tile: None, message: format!("label {n:?} listed twice") });
                }
                names.push(n.clone());
            }
        }
        let explicit = raw.labels.is_some();
        let mut index = |name: &str, tile: usize| -> Result<usize> {
            if let Some(i) = names.iter().position(|n| n == name) {
                return Ok(i);
            }
            if explicit {
                return Err(Error::Parse { tile: Some(tile), message: format!("label {name:?} missing from labels") });
            }
            names.push(name.to_string());
            Ok(names.len() - 1)
        };
        let mut tiles = Vec::new();
        for (j, t) in raw.tiles.iter().enumerate() {
            let square = index(&t.square, j)?;
            let sides = [index(&t.s, j)?, index(&t.e, j)?, index(&t.n, j)?, index(&t.w, j)?];
            tiles.push(TileLabels { square, sides });
        }
        for b in &raw.boundary_labels {
            if !names.contains(b) {
                return Err(Error::Parse { tile: None, message: format!("boundary label {b:?} never used") });
            }
        }
        let labels = names
            .into_iter()
            .map(|name| LabelInfo { boundary: raw.boundary_labels.contains(&name), name, origin: None })
            .collect();
        SnakeGraph::assemble(shape, tiles, labels)
    }

    pub fn to_raw(&self) -> RawSnakeGraph {
        let name = |l: usize| self.labels[l].name.clone();
        RawSnakeGraph {
            shape: self.shape.iter().map(|s| if *s == Step::East { 'E' } else { 'N' }).collect(),
            tiles: self
                .tiles
                .iter()
                .map(|t| RawTile {
                    square: name(t.square),
                    s: name(self.edges[t.edges[0]].label),
                    e: name(self.edges[t.edges[1]].label),
                    n: name(self.edges[t.edges[2]].label),
                    w: name(self.edges[t.edges[3]].label),
                })
                .collect(),
            boundary_labels: self.labels.iter().filter(|l| l.boundary).map(|l| l.name.clone()).collect(),
            labels: Some(self.labels.iter().map(|l| l.name.clone()).collect()),
        }
    }

    /// A boundary edge of the first or last tile whose label occurs exactly
    /// once in the graph.
    pub fn unique_end_label(&self) -> Option<usize> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.label).or_default() += 1;
        }
        let last = self.tiles.len() - 1;
        [0, last]
            .into_iter()
            .flat_map(|j| self.tiles[j].edges)
            .find(|&e| !self.edges[e].interior && counts[&self.edges[e].label] == 1)
    }

    /// Locates the two copies of the radius graph at the ends of a loop graph.
    pub fn radius_end_subgraphs(&self, d: usize) -> Result<RadiusEndSubgraphs> {
        let t = self.tiles.len();
        if 2 * d > t {
            return Err(Error::MalformedLoop { d, tiles: t });
        }
        let first_copy = 0..d;
        let second_copy = t - d..t;
        if d == 0 {
            return Ok(RadiusEndSubgraphs {
                d,
                first_copy,
                second_copy,
                correspondence: vec![],
                h_correspondence: vec![],
            });
        }
        let twice = |p: (i64, i64)| (2 * p.0, 2 * p.1);
        let center = |j: usize| {
            let (x, y) = self.tiles[j].position;
            (2 * x + 1, 2 * y + 1)
        };
        let first_edges: Vec<usize> = self.copy_edges(first_copy.clone());
        let second_edges: Vec<usize> = self.copy_edges(second_copy.clone());
        let key = |e: usize, f: &dyn Fn((i64, i64)) -> (i64, i64)| {
            let [a, b] = self.edges[e].ends.map(|v| f(twice(self.vertices[v])));
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let first_by_key: HashMap<(Point, Point), usize> = first_edges.iter().map(|&e| (key(e, &|p| p), e)).collect();
        let maps: [fn(Point) -> Point; 8] = [
            |(u, v)| (u, v),
            |(u, v)| (-u, v),
            |(u, v)| (u, -v),
            |(u, v)| (-u, -v),
            |(u, v)| (v, u),
            |(u, v)| (-v, u),
            |(u, v)| (v, -u),
            |(u, v)| (-v, -u),
        ];
        'maps: for a in maps {
            let c = a(center(t - 1));
            let c0 = center(0);
            let shift = (c0.0 - c.0, c0.1 - c.1);
            let g = |p: (i64, i64)| {
                let q = a(p);
                (q.0 + shift.0, q.1 + shift.1)
            };
            for i in 0..d {
                if g(center(t - 1 - i)) != center(i) || self.tiles[t - 1 - i].square != self.tiles[i].square {
                    continue 'maps;
                }
            }
            let mut correspondence = Vec::new();
            for &e2 in &second_edges {
                match first_by_key.get(&key(e2, &g)) {
                    Some(&e1) if self.edges[e1].label == self.edges[e2].label => correspondence.push((e1, e2)),
                    _ => continue 'maps,
                }
            }
            correspondence.sort();
            let is_radius = |e: usize| {
                matches!(self.labels[self.edges[e].label].origin, Some(EdgeLabel::Arc(TaggedArc::Radius { .. })))
            };
            let h_correspondence =
                correspondence.iter().copied().filter(|&(e1, e2)| !is_radius(e1) && !is_radius(e2)).collect();
            return Ok(RadiusEndSubgraphs { d, first_copy, second_copy, correspondence, h_correspondence });
        }
        Err(Error::Integrity(format!("end copies of size {d} are not label-isomorphic")))
    }

    pub(crate) fn copy_edges(&self, tiles: Range<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = tiles.flat_map(|j| self.tiles[j].edges).collect();
        out.sort();
        out.dedup();
        out
    }

    pub(crate) fn copy_vertices(&self, tiles: Range<usize>) -> Vec<usize> {
        let mut out: Vec<usize> = tiles.flat_map(|j| self.tiles[j].edges).flat_map(|e| self.edges[e].ends).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadiusEndSubgraphs {
    pub d: usize,
    pub first_copy: Range<usize>,
    pub second_copy: Range<usize>,
    /// Label-preserving edge correspondence `(first, second)`.
    pub correspondence: Vec<(usize, usize)>,
    /// The same correspondence with radius-labeled edges removed.
    pub h_correspondence: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawTile {
    pub square: String,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "E")]
    pub e: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "W")]
    pub w: String,
}

/// JSON form of a snake graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSnakeGraph {
    pub shape: String,
    pub tiles: Vec<RawTile>,
    #[serde(default)]
    pub boundary_labels: Vec<String>,
    /// Optional coordinate order for weight vectors; first-appearance order
    /// otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// Label table for graphs over a triangulation: arcs of `T°`, then all
/// boundary segments.
pub(crate) fn surface_labels(t: &IdealTriangulation) -> Vec<LabelInfo> {
    let mut labels: Vec<LabelInfo> = t
        .arcs()
        .iter()
        .map(|a| LabelInfo { name: a.to_string(), boundary: false, origin: Some(EdgeLabel::Arc(*a)) })
        .collect();
    labels.extend((0..t.surface().m()).map(|i| LabelInfo {
        name: EdgeLabel::Boundary(i).to_string(),
        boundary: true,
        origin: Some(EdgeLabel::Boundary(i)),
    }));
    labels
}

/// The snake graph of `gamma` (a plain arc or a loop) over `t`.
pub fn build_snake_graph(t: &IdealTriangulation, gamma: &TaggedArc) -> Result<SnakeGraph> {
    let walk = t.walk(&gamma.underlying())?;
    let lifts = &walk.crossed;
    if lifts.is_empty() {
        return Err(Error::NoCrossing(gamma.to_string()));
    }
    let n = lifts.len();
    let shared = |a: Geodesic, b: Geodesic| -> Result<Ideal> {
        let common: Vec<Ideal> = [a.lo, a.hi].into_iter().filter(|v| b.has(*v)).collect();
        match common.as_slice() {
            [v] => Ok(*v),
            _ => Err(Error::Integrity(format!("consecutive crossings {a:?}, {b:?} do not share one endpoint"))),
        }
    };
    let apex = |j: usize| -> Result<Ideal> {
        if j + 1 < n {
            Ok(lifts[j + 1].other(shared(lifts[j], lifts[j + 1])?))
        } else {
            Ok(walk.end)
        }
    };

    let labels = surface_labels(t);
    let index: HashMap<EdgeLabel, usize> =
        labels.iter().enumerate().map(|(i, l)| (l.origin.expect("surface label"), i)).collect();
    let label = |x: Ideal, y: Ideal| -> Result<usize> { Ok(index[&t.label_of(Geodesic::new(x, y))?]) };

    // corners: SW, SE, NE, NW
    let mut corners: Vec<[Ideal; 4]> = Vec::with_capacity(n);
    let mut shape = Vec::with_capacity(n - 1);
    let s0 = apex(0)?;
    let (u, v) = (lifts[0].lo, lifts[0].hi);
    let (se, nw) = if ccw(u, s0, v) { (u, v) } else { (v, u) };
    corners.push([walk.start, se, s0, nw]);
    for j in 0..n - 1 {
        let [_, se, ne, nw] = corners[j];
        let next = lifts[j + 1];
        let s = apex(j + 1)?;
        if next.has(se) && next.has(ne) {
            shape.push(Step::North);
            corners.push([nw, ne, s, se]);
        } else if next.has(nw) && next.has(ne) {
            shape.push(Step::East);
            corners.push([se, nw, s, ne]);
        } else {
            return Err(Error::Integrity(format!("crossing {} does not follow crossing {}", j + 1, j)));
        }
    }
    let mut tiles = Vec::with_capacity(n);
    for c in &corners {
        let [sw, se, ne, nw] = *c;
        tiles.push(TileLabels {
            square: label(nw, se)?,
            sides: [label(sw, se)?, label(se, ne)?, label(nw, ne)?, label(sw, nw)?],
        });
    }
    SnakeGraph::assemble(shape, tiles, labels)
}
