//! Exact V-polytopes: membership, lattice points, vertices, and the Newton
//! and matching polytopes built from snake graphs.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::lp::{feasible, maximize, LpOutcome, Q};
use crate::matching::{cluster_slots, enumerate_matchings, lifted_vector, Mode, PerfectMatching};
use crate::snake::{SnakeGraph, TileSide};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_q(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Coordinates on which lattice points are enumerated: either the integer
/// lattice of the affine hull (all generators integral) or the ambient one.
#[derive(Debug)]
struct Frame {
    origin: Vec<BigInt>,
    /// Columns `d × r` mapping reduced coordinates back to ambient ones.
    back: Vec<Vec<BigInt>>,
    reduced: Vec<Vec<Q>>,
}

/// The convex hull of finitely many rational points.
#[derive(Debug, Serialize)]
pub struct RationalPolytope {
    dim: usize,
    #[serde(serialize_with = "ser_points")]
    generators: Vec<Vec<Q>>,
    #[serde(skip)]
    frame: OnceLock<Option<Frame>>,
    #[serde(skip)]
    lattice: OnceLock<Vec<Vec<i64>>>,
}

fn ser_points<S: serde::Serializer>(v: &[Vec<Q>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl Clone for RationalPolytope {
    fn clone(&self) -> Self {
        RationalPolytope::build(self.dim, self.generators.clone())
    }
}

impl RationalPolytope {
    fn build(dim: usize, generators: Vec<Vec<Q>>) -> RationalPolytope {
        RationalPolytope { dim, generators, frame: OnceLock::new(), lattice: OnceLock::new() }
    }

    /// Duplicate generators are dropped, keeping first occurrences.
    pub fn new(dim: usize, generators: Vec<Vec<Q>>) -> Result<RationalPolytope> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::Dimension { expected: dim, got: g.len() });
            }
            if seen.insert(g.clone()) {
                gens.push(g);
            }
        }
        Ok(RationalPolytope::build(dim, gens))
    }

    pub fn from_integer_points(points: &[Vec<i64>]) -> Result<RationalPolytope> {
        let dim = points.first().ok_or(Error::EmptyGenerators)?.len();
        RationalPolytope::new(dim, points.iter().map(|p| to_q(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    fn hull_system(gens: &[&Vec<Q>], point: &[Q]) -> (Vec<Vec<Q>>, Vec<Q>) {
        let d = point.len();
        let mut a: Vec<Vec<Q>> = (0..d).map(|j| gens.iter().map(|g| g[j].clone()).collect()).collect();
        a.push(vec![Q::one(); gens.len()]);
        let mut b = point.to_vec();
        b.push(Q::one());
        (a, b)
    }

    /// Exact membership by linear feasibility.
    pub fn contains_point(&self, point: &[Q]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::Dimension { expected: self.dim, got: point.len() });
        }
        let gens: Vec<&Vec<Q>> = self.generators.iter().collect();
        let (a, b) = Self::hull_system(&gens, point);
        Ok(feasible(&a, &b, gens.len()))
    }

    pub fn contains_integer_point(&self, point: &[i64]) -> Result<bool> {
        self.contains_point(&to_q(point))
    }

    /// Generators that are not in the hull of the others.
    pub fn vertices(&self) -> Vec<Vec<Q>> {
        (0..self.generators.len())
            .filter(|&i| {
                let others: Vec<&Vec<Q>> =
                    self.generators.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
                if others.is_empty() {
                    return true;
                }
                let (a, b) = Self::hull_system(&others, &self.generators[i]);
                !feasible(&a, &b, others.len())
            })
            .map(|i| self.generators[i].clone())
            .collect()
    }

    fn frame(&self) -> Option<&Frame> {
        self.frame.get_or_init(|| affine_frame(&self.generators)).as_ref()
    }

    /// All integer points, sorted.
    pub fn lattice_points(&self) -> &[Vec<i64>] {
        self.lattice.get_or_init(|| {
            let mut out: Vec<Vec<i64>> = match self.frame() {
                Some(f) => branch_and_prune(&f.reduced)
                    .into_iter()
                    .map(|z| {
                        (0..self.dim)
                            .map(|i| {
                                let mut x = f.origin[i].clone();
                                for (k, zk) in z.iter().enumerate() {
                                    x += &f.back[i][k] * BigInt::from(*zk);
                                }
                                x.to_i64().expect("lattice coordinate fits in i64")
                            })
                            .collect()
                    })
                    .collect(),
                None => branch_and_prune(&self.generators),
            };
            out.sort();
            out
        })
    }

    /// Lattice points of the polytope that are missing from `support`; errors
    /// if some support point lies outside the polytope.
    pub fn missing_lattice_points(&self, support: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        for s in support {
            if !self.contains_integer_point(s)? {
                return Err(Error::Contract(format!("support point {s:?} lies outside the polytope")));
            }
        }
        let set: BTreeSet<&Vec<i64>> = support.iter().collect();
        Ok(self.lattice_points().iter().filter(|p| !set.contains(p)).cloned().collect())
    }

    /// Every lattice point lies in `support`.
    pub fn is_saturated(&self, support: &[Vec<i64>]) -> Result<bool> {
        Ok(self.missing_lattice_points(support)?.is_empty())
    }

    /// Lattice points that are not vertices.
    pub fn non_vertex_lattice_points(&self) -> Vec<Vec<i64>> {
        let verts: BTreeSet<Vec<Q>> = self.vertices().into_iter().collect();
        self.lattice_points().iter().filter(|p| !verts.contains(&to_q(p))).cloned().collect()
    }

    /// Every lattice point is a vertex.
    pub fn is_empty_polytope(&self) -> bool {
        self.non_vertex_lattice_points().is_empty()
    }
}

fn ceil_q(x: &Q) -> BigInt {
    x.ceil().to_integer()
}

fn floor_q(x: &Q) -> BigInt {
    x.floor().to_integer()
}

/// Integer points of the hull of `gens`, fixing coordinates left to right
/// with exact LP bounds.
fn branch_and_prune(gens: &[Vec<Q>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    let n = gens.len();
    let mut out = Vec::new();
    let mut prefix: Vec<i64> = Vec::with_capacity(d);
    fn rec(gens: &[Vec<Q>], d: usize, n: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let k = prefix.len();
        if k == d {
            out.push(prefix.clone());
            return;
        }
        let mut a: Vec<Vec<Q>> = (0..k).map(|j| gens.iter().map(|g| g[j].clone()).collect()).collect();
        a.push(vec![Q::one(); n]);
        let mut b: Vec<Q> = prefix.iter().map(|&x| q(x)).collect();
        b.push(Q::one());
        let c: Vec<Q> = gens.iter().map(|g| g[k].clone()).collect();
        let hi = match maximize(&a, &b, &c) {
            LpOutcome::Optimal(v) => floor_q(&v),
            _ => return,
        };
        let neg: Vec<Q> = c.iter().map(|x| -x.clone()).collect();
        let lo = match maximize(&a, &b, &neg) {
            LpOutcome::Optimal(v) => ceil_q(&-v),
            _ => return,
        };
        let (lo, hi) = (lo.to_i64().expect("bounded"), hi.to_i64().expect("bounded"));
        for x in lo..=hi {
            prefix.push(x);
            rec(gens, d, n, prefix, out);
            prefix.pop();
        }
    }
    rec(gens, d, n, &mut prefix, &mut out);
    out
}

/// Unimodular reduction of integral generators to full-dimensional integer
/// coordinates on their affine hull.
fn affine_frame(gens: &[Vec<Q>]) -> Option<Frame> {
    if !gens.iter().flatten().all(|x| x.is_integer()) {
        return None;
    }
    let d = gens[0].len();
    let ints: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|x| x.to_integer()).collect()).collect();
    let origin = ints[0].clone();
    let cols = ints.len() - 1;
    // h = D with columns v_i - v_0, rows are coordinates
    let mut h: Vec<Vec<BigInt>> = (0..d).map(|i| (1..=cols).map(|c| &ints[c][i] - &origin[i]).collect()).collect();
    let mut inv: Vec<Vec<BigInt>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut row = 0;
    for col in 0..cols {
        if row == d {
            break;
        }
        while let Some(p) = (row..d).filter(|&i| !h[i][col].is_zero()).min_by_key(|&i| h[i][col].abs()) {
            h.swap(p, row);
            for r in inv.iter_mut() {
                r.swap(p, row);
            }
            let mut clean = true;
            for i in row + 1..d {
                if h[i][col].is_zero() {
                    continue;
                }
                let f = h[i][col].div_floor(&h[row][col]);
                let pivot_row = h[row].clone();
                for (x, y) in h[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
                for r in inv.iter_mut() {
                    let add = &f * &r[i];
                    r[row] += add;
                }
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !h[row][col].is_zero() {
            row += 1;
        }
    }
    let r = row;
    let mut reduced = vec![vec![Q::zero(); r]];
    for c in 0..cols {
        reduced.push(h[..r].iter().map(|row| Q::from_integer(row[c].clone())).collect());
    }
    let back = (0..d).map(|i| inv[i][..r].to_vec()).collect();
    Some(Frame { origin, back, reduced })
}

/// Convex hull of the support.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<RationalPolytope> {
    RationalPolytope::new(f.vars().len(), f.support().iter().map(|p| to_q(p)).collect())
}

/// Label-summing projection from the lifted space of `g` to weight vectors.
pub fn project_pi(v: &[Q], g: &SnakeGraph, mode: Mode) -> Result<Vec<Q>> {
    let edges = g.edges().len();
    let expected = if mode == Mode::Pc { edges + g.tile_count() } else { edges };
    if v.len() != expected {
        return Err(Error::Dimension { expected, got: v.len() });
    }
    let slots = cluster_slots(g, mode);
    let width = slots.iter().flatten().count();
    let mut out = vec![Q::zero(); if mode == Mode::Pc { 2 * width } else { width }];
    for (e, edge) in g.edges().iter().enumerate() {
        if let Some(s) = slots[edge.label] {
            out[s] += &v[e];
        }
    }
    if mode == Mode::Pc {
        for (j, tile) in g.tiles().iter().enumerate() {
            if let Some(s) = slots[tile.square] {
                out[width + s] += &v[edges + j];
            }
        }
    }
    Ok(out)
}

/// A relation `x_{square} = x_{edge}` or `x_{square} = 1 - x_{edge}` tying a
/// square coordinate to a boundary edge of that square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareRelation {
    pub square: usize,
    pub edge: usize,
    pub complemented: bool,
}

/// The lifted (principal) matching polytope with its H-description.
#[derive(Clone, Debug)]
pub struct LiftedPolytope {
    pub polytope: RationalPolytope,
    pub matchings: Vec<PerfectMatching>,
    pub pc: bool,
    /// Edge ids at each graph vertex: their coordinates sum to one.
    pub vertex_stars: Vec<Vec<usize>>,
    pub square_relations: Vec<SquareRelation>,
}

impl LiftedPolytope {
    /// Whether `v` satisfies nonnegativity, the vertex equations and the
    /// square relations.
    pub fn satisfies(&self, v: &[Q]) -> bool {
        let edges: usize = self.vertex_stars.iter().flatten().max().map_or(0, |m| m + 1);
        if v.iter().any(|x| x.is_negative()) {
            return false;
        }
        if self.vertex_stars.iter().any(|star| star.iter().map(|&e| &v[e]).sum::<Q>() != Q::one()) {
            return false;
        }
        self.square_relations.iter().all(|r| {
            let x = &v[r.edge];
            let want = if r.complemented { Q::one() - x } else { x.clone() };
            v[edges + r.square] == want
        })
    }
}

pub fn lifted_matching_polytope(g: &SnakeGraph, pc: bool) -> Result<LiftedPolytope> {
    let matchings = enumerate_matchings(g);
    let points: Vec<Vec<i64>> = matchings.iter().map(|m| lifted_vector(g, m, pc).to_vec()).collect();
    let polytope = RationalPolytope::from_integer_points(&points)?;
    let mut vertex_stars = vec![Vec::new(); g.vertices().len()];
    for (i, e) in g.edges().iter().enumerate() {
        for v in e.ends {
            vertex_stars[v].push(i);
        }
    }
    let bottom = crate::matching::bottom_matching(g);
    let square_relations = if pc {
        (0..g.tile_count())
            .map(|j| {
                let edge = TileSide::ALL
                    .iter()
                    .map(|s| g.edge(j, *s))
                    .find(|&e| !g.edges()[e].interior)
                    .ok_or_else(|| Error::Integrity(format!("tile {j} has no boundary edge")))?;
                Ok(SquareRelation { square: j, edge, complemented: bottom.contains(edge) })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(LiftedPolytope { polytope, matchings, pc, vertex_stars, square_relations })
}

/// `P(G)`: hull of the weight vectors of all matchings.
pub fn matching_polytope(g: &SnakeGraph, mode: Mode) -> Result<RationalPolytope> {
    let points: Vec<Vec<i64>> =
        enumerate_matchings(g).iter().map(|m| crate::matching::weight_vector(g, m, mode).coords).collect();
    RationalPolytope::from_integer_points(&points)
}
